from __future__ import print_function

# import
## batteries
import math
import collections
## 3rd party
import numpy as np
## package
from pyHavSwarm import Utils
from pyHavSwarm import Torus
from pyHavSwarm import Dubins


class ControllerParams(collections.namedtuple('ControllerParams',
                                              ['lookahead_factor', 'cross_track_gain',
                                               'replan_threshold'])):
    """Path-following gains.
    lookahead_factor : f_C (l_C = f_C * l0)
    cross_track_gain : k_e
    replan_threshold : e_P_max (m)
    """
    __slots__ = ()

    def __new__(cls, lookahead_factor=0.2, cross_track_gain=2.0, replan_threshold=0.8):
        for k, v in zip(cls._fields, (lookahead_factor, cross_track_gain, replan_threshold)):
            if not v > 0:
                msg = 'Controller parameter "{}" must be > 0; got {}'
                raise ValueError(msg.format(k, v))
        return super(ControllerParams, cls).__new__(cls, float(lookahead_factor),
                                                    float(cross_track_gain),
                                                    float(replan_threshold))


TrackingErrors = collections.namedtuple('TrackingErrors',
                                        ['heading_error', 'cross_track_error',
                                         'cross_track_signed', 'i_near', 'i_look'])
TrackingErrors.__doc__ = """Heading error e_H (rad), cross-track error e_P >= 0 (m),
signed cross-track error (> 0 if the path lies to the left of the truck),
plus the nearest and look-ahead sample indices"""


# functions
def lookahead_distance(config, params):
    return params.lookahead_factor * config.truck_wheelbase

def tracking_errors(state, samples, params, config, world=None):
    """Errors of the truck rear axle relative to a sampled path.
    state : Vehicle.HavState
    samples : Dubins.SampledPath (unwrapped frame)
    world : Torus.TorusWorld; if given, offsets use the minimal image
    Returns: TrackingErrors
    """
    l_C = lookahead_distance(config, params)
    pos = state.position
    i_near, i_look = Dubins.nearest_and_lookahead_index(samples, pos, l_C, world)
    e_H = Utils.wrap_angle(float(samples.headings[i_look]) - state.truck_heading)
    near = samples.points[i_near]
    if world is None:
        offset = near - pos
    else:
        offset = Torus.rel_vector(pos, near, world)
    e_P = float(math.hypot(offset[0], offset[1]))
    th = float(samples.headings[i_near])
    cross = math.cos(th) * offset[1] - math.sin(th) * offset[0]
    signed = math.copysign(e_P, cross) if cross != 0 else 0.0
    return TrackingErrors(e_H, e_P, signed, i_near, i_look)

def steering_command(errors, config, params):
    """Pure-pursuit feedforward plus Stanley correction, clamped to +/- max_steer
    Returns: phi_C (rad)
    """
    if not config.max_speed > 0:
        raise ValueError('max_speed must be > 0')
    l_C = lookahead_distance(config, params)
    phi_P = math.atan(2.0 * config.truck_wheelbase * errors.heading_error / l_C)
    phi_S = math.atan(params.cross_track_gain * errors.cross_track_signed / config.max_speed)
    return float(np.clip(phi_P + phi_S, -config.max_steer, config.max_steer))

def needs_replan(errors, params):
    """Has the truck left the path by more than e_P_max?
    """
    return errors.cross_track_error > params.replan_threshold


# main
if __name__ == '__main__':
    pass
