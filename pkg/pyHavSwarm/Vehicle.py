from __future__ import print_function

# import
## batteries
import math
import logging
import collections
## 3rd party
import numpy as np
## package
from pyHavSwarm import Utils

logger = logging.getLogger(__name__)


#-- notes on the vehicle model --#
# axle k=0: truck front axle; k=1: truck rear axle (the integrated position);
# axle k=j+1: rear axle of trailer j.  Only (x1, y1) is stored; every other
# axle sits one wheelbase behind its predecessor along the segment heading.
# delta_j = theta_j - theta_(j-1), wrapped to (-pi, pi].

MAX_TRAILERS = 10


class HavConfig(collections.namedtuple('HavConfig',
                                       ['truck_wheelbase', 'trailer_wheelbases',
                                        'max_steer', 'min_speed', 'max_speed'])):
    """Immutable HAV morphology.
    truck_wheelbase : l0 (m)
    trailer_wheelbases : tuple of l1..lN (m)
    max_steer : phi_max (rad)
    min_speed, max_speed : speed limits (m/s)
    """
    __slots__ = ()

    def __new__(cls, truck_wheelbase, trailer_wheelbases, max_steer=math.radians(50),
                min_speed=0.0, max_speed=4.0):
        trailer_wheelbases = tuple(float(x) for x in trailer_wheelbases)
        n = len(trailer_wheelbases)
        if n < 1 or n > MAX_TRAILERS:
            msg = 'Trailer count must be in [1, {}]; got {}'
            raise ValueError(msg.format(MAX_TRAILERS, n))
        if truck_wheelbase <= 0 or min(trailer_wheelbases) <= 0:
            raise ValueError('All wheelbases must be > 0')
        if not 0 < max_steer <= math.pi / 2.0:
            msg = 'max_steer must be in (0, pi/2]; got {}'
            raise ValueError(msg.format(max_steer))
        if not 0 <= min_speed < max_speed:
            msg = 'Speed limits must satisfy 0 <= min_speed < max_speed; got {}, {}'
            raise ValueError(msg.format(min_speed, max_speed))
        return super(HavConfig, cls).__new__(cls, float(truck_wheelbase),
                                             trailer_wheelbases, float(max_steer),
                                             float(min_speed), float(max_speed))

    @property
    def n_trailers(self):
        return len(self.trailer_wheelbases)

    @property
    def wheelbases(self):
        """All wheelbases, truck first (np.array of N+1)
        """
        return np.array((self.truck_wheelbase,) + self.trailer_wheelbases)


class HavState(collections.namedtuple('HavState',
                                      ['x', 'y', 'truck_heading', 'trailer_headings'])):
    """Pose of the truck rear axle plus all segment headings.
    Headings are stored wrapped to (-pi, pi].
    """
    __slots__ = ()

    def __new__(cls, x, y, truck_heading, trailer_headings):
        trailer_headings = tuple(Utils.wrap_angle(float(h)) for h in trailer_headings)
        return super(HavState, cls).__new__(cls, float(x), float(y),
                                            Utils.wrap_angle(float(truck_heading)),
                                            trailer_headings)

    @property
    def headings(self):
        """All segment headings, truck first (np.array of N+1)
        """
        return np.array((self.truck_heading,) + self.trailer_headings)

    @property
    def position(self):
        return np.array([self.x, self.y])


Action = collections.namedtuple('Action', ['speed', 'steer'])
Action.__doc__ = """Velocity-steering pair executed for one time step"""

STAND_STILL = Action(0.0, 0.0)


# functions
def aligned_state(x, y, heading, config):
    """Fully aligned HAV (zero articulation) with its truck rear axle at (x, y)
    """
    return HavState(x, y, heading, [heading] * config.n_trailers)

def check_state(state, config):
    if len(state.trailer_headings) != config.n_trailers:
        msg = 'State has {} trailer headings; config has {} trailers'
        raise ValueError(msg.format(len(state.trailer_headings), config.n_trailers))

def advance(x, y, headings, speeds, steers, wheelbases, dt):
    """One explicit-Euler step of the truck-trailer kinematics for a batch of actions.
    All trailers are updated simultaneously from the pre-step angles.
    x, y : truck rear axle position (floats)
    headings : np.array (N+1,), pre-step headings, truck first
    speeds, steers : np.array (A,), candidate actions
    wheelbases : np.array (N+1,)
    dt : time step (s)
    Returns: (x_new (A,), y_new (A,), headings_new (A, N+1))
    """
    speeds = np.asarray(speeds, dtype=float)
    steers = np.asarray(steers, dtype=float)
    theta0 = headings[0]
    deltas = headings[1:] - headings[:-1]
    cos_d = np.cos(deltas)
    sin_d = np.sin(deltas)
    # speed of the segment pulling trailer j: v^(j-1) = v0 * prod_{k<j} cos(delta_k)
    pull = np.concatenate([[1.0], np.cumprod(cos_d)[:-1]])
    v_prev = speeds[:, None] * pull[None, :]
    if np.any(v_prev < -1e-12):
        msg = 'Negative propagated trailer speed (articulation angles: {})'
        raise Utils.KinematicsError(msg.format(Utils.wrap_angle(deltas)))
    new = np.empty((speeds.shape[0], headings.shape[0]))
    new[:, 0] = theta0 + speeds / wheelbases[0] * np.tan(steers) * dt
    new[:, 1:] = headings[None, 1:] - v_prev / wheelbases[None, 1:] * sin_d[None, :] * dt
    x_new = x + speeds * math.cos(theta0) * dt
    y_new = y + speeds * math.sin(theta0) * dt
    return x_new, y_new, Utils.wrap_angle(new)

def step_batch(state, config, speeds, steers, dt):
    """Advancing one state under many actions (same scheme as `step`).
    Returns: (x (A,), y (A,), headings (A, N+1))
    """
    check_state(state, config)
    return advance(state.x, state.y, state.headings, speeds, steers,
                   config.wheelbases, dt)

def step(state, config, action, dt):
    """Advance a HAV by one time step.
    state : HavState
    config : HavConfig
    action : Action
    dt : time step (s)
    Returns: HavState
    """
    if action.speed < 0:
        msg = 'Reverse driving is not supported (speed = {})'
        raise ValueError(msg.format(action.speed))
    if abs(action.steer) > config.max_steer + 1e-12:
        msg = 'Steering angle {} exceeds max_steer {}'
        raise ValueError(msg.format(action.steer, config.max_steer))
    if dt <= 0:
        raise ValueError('dt must be > 0')
    x, y, h = step_batch(state, config, [action.speed], [action.steer], dt)
    return HavState(x[0], y[0], h[0, 0], h[0, 1:])

def articulation_angles(state):
    """Wrapped articulation angles delta_1..delta_N (np.array)
    """
    h = state.headings
    return Utils.wrap_angle(h[1:] - h[:-1])

def jackknifed_headings(headings):
    """Jackknife test on an array of headings (..., N+1); True where any cos(delta) < 0
    """
    deltas = Utils.wrap_angle(headings[..., 1:] - headings[..., :-1])
    return np.any(np.cos(deltas) < 0, axis=-1)

def is_jackknifed(state):
    """Does any articulation angle violate |delta| <= pi/2 ?
    The boundary |delta| == pi/2 is allowed.
    """
    return bool(jackknifed_headings(state.headings))

def footprint_radius(config):
    """Collision radius d = max(l0, sum of trailer wheelbases)
    """
    return max(config.truck_wheelbase, sum(config.trailer_wheelbases))

def min_turning_radius(config):
    """Minimum stable turning radius: sqrt(sum of squared wheelbases)
    """
    return math.sqrt(float(np.sum(config.wheelbases ** 2)))

def polyline(state, config):
    """Axle chain: front axle, truck rear axle, trailer axles.
    Returns: np.array (N+2, 2)
    """
    check_state(state, config)
    pts = np.empty((config.n_trailers + 2, 2))
    th0 = state.truck_heading
    pts[0] = [state.x + config.truck_wheelbase * math.cos(th0),
              state.y + config.truck_wheelbase * math.sin(th0)]
    pts[1] = [state.x, state.y]
    for j, (l, th) in enumerate(zip(config.trailer_wheelbases, state.trailer_headings)):
        pts[j + 2] = pts[j + 1] - l * np.array([math.cos(th), math.sin(th)])
    return pts

# alias kept for callers that want every derived axle
axle_positions = polyline

def _orient(a, b, c):
    return np.sign((b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) -
                   (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0]))

def _on_segment(a, b, c):
    # c collinear with a-b: inside the bounding box?
    return ((np.minimum(a[..., 0], b[..., 0]) <= c[..., 0]) &
            (c[..., 0] <= np.maximum(a[..., 0], b[..., 0])) &
            (np.minimum(a[..., 1], b[..., 1]) <= c[..., 1]) &
            (c[..., 1] <= np.maximum(a[..., 1], b[..., 1])))

def polylines_intersect(p, q):
    """Actual collision test: do two axle chains intersect (touching included)?
    p, q : np.array (n, 2) and (m, 2), in a common (unwrapped) frame
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    # all segment pairs
    a = p[:-1][:, None, :]
    b = p[1:][:, None, :]
    c = q[:-1][None, :, :]
    d = q[1:][None, :, :]
    a, b = np.broadcast_arrays(a, b)
    a, c = np.broadcast_arrays(a, c)
    b, d = np.broadcast_arrays(b, d)
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    proper = (o1 != o2) & (o3 != o4) & (o1 != 0) & (o2 != 0) & (o3 != 0) & (o4 != 0)
    touching = (((o1 == 0) & _on_segment(a, b, c)) |
                ((o2 == 0) & _on_segment(a, b, d)) |
                ((o3 == 0) & _on_segment(c, d, a)) |
                ((o4 == 0) & _on_segment(c, d, b)))
    return bool(np.any(proper | touching))


# main
if __name__ == '__main__':
    pass
