from __future__ import print_function

# import
## batteries
import collections
## 3rd party
import numpy as np
## package
from pyHavSwarm import Vehicle
from pyHavSwarm import Torus
from pyHavSwarm import Context

#-- notes on behaviors --#
# Each behavior returns one ContextMap over the ActionGrid.
# Danger:   jackknife_prevention, collision_prevention
# Interest: goal_attraction, straightening_attraction, evade_attraction,
#           progress_attraction
# Rollouts only move the truck rear axle (the footprint center) under a
# constant action; neighbors are held static.
# Straightening is nonzero even for an aligned HAV (~0.095 per hitch), while
# the goal Gaussian varies by ~0.3 across the steering range; with a weight
# near 1 the zero-steer column wins on curved paths. Default weight: 0.1.


NeighborObservation = collections.namedtuple('NeighborObservation',
                                             ['relative_position', 'footprint_radius'])
NeighborObservation.__doc__ = """Minimal-image vector from the ego rear axle to a
neighbor's rear axle (m) and the neighbor's footprint radius d_h (m)"""


class BehaviorParams(collections.namedtuple('BehaviorParams',
                                            ['goal_sigma_steer', 'goal_sigma_speed',
                                             'collision_lookahead', 'evade_lookahead',
                                             'evade_bound', 'evade_exponent',
                                             'progress_period', 'progress_increment',
                                             'goal_weight', 'straighten_weight',
                                             'evade_weight', 'progress_weight'])):
    """Behavior tuning and interest-map weights
    """
    __slots__ = ()

    def __new__(cls, goal_sigma_steer=1.0, goal_sigma_speed=2.0,
                collision_lookahead=2.0, evade_lookahead=8.0,
                evade_bound=10.0, evade_exponent=4.0,
                progress_period=15, progress_increment=0.15,
                goal_weight=1.0, straighten_weight=0.1,
                evade_weight=2.0, progress_weight=1.0):
        positive = {'goal_sigma_steer': goal_sigma_steer,
                    'goal_sigma_speed': goal_sigma_speed,
                    'collision_lookahead': collision_lookahead,
                    'evade_lookahead': evade_lookahead,
                    'evade_bound': evade_bound,
                    'progress_period': progress_period,
                    'progress_increment': progress_increment}
        for k, v in sorted(positive.items()):
            if not v > 0:
                msg = 'Behavior parameter "{}" must be > 0; got {}'
                raise ValueError(msg.format(k, v))
        if evade_exponent < 1:
            msg = 'evade_exponent must be >= 1; got {}'
            raise ValueError(msg.format(evade_exponent))
        weights = (goal_weight, straighten_weight, evade_weight, progress_weight)
        if min(weights) < 0:
            raise ValueError('Interest weights must be >= 0')
        return super(BehaviorParams, cls).__new__(
            cls, float(goal_sigma_steer), float(goal_sigma_speed),
            float(collision_lookahead), float(evade_lookahead),
            float(evade_bound), float(evade_exponent),
            int(progress_period), float(progress_increment),
            *[float(w) for w in weights])


# rollout
def rollout_steps(speeds, distance, dt):
    """Number of dt steps needed to travel `distance` at each speed (0 for v = 0)
    """
    speeds = np.asarray(speeds, dtype=float)
    k = np.zeros(speeds.shape, dtype=int)
    moving = speeds > 0
    k[moving] = np.ceil(distance / (speeds[moving] * dt) - 1e-9).astype(int)
    return np.maximum(k, np.where(moving, 1, 0))

def rollout(heading, speeds, steers, truck_wheelbase, dt, distance):
    """Euler rollout of the truck rear axle relative to its start position.
    Every action runs until it has covered `distance`; shorter rollouts are
    padded with their final position.
    Returns: (positions (A, K, 2) for samples 1..K, steps (A,))
    """
    speeds = np.asarray(speeds, dtype=float)
    steers = np.asarray(steers, dtype=float)
    k = rollout_steps(speeds, distance, dt)
    K = max(int(np.max(k)), 1)
    rate = speeds / truck_wheelbase * np.tan(steers) * dt
    m = np.arange(K)
    active = m[None, :] < k[:, None]
    # heading before step m is heading + m * rate
    th = float(heading) + rate[:, None] * m[None, :]
    ds = np.where(active, speeds[:, None] * dt, 0.0)
    pos = np.stack([np.cumsum(ds * np.cos(th), axis=1),
                    np.cumsum(ds * np.sin(th), axis=1)], axis=-1)
    return pos, k

def _gaps(points, neighbors, ego_radius, world=None):
    """Circle gaps between ego footprints centered at `points` (..., 2) and each neighbor.
    Returns: np.array (..., H)
    """
    rel = np.array([n.relative_position for n in neighbors], dtype=float)
    rad = np.array([n.footprint_radius for n in neighbors], dtype=float)
    d = rel - points[..., None, :]
    if world is not None:
        d = Torus.min_image(d, world)
    return np.linalg.norm(d, axis=-1) - (ego_radius + rad)

def collision_danger(state, config, neighbors, speeds, steers, dt, lookahead,
                     margin=0.0, world=None):
    """Number of neighbors whose gap drops below 0 along each action's rollout.
    margin : extra clearance required at the first sample of moving actions
    Returns: np.array (A,) of counts
    """
    speeds = np.asarray(speeds, dtype=float)
    if len(neighbors) == 0:
        return np.zeros(speeds.shape[0])
    d_i = Vehicle.footprint_radius(config)
    pos, _ = rollout(state.truck_heading, speeds, steers, config.truck_wheelbase,
                     dt, lookahead)
    g = _gaps(pos, neighbors, d_i, world)               # (A, K, H)
    g[:, 0, :] -= np.where(speeds > 0, margin, 0.0)[:, None]
    # standing still: the only sample is the current position
    g0 = _gaps(np.zeros((1, 2)), neighbors, d_i, world)[0]
    hit = np.any(g < 0, axis=1)
    hit = np.where((speeds > 0)[:, None], hit, (g0 < 0)[None, :])
    return hit.sum(axis=1).astype(float)

def evade_interest(state, config, neighbors, speeds, steers, dt, params, world=None):
    """Evade interest for a flat list of actions
    Returns: np.array (A,)
    """
    speeds = np.asarray(speeds, dtype=float)
    if len(neighbors) == 0:
        return np.ones(speeds.shape[0])
    d_i = Vehicle.footprint_radius(config)
    pos, _ = rollout(state.truck_heading, speeds, steers, config.truck_wheelbase,
                     dt, params.evade_lookahead)
    # v = 0 rollouts stay at the origin
    end = pos[:, -1, :]
    g = _gaps(end, neighbors, d_i, world)               # (A, H)
    return np.maximum(0.0, 1.0 - evade_penalty(g, params).sum(axis=1))

def evade_penalty(gap, params):
    """Distance-dependent penalty p(g)
    """
    gap = np.asarray(gap, dtype=float)
    near = np.clip(1.0 - gap / params.evade_bound, 0.0, None) ** params.evade_exponent
    return np.where(gap < 0, 1.0, np.where(gap < params.evade_bound, near, 0.0))


# behaviors
def goal_attraction(phi_C, grid, params):
    """Gaussian interest centered at (phi_C, vmax) with unit peak
    """
    v, phi = np.meshgrid(grid.speeds, grid.steers, indexing='ij')
    z = (-0.5 * ((phi - phi_C) / params.goal_sigma_steer) ** 2
         - 0.5 * ((v - grid.max_speed) / params.goal_sigma_speed) ** 2)
    return Context.ContextMap.interest(np.exp(z))

def jackknife_prevention(state, config, grid, dt):
    """Danger 1 for every action whose one-step successor is jackknifed
    """
    speeds, steers = grid.actions()
    _, _, headings = Vehicle.step_batch(state, config, speeds, steers, dt)
    danger = Vehicle.jackknifed_headings(headings).astype(float)
    return Context.ContextMap.danger(danger.reshape(grid.shape))

def straightening_value(state):
    """Raw (unclamped) straightening interest for the articulation state
    """
    delta = Vehicle.articulation_angles(state)
    j = np.arange(1, delta.shape[0] + 1, dtype=float)
    return float(np.sum(j ** -0.2 * (1.0 + np.tanh(0.5 - 2.0 * np.cos(delta)))))

def straightening_attraction(state, grid):
    """Interest on the zero-steer column only, clamped to [0, 1]
    """
    values = np.zeros(grid.shape)
    values[:, grid.zero_steer_index] = min(max(straightening_value(state), 0.0), 1.0)
    return Context.ContextMap.interest(values)

def collision_prevention(state, config, neighbors, grid, dt, params=None,
                         margin=0.0, world=None):
    """Danger = number of neighbors intersected along each action's rollout
    """
    if params is None:
        params = BehaviorParams()
    speeds, steers = grid.actions()
    danger = collision_danger(state, config, neighbors, speeds, steers, dt,
                              params.collision_lookahead, margin, world)
    return Context.ContextMap.danger(danger.reshape(grid.shape))

def evade_attraction(state, config, neighbors, grid, dt, params, world=None):
    """Interest max(0, 1 - sum of neighbor penalties) at each rollout endpoint
    """
    speeds, steers = grid.actions()
    interest = evade_interest(state, config, neighbors, speeds, steers, dt, params, world)
    return Context.ContextMap.interest(interest.reshape(grid.shape))

def progress_value(n_standstill, params):
    if n_standstill < 0:
        msg = 'Standstill counter must be >= 0; got {}'
        raise ValueError(msg.format(n_standstill))
    return min((n_standstill // params.progress_period) * params.progress_increment, 1.0)

def progress_attraction(n_standstill, grid, params):
    """Interest on every moving action, growing with the standstill counter
    """
    values = np.zeros(grid.shape)
    values[grid.speeds > 0, :] = progress_value(n_standstill, params)
    return Context.ContextMap.interest(values)


# main
if __name__ == '__main__':
    pass
