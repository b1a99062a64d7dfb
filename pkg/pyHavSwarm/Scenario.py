from __future__ import print_function

# import
## batteries
import math
import json
import hashlib
import logging
import collections
## 3rd party
import numpy as np
## package
from pyHavSwarm import Utils
from pyHavSwarm import Vehicle
from pyHavSwarm import Torus

logger = logging.getLogger(__name__)

#-- notes on seeding --#
# Scenario seed -> SeedSequence -> spawn(N_H + 3) children:
#   children[0 .. N_H-1] : one HAV morphology stream per HAV
#   children[N_H + 0]    : start poses
#   children[N_H + 1]    : first goal poses
#   children[N_H + 2]    : second goal poses
# Each child drives a numpy Generator backed by the counter-based Philox
# bit generator, so a HAV's morphology does not depend on N_H.

POSE_SETS = ('starts', 'goals1', 'goals2')


class ScenarioParams(collections.namedtuple('ScenarioParams',
                                            ['trailer_sigma', 'min_trailers', 'max_trailers',
                                             'truck_means', 'truck_sigmas',
                                             'min_length', 'max_length',
                                             'max_steer', 'min_speed', 'max_speed',
                                             'max_attempts'])):
    """Distributions used to draw random HAVs and pose sets
    """
    __slots__ = ()

    def __new__(cls, trailer_sigma=3.0, min_trailers=1, max_trailers=10,
                truck_means=(4.0, 10.7), truck_sigmas=(0.6, 1.2),
                min_length=2.0, max_length=12.0,
                max_steer=math.radians(50), min_speed=0.0, max_speed=4.0,
                max_attempts=10000):
        if not 1 <= min_trailers <= max_trailers <= Vehicle.MAX_TRAILERS:
            msg = 'Trailer count bounds must satisfy 1 <= min <= max <= {}'
            raise ValueError(msg.format(Vehicle.MAX_TRAILERS))
        if not 0 < min_length < max_length:
            raise ValueError('Length bounds must satisfy 0 < min_length < max_length')
        if len(truck_means) != len(truck_sigmas) or len(truck_means) == 0:
            raise ValueError('truck_means and truck_sigmas must have the same (nonzero) length')
        if max_attempts < 1:
            raise ValueError('max_attempts must be >= 1')
        return super(ScenarioParams, cls).__new__(
            cls, float(trailer_sigma), int(min_trailers), int(max_trailers),
            tuple(float(x) for x in truck_means), tuple(float(x) for x in truck_sigmas),
            float(min_length), float(max_length), float(max_steer),
            float(min_speed), float(max_speed), int(max_attempts))


Scenario = collections.namedtuple('Scenario', ['world', 'havs', 'starts',
                                               'goal_sequences', 'seed', 'density'])
Scenario.__doc__ = """One randomized task: torus, HAV configs, start poses,
per-HAV ordered goal poses (2 each), scenario seed and collision density"""


# seeding
def make_rng(seed_seq):
    return np.random.Generator(np.random.Philox(seed_seq))

def scenario_seed(base_seed, n_hav, density, run):
    """Deterministic 64-bit scenario seed for one (cell, run).
    Identical (base_seed, n_hav, density, run) always gives the same seed, so
    parameter variants share their scenarios.
    """
    key = [int(base_seed), int(n_hav), int(round(float(density) * 1e6)), int(run)]
    state = np.random.SeedSequence(key).generate_state(2, dtype=np.uint32)
    return int(state[0]) << 32 | int(state[1])

def scenario_streams(seed, n_hav):
    """Independent Generators: (per-HAV list, {pose set name : Generator})
    """
    children = np.random.SeedSequence(int(seed)).spawn(n_hav + len(POSE_SETS))
    havs = [make_rng(c) for c in children[:n_hav]]
    poses = {k : make_rng(c) for k, c in zip(POSE_SETS, children[n_hav:])}
    return havs, poses


# sampling
def _draw_until(draw, accept, max_attempts, what):
    for _ in range(max_attempts):
        x = draw()
        if accept(x):
            return x
    msg = 'Could not draw a valid {} in {} attempts'
    raise Utils.ScenarioError(msg.format(what, max_attempts))

def sample_trailer_count(rng, params):
    """Rounded Rayleigh(sigma) draw, resampled until within the trailer count bounds
    """
    return _draw_until(lambda: int(math.floor(rng.rayleigh(params.trailer_sigma) + 0.5)),
                       lambda n: params.min_trailers <= n <= params.max_trailers,
                       params.max_attempts, 'trailer count')

def sample_truck_length(rng, params):
    """Equal-weight Gaussian mixture draw, resampled until within [min_length, max_length)
    """
    def draw():
        k = int(rng.integers(len(params.truck_means)))
        return float(rng.normal(params.truck_means[k], params.truck_sigmas[k]))
    return _draw_until(draw, lambda x: params.min_length <= x < params.max_length,
                       params.max_attempts, 'truck length')

def sample_hav(rng, params=None):
    """Random HAV morphology.
    rng : numpy Generator
    Returns: Vehicle.HavConfig
    """
    if params is None:
        params = ScenarioParams()
    n = sample_trailer_count(rng, params)
    l0 = sample_truck_length(rng, params)
    trailers = rng.uniform(params.min_length, params.max_length, size=n)
    return Vehicle.HavConfig(l0, trailers.tolist(), params.max_steer,
                             params.min_speed, params.max_speed)

def torus_edge(havs, density):
    """Edge length so that the footprints cover a fraction `density` of the torus
    """
    if not density > 0:
        msg = 'Collision density must be > 0; got {}'
        raise ValueError(msg.format(density))
    if density > 1:
        msg = 'Collision density must be <= 1; got {}'
        raise ValueError(msg.format(density))
    area = sum(math.pi * Vehicle.footprint_radius(h) ** 2 for h in havs)
    return math.sqrt(area / density)

def sample_poses(rng, radii, world, max_attempts=10000, what='pose set'):
    """Sequential rejection sampling of non-overlapping poses.
    Each pose is drawn uniformly on the torus (heading uniform on (-pi, pi]) and
    kept only if its footprint does not overlap any previously kept one.
    max_attempts : cap on the total number of draws for the whole set
    Returns: list of Torus.Pose
    """
    L = world.edge_length
    centers = np.empty((0, 2))
    poses = []
    attempts = 0
    for i, r in enumerate(radii):
        while True:
            if attempts >= max_attempts:
                msg = 'Could not place {} non-overlapping HAVs ({}) in {} attempts'
                raise Utils.ScenarioError(msg.format(len(radii), what, max_attempts))
            attempts += 1
            x, y = rng.uniform(0.0, L, size=2)
            h = rng.uniform(-math.pi, math.pi)
            p = np.array([x, y])
            if i > 0:
                dist = Torus.torus_distance(p[None, :], centers, world)
                if np.any(dist <= np.asarray(radii[:i]) + r):
                    continue
            break
        centers = np.vstack([centers, p])
        poses.append(Torus.wrap_pose(Torus.Pose(x, y, h), world))
    return poses

def sample_scenario(seed, n_hav, density, params=None):
    """Random scenario as a pure function of (seed, n_hav, density).
    Returns: Scenario
    """
    if params is None:
        params = ScenarioParams()
    if n_hav < 1:
        msg = 'Swarm size must be >= 1; got {}'
        raise ValueError(msg.format(n_hav))
    if not 0 < density <= 0.5:
        msg = 'Collision density must be in (0, 0.5]; got {}'
        raise ValueError(msg.format(density))
    hav_rngs, pose_rngs = scenario_streams(seed, n_hav)
    havs = [sample_hav(r, params) for r in hav_rngs]
    world = Torus.TorusWorld(torus_edge(havs, density))
    radii = [Vehicle.footprint_radius(h) for h in havs]
    sets = {}
    for k in POSE_SETS:
        sets[k] = sample_poses(pose_rngs[k], radii, world, params.max_attempts, k)
    goals = [[g1, g2] for g1, g2 in zip(sets['goals1'], sets['goals2'])]
    logger.debug('Scenario {}: N_H={} rho={} d_torus={:.3f}'.format(
        seed, n_hav, density, world.edge_length))
    return Scenario(world, havs, sets['starts'], goals, int(seed), float(density))

def initial_states(scenario):
    """Fully aligned start states
    """
    return [Vehicle.aligned_state(p.x, p.y, p.heading, c)
            for p, c in zip(scenario.starts, scenario.havs)]

def check_scenario(scenario):
    """Raise ValueError if any pose set has overlapping footprints
    """
    radii = np.array([Vehicle.footprint_radius(h) for h in scenario.havs])
    sets = [('starts', scenario.starts)]
    for k in range(2):
        sets.append(('goals{}'.format(k + 1), [g[k] for g in scenario.goal_sequences]))
    for name, poses in sets:
        centers = np.array([[p.x, p.y] for p in poses])
        pairs = Torus.overlapping_pairs(centers, radii, scenario.world)
        if len(pairs) > 0:
            msg = 'Overlapping footprints in {}: {}'
            raise ValueError(msg.format(name, pairs))


# I/O
def scenario_to_dict(scenario):
    havs = []
    for cfg, start, goals in zip(scenario.havs, scenario.starts, scenario.goal_sequences):
        havs.append({'truck_wheelbase' : cfg.truck_wheelbase,
                     'trailer_wheelbases' : list(cfg.trailer_wheelbases),
                     'max_steer' : cfg.max_steer,
                     'min_speed' : cfg.min_speed,
                     'max_speed' : cfg.max_speed,
                     'start' : list(start),
                     'goals' : [list(g) for g in goals]})
    return {'seed' : scenario.seed,
            'density' : scenario.density,
            'edge_length' : scenario.world.edge_length,
            'havs' : havs}

def scenario_from_dict(d):
    try:
        havs = [Vehicle.HavConfig(h['truck_wheelbase'], h['trailer_wheelbases'],
                                  h['max_steer'], h['min_speed'], h['max_speed'])
                for h in d['havs']]
        starts = [Torus.Pose(*h['start']) for h in d['havs']]
        goals = [[Torus.Pose(*g) for g in h['goals']] for h in d['havs']]
        world = Torus.TorusWorld(d['edge_length'])
        return Scenario(world, havs, starts, goals, int(d['seed']), float(d['density']))
    except KeyError as e:
        msg = 'Scenario file is missing the key: {}'
        raise KeyError(msg.format(e))

def scenario_json(scenario):
    return json.dumps(scenario_to_dict(scenario), indent=2, sort_keys=True)

def scenario_hash(scenario):
    """sha1 of the serialized scenario
    """
    return hashlib.sha1(scenario_json(scenario).encode('utf-8')).hexdigest()

def write_scenario(scenario, file_name):
    with open(file_name, 'w') as outF:
        outF.write(scenario_json(scenario) + '\n')
    return file_name

def read_scenario(file_name):
    with open(file_name) as inF:
        return scenario_from_dict(json.load(inF))


# main
if __name__ == '__main__':
    pass
