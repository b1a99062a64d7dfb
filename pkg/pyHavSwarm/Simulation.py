from __future__ import print_function

# import
## batteries
import logging
import collections
## 3rd party
import numpy as np
import pandas as pd
## package
from pyHavSwarm import Utils
from pyHavSwarm import Vehicle
from pyHavSwarm import Torus
from pyHavSwarm import Dubins
from pyHavSwarm import Controller
from pyHavSwarm import Context
from pyHavSwarm import Behaviors
from pyHavSwarm import Scenario
from pyHavSwarm import Metrics

logger = logging.getLogger(__name__)

#-- notes on a simulation step --#
# 1. every HAV decides against the same start-of-step snapshot
# 2. all HAVs advance simultaneously (explicit Euler, dt)
# 3. safety check (jackknife, footprint overlap) on the committed states
# 4. goal arrival; goal 2 is assigned to all once every HAV reached goal 1
# Waiting HAVs (at a reached goal) stand still and remain obstacles.

N_GOALS = 2


class SimParams(collections.namedtuple('SimParams',
                                       ['dt', 'max_steps', 'goal_position_tolerance',
                                        'goal_heading_tolerance', 'path_step',
                                        'safety_slack', 'check_polylines'])):
    """Engine settings
    """
    __slots__ = ()

    def __new__(cls, dt=0.05, max_steps=10000, goal_position_tolerance=0.8,
                goal_heading_tolerance=0.2, path_step=0.1, safety_slack=1e-6,
                check_polylines=False):
        if not dt > 0:
            raise ValueError('dt must be > 0')
        if max_steps < 1:
            raise ValueError('max_steps must be >= 1')
        if not (goal_position_tolerance > 0 and goal_heading_tolerance > 0):
            raise ValueError('Goal tolerances must be > 0')
        if not path_step > 0:
            raise ValueError('path_step must be > 0')
        return super(SimParams, cls).__new__(cls, float(dt), int(max_steps),
                                             float(goal_position_tolerance),
                                             float(goal_heading_tolerance),
                                             float(path_step), float(safety_slack),
                                             bool(check_polylines))


EngineParams = collections.namedtuple('EngineParams',
                                      ['sim', 'controller', 'behavior', 'merge',
                                       'n_speeds', 'n_steers'])
EngineParams.__doc__ = """Everything the engine needs besides the scenario"""

def default_engine_params():
    return EngineParams(SimParams(), Controller.ControllerParams(),
                        Behaviors.BehaviorParams(), Context.MergeParams(), 5, 5)


class Outcome(collections.namedtuple('Outcome', ['classification', 'step'])):
    """Run classification (Success | Deadlock | Livelock) and the step it was detected
    """
    __slots__ = ()

    def __new__(cls, classification, step):
        if classification not in Metrics.OUTCOMES:
            msg = 'Unknown outcome: "{}"'
            raise ValueError(msg.format(classification))
        return super(Outcome, cls).__new__(cls, classification, int(step))


Decision = collections.namedtuple('Decision', ['action', 'obstructed', 'blocked_fraction',
                                               'waiting', 'fallback'])
Decision.__doc__ = """Per-HAV result of one decision.
obstructed : every moving action is blocked
fallback : '' (interpolated action), 'grid' (best discrete action) or 'still'"""


class HavAgent(object):
    """Mutable per-HAV simulation state
    """
    def __init__(self, index, config, state, goals, grid):
        self.index = index
        self.config = config
        self.state = state
        self.goals = list(goals)
        self.grid = grid
        self.radius = Vehicle.footprint_radius(config)
        self.turn_radius = Vehicle.min_turning_radius(config)
        self.goal_index = 0
        self.arrived = False
        self.reached = [False] * N_GOALS
        self.path = None
        self.samples = None
        self.n_standstill = 0
        self.distance = 0.0
        self.waiting_steps = 0
        self.planned_legs = []
        self.n_replans = 0
        self.max_articulation = 0.0

    @property
    def done(self):
        return all(self.reached)

    @property
    def goal(self):
        return self.goals[self.goal_index]

    @property
    def pose(self):
        return Torus.Pose(self.state.x, self.state.y, self.state.truck_heading)


class WorldState(object):
    """Torus, agents and step counter of one run
    """
    def __init__(self, scenario, params=None):
        if params is None:
            params = default_engine_params()
        self.params = params
        self.scenario = scenario
        self.torus = scenario.world
        self.t = 0
        self.agents = []
        states = Scenario.initial_states(scenario)
        for i, (cfg, st, goals) in enumerate(zip(scenario.havs, states,
                                                 scenario.goal_sequences)):
            grid = Context.ActionGrid.for_hav(cfg, params.n_speeds, params.n_steers)
            self.agents.append(HavAgent(i, cfg, st, goals, grid))
        radii = [a.radius for a in self.agents]
        self.r_comm = 2.0 * max(radii) + params.behavior.evade_bound
        # largest distance any HAV can cover in one step
        self.margin = (max(c.max_speed for c in scenario.havs) * params.sim.dt
                       + params.sim.safety_slack)
        for a in self.agents:
            plan_path(self, a)
            a.planned_legs.append(a.path.length)

    def centers(self):
        return np.array([[a.state.x, a.state.y] for a in self.agents])

    def radii(self):
        return np.array([a.radius for a in self.agents])


# planning
def plan_path(world, agent):
    """Dubins path from the current pose to the minimal-image copy of the goal
    """
    start = agent.pose
    goal = agent.goal
    d = Torus.rel_vector([start.x, start.y], [goal.x, goal.y], world.torus)
    goal_copy = Torus.Pose(start.x + d[0], start.y + d[1], goal.heading)
    agent.path = Dubins.plan(start, goal_copy, agent.turn_radius)
    agent.samples = Dubins.sample(agent.path, world.params.sim.path_step)
    return agent.path


# sensing
def sense_neighbors(world, ego_index, centers=None):
    """Minimal-image relative positions and radii of HAVs within r_comm
    Returns: list of Behaviors.NeighborObservation
    """
    if centers is None:
        centers = world.centers()
    n = centers.shape[0]
    if n < 2:
        return []
    rel = Torus.rel_vector(centers[ego_index][None, :], centers, world.torus)
    dist = np.linalg.norm(rel, axis=1)
    obs = []
    for h in range(n):
        if h == ego_index or dist[h] > world.r_comm:
            continue
        obs.append(Behaviors.NeighborObservation(rel[h], world.agents[h].radius))
    return obs


# decision
def _action_is_safe(agent, action, neighbors, world):
    p = world.params
    _, _, h = Vehicle.step_batch(agent.state, agent.config, [action.speed],
                                 [action.steer], p.sim.dt)
    if Vehicle.jackknifed_headings(h)[0]:
        return False
    danger = Behaviors.collision_danger(agent.state, agent.config, neighbors,
                                        [action.speed], [action.steer], p.sim.dt,
                                        p.behavior.collision_lookahead,
                                        world.margin, world.torus)
    return not danger[0] > p.merge.danger_threshold

def behavior_maps(world, agent, neighbors, phi_C):
    """Weighted interest maps and danger maps for one HAV
    Returns: (list of (ContextMap, weight), list of ContextMap)
    """
    p = world.params
    bp = p.behavior
    dt = p.sim.dt
    grid = agent.grid
    interest = [(Behaviors.goal_attraction(phi_C, grid, bp), bp.goal_weight),
                (Behaviors.straightening_attraction(agent.state, grid), bp.straighten_weight),
                (Behaviors.evade_attraction(agent.state, agent.config, neighbors, grid,
                                            dt, bp, world.torus), bp.evade_weight),
                (Behaviors.progress_attraction(agent.n_standstill, grid, bp), bp.progress_weight)]
    danger = [Behaviors.jackknife_prevention(agent.state, agent.config, grid, dt),
              Behaviors.collision_prevention(agent.state, agent.config, neighbors, grid,
                                             dt, bp, world.margin, world.torus)]
    return interest, danger

def decide(world, ego_index, centers=None):
    """Action of one HAV for the current step.
    Returns: Decision
    """
    agent = world.agents[ego_index]
    p = world.params
    if agent.done or agent.arrived:
        return Decision(Vehicle.STAND_STILL, False, 0.0, True, '')
    # path following
    errors = None
    if agent.samples is not None:
        errors = Controller.tracking_errors(agent.state, agent.samples, p.controller,
                                            agent.config, world.torus)
    if errors is None or Controller.needs_replan(errors, p.controller):
        plan_path(world, agent)
        agent.n_replans += 1
        errors = Controller.tracking_errors(agent.state, agent.samples, p.controller,
                                            agent.config, world.torus)
    phi_C = Controller.steering_command(errors, agent.config, p.controller)
    # context steering
    neighbors = sense_neighbors(world, ego_index, centers)
    interest, danger = behavior_maps(world, agent, neighbors, phi_C)
    sel = Context.merge(interest, danger, agent.grid, p.merge)
    obstructed = bool(np.all(sel.block[agent.grid.speeds > 0, :]))
    blocked_fraction = float(np.mean(sel.block))
    if sel.stand_still:
        return Decision(Vehicle.STAND_STILL, obstructed, blocked_fraction, False, 'still')
    if _action_is_safe(agent, sel.action, neighbors, world):
        return Decision(sel.action, obstructed, blocked_fraction, False, '')
    fallback = Context.best_grid_action(sel.filtered, sel.block, agent.grid)
    if fallback is None:
        return Decision(Vehicle.STAND_STILL, obstructed, blocked_fraction, False, 'still')
    return Decision(fallback, obstructed, blocked_fraction, False, 'grid')


# stepping
def safety_dump(world, reason):
    lines = ['Safety violation at step {}: {}'.format(world.t, reason),
             'torus edge: {}'.format(world.torus.edge_length)]
    for a in world.agents:
        lines.append('HAV {}: pos=({:.6f}, {:.6f}) headings={} radius={:.4f} goal_index={}'.format(
            a.index, a.state.x, a.state.y, np.round(a.state.headings, 6).tolist(),
            a.radius, a.goal_index))
    return '\n'.join(lines)

def check_safety(world):
    """Raise SafetyViolation on a jackknifed HAV or overlapping footprints
    """
    for a in world.agents:
        if Vehicle.is_jackknifed(a.state):
            msg = 'HAV {} jackknifed'.format(a.index)
            raise Utils.SafetyViolation(msg, safety_dump(world, msg))
    pairs = Torus.overlapping_pairs(world.centers(), world.radii(), world.torus)
    if len(pairs) > 0:
        msg = 'Overlapping footprints: {}'.format(pairs)
        raise Utils.SafetyViolation(msg, safety_dump(world, msg))

def polyline_contacts(world):
    """Number of HAV pairs whose axle chains intersect (diagnostic)
    """
    n = len(world.agents)
    chains = [Vehicle.polyline(a.state, a.config) for a in world.agents]
    count = 0
    for i in range(n):
        for h in range(i + 1, n):
            # shift h next to i (minimal image of the rear axles)
            d = Torus.rel_vector(chains[i][1], chains[h][1], world.torus)
            q = chains[h] - chains[h][1] + chains[i][1] + d
            if Vehicle.polylines_intersect(chains[i], q):
                count += 1
    return count

def _at_goal(world, agent):
    goal = agent.goal
    dist = Torus.torus_distance([agent.state.x, agent.state.y], [goal.x, goal.y], world.torus)
    dh = abs(Utils.wrap_angle(agent.state.truck_heading - goal.heading))
    sp = world.params.sim
    return dist <= sp.goal_position_tolerance and dh <= sp.goal_heading_tolerance

def step_world(world):
    """Advance all HAVs by one synchronous step.
    Returns: list of Decision
    """
    dt = world.params.sim.dt
    centers = world.centers()
    decisions = [decide(world, i, centers) for i in range(len(world.agents))]
    # commit
    for a, d in zip(world.agents, decisions):
        if d.waiting:
            a.waiting_steps += 1
        st = Vehicle.step(a.state, a.config, d.action, dt)
        x, y = Torus.wrap([st.x, st.y], world.torus)
        a.state = Vehicle.HavState(x, y, st.truck_heading, st.trailer_headings)
        a.distance += d.action.speed * dt
        if d.action.speed > 0:
            a.n_standstill = 0
        else:
            a.n_standstill += 1
        delta = Vehicle.articulation_angles(a.state)
        if delta.shape[0] > 0:
            a.max_articulation = max(a.max_articulation, float(np.max(np.abs(delta))))
    world.t += 1
    check_safety(world)
    # goals
    for a in world.agents:
        if not (a.done or a.arrived) and _at_goal(world, a):
            a.arrived = True
            a.reached[a.goal_index] = True
            logger.debug('HAV {} reached goal {} at step {}'.format(
                a.index, a.goal_index + 1, world.t))
    if all(a.reached[0] for a in world.agents) and all(a.goal_index == 0 for a in world.agents):
        for a in world.agents:
            a.goal_index = 1
            a.arrived = False
            plan_path(world, a)
            a.planned_legs.append(a.path.length)
        logger.debug('Second goals assigned at step {}'.format(world.t))
    return decisions

def classify(world, decisions, max_steps=None):
    """Success, Deadlock, Livelock or None (keep going)
    """
    if max_steps is None:
        max_steps = world.params.sim.max_steps
    if all(a.done for a in world.agents):
        return Outcome('Success', world.t)
    moved = any(d.action.speed > 0 for d in decisions)
    if not moved and all(d.waiting or d.obstructed for d in decisions):
        return Outcome('Deadlock', world.t)
    if world.t > max_steps:
        return Outcome('Livelock', world.t)
    return None


# trajectory log
def trajectory_rows(world, decisions):
    rows = []
    for a, d in zip(world.agents, decisions):
        delta = Vehicle.articulation_angles(a.state)
        rows.append([world.t, a.index, a.state.x, a.state.y, a.state.truck_heading,
                     ';'.join('{:.6f}'.format(x) for x in delta),
                     d.action.speed, d.action.steer, d.blocked_fraction])
    return rows

TRAJECTORY_COLUMNS = ['step', 'hav', 'x', 'y', 'theta0', 'deltas', 'speed', 'steer',
                      'blocked_fraction']


def run_record(world, outcome, params_hash='', contacts=0):
    havs = []
    dt = world.params.sim.dt
    for a in world.agents:
        havs.append(Metrics.HavRecord(a.index, a.config.n_trailers, a.radius, a.distance,
                                      world.t * dt, a.waiting_steps * dt,
                                      tuple(a.planned_legs), a.reached[0], a.done,
                                      a.n_replans, a.max_articulation))
    return Metrics.RunRecord(outcome, havs, world.scenario.seed, params_hash,
                             world.scenario.density, world.t, contacts)

def run_scenario(scenario, params=None, params_hash='', trajectory=False):
    """Simulating a scenario until Success, Deadlock or Livelock.
    trajectory : also return the per-step log (pandas.DataFrame)
    Returns: RunRecord, or (RunRecord, DataFrame) if trajectory
    """
    world = WorldState(scenario, params)
    rows = []
    contacts = 0
    outcome = None
    while outcome is None:
        try:
            decisions = step_world(world)
        except Utils.SafetyViolation as e:
            logger.error(e.dump)
            raise
        if world.params.sim.check_polylines:
            contacts += polyline_contacts(world)
        if trajectory:
            rows += trajectory_rows(world, decisions)
        outcome = classify(world, decisions)
    logger.info('Scenario {}: {} at step {}'.format(scenario.seed, outcome.classification,
                                                     outcome.step))
    rec = run_record(world, outcome, params_hash, contacts)
    if trajectory:
        return rec, pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS)
    return rec


# main
if __name__ == '__main__':
    pass
