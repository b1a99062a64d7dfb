#!/usr/bin/env python
# -*- coding: utf-8 -*-

# import
## batteries
import os
import math
import pytest
## 3rd party
import numpy as np
import pandas as pd
## package
from pyHavSwarm import Utils
from pyHavSwarm import Vehicle
from pyHavSwarm import Scenario
from pyHavSwarm import Params
from pyHavSwarm import Metrics
from pyHavSwarm import Simulation


# data dir
test_dir = os.path.join(os.path.dirname(__file__))
data_dir = os.path.join(test_dir, 'data')


# helpers
def engine_params(**kwargs):
    p = Params.params(config_file=os.path.join(data_dir, 'config.json'))
    for k, v in kwargs.items():
        p.set(k.replace('__', '.'), v)
    return p.engine_params()

@pytest.fixture
def single():
    return Scenario.read_scenario(os.path.join(data_dir, 'scenario_single.json'))

@pytest.fixture
def deadlock():
    return Scenario.read_scenario(os.path.join(data_dir, 'scenario_deadlock.json'))


# tests
def test_sim_params():
    with pytest.raises(ValueError):
        Simulation.SimParams(dt=0)
    with pytest.raises(ValueError):
        Simulation.SimParams(max_steps=0)
    with pytest.raises(ValueError):
        Simulation.Outcome('Crash', 1)

def test_world_init(deadlock):
    w = Simulation.WorldState(deadlock, engine_params())
    assert w.t == 0
    assert len(w.agents) == 2
    assert w.r_comm == pytest.approx(2 * 1.0 + 10.0)
    assert w.margin == pytest.approx(4.0 * 0.05 + 1e-6)
    a = w.agents[0]
    assert a.planned_legs == [pytest.approx(30.0)]
    assert a.goal == deadlock.goal_sequences[0][0]

def test_sense_neighbors(deadlock):
    w = Simulation.WorldState(deadlock, engine_params())
    nb = Simulation.sense_neighbors(w, 0)
    assert len(nb) == 1
    np.testing.assert_allclose(nb[0].relative_position, [2.1, 0.0], atol=1e-9)
    assert nb[0].footprint_radius == 1.0
    nb = Simulation.sense_neighbors(w, 1)
    np.testing.assert_allclose(nb[0].relative_position, [-2.1, 0.0], atol=1e-9)
    # out of communication range
    w.agents[1].state = Vehicle.aligned_state(90.0, 90.0, 0.0, w.agents[1].config)
    assert Simulation.sense_neighbors(w, 0) == []

def test_single_hav_success(single):
    rec, traj = Simulation.run_scenario(single, engine_params(), 'h', trajectory=True)
    assert rec.classification == 'Success'
    assert rec.n_hav == 1
    h = rec.havs[0]
    assert h.reached_goal1 and h.reached_both
    assert len(h.planned_legs) == 2
    assert h.planned_legs[0] == pytest.approx(20.0)
    assert 20.0 <= h.planned_legs[1] <= 21.0
    assert h.distance == pytest.approx(sum(h.planned_legs), abs=0.5)
    assert h.waiting_time == 0.0
    assert 0.0 <= h.max_articulation < math.pi / 2
    assert rec.params_hash == 'h'
    assert list(traj.columns) == Simulation.TRAJECTORY_COLUMNS
    assert traj.shape[0] == rec.steps
    assert traj['step'].iloc[-1] == rec.outcome.step
    assert (traj['speed'] <= 4.0).all()

def test_goal2_assignment(single):
    w = Simulation.WorldState(single, engine_params())
    a = w.agents[0]
    while not a.reached[0]:
        Simulation.step_world(w)
        assert w.t < 400
    # single HAV: the second goal is assigned in the same step
    assert a.goal_index == 1
    assert not a.arrived
    assert a.goal == single.goal_sequences[0][1]
    assert len(a.planned_legs) == 2

def test_deterministic(single):
    a = Simulation.run_scenario(single, engine_params(), trajectory=True)
    b = Simulation.run_scenario(single, engine_params(), trajectory=True)
    assert a[0] == b[0]
    pd.testing.assert_frame_equal(a[1], b[1])

def test_livelock(single):
    rec = Simulation.run_scenario(single, engine_params(sim__max_steps=5))
    assert rec.classification == 'Livelock'
    assert rec.outcome.step == 6
    assert not rec.havs[0].reached_goal1

def test_deadlock(deadlock):
    rec = Simulation.run_scenario(deadlock, engine_params())
    assert rec.classification == 'Deadlock'
    assert rec.outcome.step == 1
    assert all(h.distance == 0.0 for h in rec.havs)

def test_obstructed_decision(deadlock):
    w = Simulation.WorldState(deadlock, engine_params())
    d = Simulation.decide(w, 0)
    assert d.obstructed
    assert d.action.speed == 0.0
    assert not d.waiting
    assert 0 < d.blocked_fraction < 1

def test_waiting_decision(single):
    w = Simulation.WorldState(single, engine_params())
    w.agents[0].arrived = True
    d = Simulation.decide(w, 0)
    assert d.waiting
    assert d.action == Vehicle.STAND_STILL

def test_classify():
    D = Simulation.Decision
    still = Vehicle.STAND_STILL
    moving = Vehicle.Action(1.0, 0.0)
    scn = Scenario.read_scenario(os.path.join(data_dir, 'scenario_deadlock.json'))
    w = Simulation.WorldState(scn, engine_params())
    w.t = 10
    assert Simulation.classify(w, [D(still, True, 0.8, False, ''),
                                   D(still, False, 0.0, True, '')]).classification == 'Deadlock'
    # a HAV that could still move keeps the run going
    assert Simulation.classify(w, [D(still, True, 0.8, False, ''),
                                   D(still, False, 0.2, False, 'still')]) is None
    assert Simulation.classify(w, [D(moving, True, 0.8, False, ''),
                                   D(still, True, 0.8, False, '')]) is None
    w.t = 401
    assert Simulation.classify(w, [D(moving, False, 0.0, False, ''),
                                   D(still, False, 0.0, False, '')]).classification == 'Livelock'
    for a in w.agents:
        a.reached = [True, True]
    out = Simulation.classify(w, [D(still, False, 0.0, True, '')] * 2)
    assert out == Simulation.Outcome('Success', 401)

def test_check_safety(deadlock):
    w = Simulation.WorldState(deadlock, engine_params())
    Simulation.check_safety(w)
    assert Simulation.polyline_contacts(w) == 0
    # push HAV 1 onto HAV 0
    cfg = w.agents[1].config
    w.agents[1].state = Vehicle.aligned_state(51.5, 50.0, math.pi, cfg)
    with pytest.raises(Utils.SafetyViolation) as e:
        Simulation.check_safety(w)
    assert 'HAV 0' in e.value.dump
    # axle chains overlap as well
    assert Simulation.polyline_contacts(w) == 1
    w.agents[1].state = Vehicle.aligned_state(70.0, 50.0, math.pi, cfg)
    w.agents[0].state = Vehicle.HavState(50.0, 50.0, 0.0, [2.0])
    with pytest.raises(Utils.SafetyViolation):
        Simulation.check_safety(w)

def test_random_two_hav_run_is_safe():
    scn = Scenario.sample_scenario(3, 2, 0.05)
    rec = Simulation.run_scenario(scn, engine_params(sim__max_steps=150))
    assert rec.classification in Metrics.OUTCOMES
    assert rec.steps <= 151
    assert rec.seed == 3

def default_params(**kwargs):
    p = Params.params()
    for k, v in kwargs.items():
        p.set(k.replace('__', '.'), v)
    return p.engine_params()

@pytest.mark.parametrize('seed', range(8))
def test_single_hav_success_with_defaults(seed):
    scn = Scenario.sample_scenario(seed, 1, 0.05)
    rec = Simulation.run_scenario(scn, default_params())
    assert rec.classification == 'Success'
    assert rec.havs[0].reached_both
    assert rec.havs[0].max_articulation < math.pi / 2

def test_saved_single_hav_success_with_defaults(single):
    rec = Simulation.run_scenario(single, default_params())
    assert rec.classification == 'Success'
    assert len(rec.havs[0].planned_legs) == 2

@pytest.mark.parametrize('n_hav,seed', [(5, 0), (5, 1), (10, 0), (10, 1)])
def test_dense_swarm_never_violates_safety(n_hav, seed):
    # a SafetyViolation would propagate out of run_scenario
    scn = Scenario.sample_scenario(seed, n_hav, 0.25)
    rec = Simulation.run_scenario(scn, default_params(sim__max_steps=200))
    assert rec.classification in Metrics.OUTCOMES
    assert rec.n_hav == n_hav
    assert all(h.max_articulation <= math.pi / 2 for h in rec.havs)

def test_deadlock_is_permanent(deadlock):
    w = Simulation.WorldState(deadlock, engine_params())
    decisions = Simulation.step_world(w)
    assert Simulation.classify(w, decisions).classification == 'Deadlock'
    before = [a.state for a in w.agents]
    for _ in range(30):
        decisions = Simulation.step_world(w)
        out = Simulation.classify(w, decisions)
        assert out is not None and out.classification == 'Deadlock'
        assert all(d.action.speed == 0.0 for d in decisions)
    for a, st in zip(w.agents, before):
        np.testing.assert_allclose(a.state.headings, st.headings, atol=1e-12)
        assert (a.state.x, a.state.y) == pytest.approx((st.x, st.y))
    # the progress counter grows but cannot unblock the HAVs
    assert all(a.n_standstill == 31 for a in w.agents)
