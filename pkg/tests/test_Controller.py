#!/usr/bin/env python
# -*- coding: utf-8 -*-

# import
## batteries
import math
import pytest
## package
from pyHavSwarm import Vehicle
from pyHavSwarm import Torus
from pyHavSwarm import Dubins
from pyHavSwarm import Controller


# fixtures
@pytest.fixture
def cfg():
    return Vehicle.HavConfig(4.0, [3.0], max_steer=math.radians(50), max_speed=4.0)

@pytest.fixture
def straight():
    p = Dubins.plan(Torus.Pose(0, 0, 0), Torus.Pose(20, 0, 0), 5.0)
    return Dubins.sample(p, 0.1)

# tests
def test_params():
    with pytest.raises(ValueError):
        Controller.ControllerParams(lookahead_factor=0)
    with pytest.raises(ValueError):
        Controller.ControllerParams(replan_threshold=-1)
    p = Controller.ControllerParams()
    assert p.cross_track_gain == 2.0

def test_lookahead(cfg):
    p = Controller.ControllerParams()
    assert Controller.lookahead_distance(cfg, p) == pytest.approx(0.8)

def test_on_path(cfg, straight):
    p = Controller.ControllerParams()
    s = Vehicle.aligned_state(5.0, 0.0, 0.0, cfg)
    e = Controller.tracking_errors(s, straight, p, cfg)
    assert e.heading_error == pytest.approx(0.0)
    assert e.cross_track_error == pytest.approx(0.0)
    assert straight[e.i_look].s == pytest.approx(5.8)
    assert Controller.steering_command(e, cfg, p) == pytest.approx(0.0)
    assert not Controller.needs_replan(e, p)

def test_cross_track_sign(cfg, straight):
    p = Controller.ControllerParams()
    # path to the left of the truck: steer left
    s = Vehicle.aligned_state(5.0, -0.5, 0.0, cfg)
    e = Controller.tracking_errors(s, straight, p, cfg)
    assert e.cross_track_error == pytest.approx(0.5)
    assert e.cross_track_signed == pytest.approx(0.5)
    phi = Controller.steering_command(e, cfg, p)
    assert phi == pytest.approx(math.atan(2.0 * 0.5 / 4.0))
    # path to the right: steer right
    s = Vehicle.aligned_state(5.0, 0.5, 0.0, cfg)
    e = Controller.tracking_errors(s, straight, p, cfg)
    assert e.cross_track_signed == pytest.approx(-0.5)
    assert Controller.steering_command(e, cfg, p) < 0

def test_heading_error_clamped(cfg, straight):
    p = Controller.ControllerParams()
    s = Vehicle.aligned_state(5.0, 0.0, 0.3, cfg)
    e = Controller.tracking_errors(s, straight, p, cfg)
    assert e.heading_error == pytest.approx(-0.3)
    # atan(2 * 4 * -0.3 / 0.8) exceeds the steering limit
    assert Controller.steering_command(e, cfg, p) == pytest.approx(-cfg.max_steer)

def test_replan_threshold(cfg, straight):
    p = Controller.ControllerParams(replan_threshold=0.8)
    s = Vehicle.aligned_state(5.0, 0.75, 0.0, cfg)
    assert not Controller.needs_replan(Controller.tracking_errors(s, straight, p, cfg), p)
    s = Vehicle.aligned_state(5.0, -0.9, 0.0, cfg)
    assert Controller.needs_replan(Controller.tracking_errors(s, straight, p, cfg), p)

def test_torus_offsets(cfg, straight):
    p = Controller.ControllerParams()
    w = Torus.TorusWorld(30.0)
    # wrapped position of (5, -0.5)
    s = Vehicle.aligned_state(5.0, 29.5, 0.0, cfg)
    e = Controller.tracking_errors(s, straight, p, cfg, world=w)
    assert straight[e.i_near].s == pytest.approx(5.0)
    assert e.cross_track_signed == pytest.approx(0.5)

@pytest.mark.parametrize('e_H,signed', [(0.05, 0.3), (-0.2, 0.1), (0.0, -0.7), (1.0, 2.0)])
def test_steering_mirror_symmetry(cfg, e_H, signed):
    p = Controller.ControllerParams()
    left = Controller.TrackingErrors(e_H, abs(signed), signed, 0, 0)
    right = Controller.TrackingErrors(-e_H, abs(signed), -signed, 0, 0)
    assert Controller.steering_command(left, cfg, p) == \
        pytest.approx(-Controller.steering_command(right, cfg, p))

@pytest.mark.parametrize('e_H,signed', [(3.0, 50.0), (-3.0, -50.0), (3.0, -50.0), (0.0, 1e6)])
def test_steering_bounded(cfg, e_H, signed):
    p = Controller.ControllerParams(cross_track_gain=10.0)
    e = Controller.TrackingErrors(e_H, abs(signed), signed, 0, 0)
    phi = Controller.steering_command(e, cfg, p)
    assert abs(phi) <= cfg.max_steer

def test_closed_loop_follows_dubins_path(cfg):
    # l1 < l0 / tan(max_steer): no jackknife even at full steer
    assert cfg.trailer_wheelbases[0] < cfg.truck_wheelbase / math.tan(cfg.max_steer)
    p = Controller.ControllerParams()
    R = Vehicle.min_turning_radius(cfg)
    assert R == pytest.approx(5.0)
    path = Dubins.plan(Torus.Pose(0, 0, 0), Torus.Pose(30, 20, math.pi / 2), R)
    samples = Dubins.sample(path, 0.1)
    s = Vehicle.aligned_state(0.0, 0.0, 0.0, cfg)
    best = float('inf')
    worst_cross_track = 0.0
    for _ in range(1000):
        e = Controller.tracking_errors(s, samples, p, cfg)
        worst_cross_track = max(worst_cross_track, e.cross_track_error)
        if e.i_near == len(samples) - 1:
            break
        phi = Controller.steering_command(e, cfg, p)
        s = Vehicle.step(s, cfg, Vehicle.Action(cfg.max_speed, phi), 0.05)
        assert not Vehicle.is_jackknifed(s)
        best = min(best, math.hypot(s.x - 30.0, s.y - 20.0))
    # the truck cuts arcs by about half a meter at the default gains
    assert best < 1.0
    assert worst_cross_track < 1.0
