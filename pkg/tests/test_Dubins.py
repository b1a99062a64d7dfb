#!/usr/bin/env python
# -*- coding: utf-8 -*-

# import
## batteries
import math
import pytest
## 3rd party
import numpy as np
## package
from pyHavSwarm import Utils
from pyHavSwarm import Torus
from pyHavSwarm import Dubins


# geometric oracle (tangent constructions, independent of the word solvers)
def _center(pose, R, left):
    sgn = 1.0 if left else -1.0
    return np.array([pose.x - sgn * R * math.sin(pose.heading),
                     pose.y + sgn * R * math.cos(pose.heading)])

def _angle(v):
    return math.atan2(v[1], v[0])

def oracle_lengths(start, goal, R):
    """Shortest length per word; CCC words try both middle circles
    """
    m = Utils.mod2pi
    ret = {}
    for word in Dubins.WORDS:
        c1 = _center(start, R, word[0] == 'L')
        c2 = _center(goal, R, word[2] == 'L')
        v = c2 - c1
        D = float(np.linalg.norm(v))
        if word in ('LSL', 'RSR'):
            psi = _angle(v)
            if word == 'LSL':
                t, q = m(psi - start.heading), m(goal.heading - psi)
            else:
                t, q = m(start.heading - psi), m(psi - goal.heading)
            ret[word] = R * (t + q) + D
        elif word in ('LSR', 'RSL'):
            if D < 2 * R:
                continue
            a = math.asin(2 * R / D)
            psi = _angle(v) + (a if word == 'LSR' else -a)
            straight = math.sqrt(D * D - 4 * R * R)
            if word == 'LSR':
                t, q = m(psi - start.heading), m(psi - goal.heading)
            else:
                t, q = m(start.heading - psi), m(goal.heading - psi)
            ret[word] = R * (t + q) + straight
        else:
            if D > 4 * R or D == 0:
                continue
            a = math.acos(D / (4 * R))
            best = None
            for sgn in (1.0, -1.0):
                phi = _angle(v) + sgn * a
                c3 = c1 + 2 * R * np.array([math.cos(phi), math.sin(phi)])
                if word == 'RLR':
                    h1 = _angle(c3 - c1) - math.pi / 2
                    h2 = _angle(c2 - c3) + math.pi / 2
                    t, p, q = m(start.heading - h1), m(h2 - h1), m(h2 - goal.heading)
                else:
                    h1 = _angle(c3 - c1) + math.pi / 2
                    h2 = _angle(c2 - c3) - math.pi / 2
                    t, p, q = m(h1 - start.heading), m(h1 - h2), m(goal.heading - h2)
                L = R * (t + p + q)
                if best is None or L < best:
                    best = L
            ret[word] = best
    return ret

def _end_pose(path):
    x, y, h = Dubins.pose_at(path, path.length)
    return x[0], y[0], h[0]


# tests
def test_straight():
    start = Torus.Pose(0, 0, 0)
    goal = Torus.Pose(10, 0, 0)
    p = Dubins.plan(start, goal, 1.0)
    assert p.length == pytest.approx(10.0)
    # LSL and RSR tie; the first word wins
    assert p.word == 'LSL'

def test_turns():
    R = 2.0
    p = Dubins.plan(Torus.Pose(0, 0, 0), Torus.Pose(0, 4, math.pi), R)
    assert p.length == pytest.approx(math.pi * R)
    assert p.word[0] == 'L'
    p = Dubins.plan(Torus.Pose(0, 0, 0), Torus.Pose(4, -4, -math.pi / 2), 4.0)
    assert p.length == pytest.approx(2 * math.pi)
    assert p.word[0] == 'R'

def test_identical_poses():
    pose = Torus.Pose(3, 4, 1.0)
    p = Dubins.plan(pose, pose, 5.0)
    assert p.length == 0.0
    s = Dubins.sample(p)
    assert len(s) == 1

def test_invalid():
    with pytest.raises(ValueError):
        Dubins.plan(Torus.Pose(0, 0, 0), Torus.Pose(float('nan'), 0, 0), 1.0)
    with pytest.raises(ValueError):
        Dubins.word_lengths(Torus.Pose(0, 0, 0), Torus.Pose(1, 0, 0), 0.0)
    with pytest.raises(ValueError):
        Dubins.sample(Dubins.plan(Torus.Pose(0, 0, 0), Torus.Pose(1, 0, 0), 1.0), step=0)

def test_words_reach_goal():
    rng = np.random.default_rng(1)
    for _ in range(200):
        start = Torus.Pose(*rng.uniform(-10, 10, 2), heading=rng.uniform(-math.pi, math.pi))
        goal = Torus.Pose(*rng.uniform(-10, 10, 2), heading=rng.uniform(-math.pi, math.pi))
        R = rng.uniform(1.0, 5.0)
        for word, lengths in Dubins.word_lengths(start, goal, R).items():
            path = Dubins.DubinsPath(word, lengths, R, start, goal)
            x, y, h = _end_pose(path)
            assert x == pytest.approx(goal.x, abs=1e-6)
            assert y == pytest.approx(goal.y, abs=1e-6)
            assert abs(Utils.wrap_angle(h - goal.heading)) < 1e-6

def test_plan_matches_oracle():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        start = Torus.Pose(*rng.uniform(-10, 10, 2), heading=rng.uniform(-math.pi, math.pi))
        goal = Torus.Pose(*rng.uniform(-10, 10, 2), heading=rng.uniform(-math.pi, math.pi))
        R = rng.uniform(1.0, 5.0)
        p = Dubins.plan(start, goal, R)
        oracle = oracle_lengths(start, goal, R)
        assert p.length == pytest.approx(min(oracle.values()), abs=1e-6)
        assert p.length == pytest.approx(min(sum(x) for x in Dubins.word_lengths(start, goal, R).values()))

def test_sample():
    start = Torus.Pose(1, 2, 0.3)
    goal = Torus.Pose(-5, 7, -2.0)
    p = Dubins.plan(start, goal, 3.0)
    s = Dubins.sample(p, step=0.1)
    assert s.s[0] == 0.0
    assert s.length == pytest.approx(p.length)
    assert np.max(np.diff(s.s)) <= 0.1 + 1e-12
    # consecutive samples are never further apart than their arc length
    d = np.linalg.norm(np.diff(s.points, axis=0), axis=1)
    assert np.all(d <= np.diff(s.s) + 1e-9)
    first, last = s[0], s[len(s) - 1]
    assert (first.x, first.y) == pytest.approx((1, 2))
    assert (last.x, last.y) == pytest.approx((-5, 7), abs=1e-6)
    assert abs(Utils.wrap_angle(last.heading + 2.0)) < 1e-6
    assert len(list(s)) == len(s)

def test_nearest_and_lookahead():
    p = Dubins.plan(Torus.Pose(0, 0, 0), Torus.Pose(10, 0, 0), 1.0)
    s = Dubins.sample(p, step=0.1)
    i_near, i_look = Dubins.nearest_and_lookahead_index(s, [3.01, 0.5], 1.0)
    assert s[i_near].s == pytest.approx(3.0)
    assert s[i_look].s == pytest.approx(4.0)
    # the lookahead is clamped to the last sample
    near, look = Dubins.nearest_and_lookahead(s, [9.5, 0.0], 2.0)
    assert near.s == pytest.approx(9.5)
    assert look.s == pytest.approx(10.0)
    # torus: a wrapped position finds the same nearest sample
    w = Torus.TorusWorld(20.0)
    i_near, _ = Dubins.nearest_and_lookahead_index(s, [23.01, 20.5], 1.0, world=w)
    assert s[i_near].s == pytest.approx(3.0)
    with pytest.raises(ValueError):
        Dubins.nearest_and_lookahead_index(s, [0, 0], -1.0)
