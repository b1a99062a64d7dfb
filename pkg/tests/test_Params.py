#!/usr/bin/env python
# -*- coding: utf-8 -*-

# import
## batteries
import os
import math
import json
import pytest
## package
from pyHavSwarm import Params


# data dir
test_dir = os.path.join(os.path.dirname(__file__))
data_dir = os.path.join(test_dir, 'data')


# tests
def test_defaults():
    p = Params.params()
    assert p.get('sim.dt') == 0.05
    assert p.get('merge.danger_threshold') == 0.1
    assert 'behavior.evade_weight' in p.keys()
    ep = p.engine_params()
    assert ep.sim.max_steps == 10000
    assert ep.merge.interp_shape == (20, 40)
    assert (ep.n_speeds, ep.n_steers) == (5, 5)
    sp = p.scenario_params()
    assert sp.max_steer == pytest.approx(math.radians(50))
    assert sp.truck_means == (4.0, 10.7)

def test_parse_value():
    assert Params.parse_value('3') == 3
    assert Params.parse_value('0.5') == 0.5
    assert Params.parse_value('true') is True
    assert Params.parse_value('[1, 2]') == [1, 2]
    assert Params.parse_value('abc') == 'abc'

def test_set_get():
    p = Params.params()
    p.set('behavior.evade_weight', 3.0)
    assert p.behavior_params().evade_weight == 3.0
    with pytest.raises(KeyError):
        p.set('behavior.no_such_key', 1)
    with pytest.raises(KeyError):
        p.get('nothing.here')
    with pytest.raises(KeyError):
        p.set('sim', 1)

def test_overrides():
    p = Params.params(overrides=['grid.n_steers=7', 'sim.check_polylines=true'])
    assert p.engine_params().n_steers == 7
    assert p.sim_params().check_polylines is True
    with pytest.raises(ValueError):
        p.apply_overrides(['grid.n_steers'])
    p.set('grid.n_steers', 6)
    with pytest.raises(ValueError):
        p.engine_params()

def test_config_file(tmp_path):
    p = Params.params(config_file=os.path.join(data_dir, 'config.json'))
    assert p.get('sim.max_steps') == 400
    assert p.merge_params().interp_shape == (21, 41)
    # unrelated values keep their defaults
    assert p.get('sim.dt') == 0.05
    f = os.path.join(str(tmp_path), 'bad.json')
    with open(f, 'w') as outF:
        outF.write('{"sim": ')
    with pytest.raises(ValueError):
        Params.params(config_file=f)

def test_hash():
    a = Params.params()
    b = Params.params()
    assert a.hash() == b.hash()
    b.set('behavior.evade_weight', 2.5)
    assert a.hash() != b.hash()
    c = Params.params()
    c.update(json.loads(b.to_json()))
    assert c.hash() == b.hash()
    assert c.to_dict() == b.to_dict()
