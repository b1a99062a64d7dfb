#!/usr/bin/env python
# -*- coding: utf-8 -*-

# import
## batteries
import os
import json
import pytest
## 3rd party
import pandas as pd
## package
from pyHavSwarm import Run


# data dir
test_dir = os.path.join(os.path.dirname(__file__))
data_dir = os.path.join(test_dir, 'data')
config_file = os.path.join(data_dir, 'config.json')


# tests
def test_parse_args():
    args = Run.parse_args(['--n-hav', '3', '--density', '12%'])
    Run.check_args(args)
    assert args.n_hav == 3
    assert args.density == pytest.approx(0.12)
    assert args.name == 'run'

def test_random(script_runner, tmp_path):
    out_dir = str(tmp_path)
    ret = script_runner.run('pyHavSwarm', 'run',
                            '--n-hav', '2', '--density', '5%',
                            '--runs', '2', '--max-steps', '60',
                            '--config', config_file,
                            '--save-scenarios',
                            '--out-dir', out_dir)
    assert ret.success
    cell_dir = os.path.join(out_dir, 'run', 'NH2_rho0.05')
    for x in ['runs.csv', 'summary.txt', 'manifest.txt',
              'scenario_0.json', 'scenario_1.json']:
        assert os.path.isfile(os.path.join(cell_dir, x))
    df = pd.read_csv(os.path.join(cell_dir, 'runs.csv'))
    assert df.shape[0] == 4
    with open(os.path.join(cell_dir, 'manifest.txt')) as inF:
        m = json.load(inF)
    assert m['runs'] == 2
    assert m['mode'] == 'batch'
    assert m['params']['sim']['max_steps'] == 60

def test_scenario_file(script_runner, tmp_path):
    out_dir = str(tmp_path)
    ret = script_runner.run('pyHavSwarm', 'run',
                            '--scenario', os.path.join(data_dir, 'scenario_single.json'),
                            '--config', config_file,
                            '--trajectory',
                            '--out-dir', out_dir, '--name', 'single')
    assert ret.success
    cell_dir = os.path.join(out_dir, 'single', 'NH1_rho0.005')
    df = pd.read_csv(os.path.join(cell_dir, 'runs.csv'))
    assert df.shape[0] == 1
    assert df['outcome'].iloc[0] == 'Success'
    assert os.path.isfile(os.path.join(cell_dir, 'trajectory_0.csv'))
    with open(os.path.join(cell_dir, 'manifest.txt')) as inF:
        assert json.load(inF)['mode'] == 'single'

def test_bad_param(script_runner, tmp_path):
    ret = script_runner.run('pyHavSwarm', 'run',
                            '--param', 'sim.not_a_key=1',
                            '--out-dir', str(tmp_path))
    assert ret.returncode == 1

def test_bad_density(script_runner, tmp_path):
    ret = script_runner.run('pyHavSwarm', 'run',
                            '--density', '0.9',
                            '--out-dir', str(tmp_path))
    assert ret.returncode == 1

def test_missing_scenario(script_runner, tmp_path):
    ret = script_runner.run('pyHavSwarm', 'run',
                            '--scenario', os.path.join(str(tmp_path), 'none.json'),
                            '--out-dir', str(tmp_path))
    assert ret.returncode == 1
