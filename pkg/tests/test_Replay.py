#!/usr/bin/env python
# -*- coding: utf-8 -*-

# import
## batteries
import os
import pytest
## package
from pyHavSwarm import Utils
from pyHavSwarm import Replay


# data dir
test_dir = os.path.join(os.path.dirname(__file__))
data_dir = os.path.join(test_dir, 'data')
config_file = os.path.join(data_dir, 'config.json')


# helpers
def run_cell(script_runner, out_dir, *extra):
    ret = script_runner.run('pyHavSwarm', 'run',
                            '--n-hav', '2', '--density', '5%',
                            '--runs', '2', '--max-steps', '40',
                            '--config', config_file,
                            '--out-dir', out_dir, *extra)
    assert ret.success
    return os.path.join(out_dir, 'run', 'NH2_rho0.05')


# tests
def test_find_manifests(tmp_path):
    with pytest.raises(Utils.ConfigError):
        Replay.find_manifests(str(tmp_path))

def test_replay_identical(script_runner, tmp_path):
    cell_dir = run_cell(script_runner, str(tmp_path))
    ret = script_runner.run('pyHavSwarm', 'replay', '--check', cell_dir)
    assert ret.success
    # originals are backed up
    assert os.path.isfile(os.path.join(cell_dir, '#runs.csv.1#'))

def test_replay_experiment_dir(script_runner, tmp_path):
    cell_dir = run_cell(script_runner, str(tmp_path))
    ret = script_runner.run('pyHavSwarm', 'replay', '--check',
                            os.path.dirname(cell_dir))
    assert ret.success

def test_replay_scenario_file(script_runner, tmp_path):
    out_dir = str(tmp_path)
    ret = script_runner.run('pyHavSwarm', 'run',
                            '--scenario', os.path.join(data_dir, 'scenario_single.json'),
                            '--config', config_file,
                            '--out-dir', out_dir)
    assert ret.success
    cell_dir = os.path.join(out_dir, 'run', 'NH1_rho0.005')
    ret = script_runner.run('pyHavSwarm', 'replay', '--check', cell_dir)
    assert ret.success

def test_replay_mismatch(script_runner, tmp_path):
    cell_dir = run_cell(script_runner, str(tmp_path))
    with open(os.path.join(cell_dir, 'runs.csv'), 'a') as outF:
        outF.write('edited\n')
    ret = script_runner.run('pyHavSwarm', 'replay', '--check', cell_dir)
    assert ret.returncode == 3

def test_replay_bad_manifest(script_runner, tmp_path):
    cell_dir = run_cell(script_runner, str(tmp_path))
    with open(os.path.join(cell_dir, 'manifest.txt'), 'w') as outF:
        outF.write('{"seeds": [1]}\n')
    ret = script_runner.run('pyHavSwarm', 'replay', cell_dir)
    assert ret.returncode == 1

def test_replay_missing_dir(script_runner, tmp_path):
    ret = script_runner.run('pyHavSwarm', 'replay',
                            os.path.join(str(tmp_path), 'none'))
    assert ret.returncode == 1
