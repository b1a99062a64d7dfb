from __future__ import print_function

# import
## batteries
import os
import copy
import math
import json
import hashlib
## 3rd party
## package
from pyHavSwarm import Controller
from pyHavSwarm import Context
from pyHavSwarm import Behaviors
from pyHavSwarm import Scenario
from pyHavSwarm import Simulation

#-- notes on parameter keys --#
# Keys are dotted paths into database/defaults.json, e.g. 'behavior.evade_weight'.
# Only keys present in the packaged defaults can be set.


def parse_value(x):
    """Command-line value: JSON literal if possible, otherwise a string
    """
    try:
        return json.loads(x)
    except ValueError:
        return x

def flatten(d, prefix=''):
    """Nested dict to {dotted key : value}
    """
    ret = {}
    for k, v in d.items():
        key = prefix + k
        if isinstance(v, dict):
            ret.update(flatten(v, key + '.'))
        else:
            ret[key] = v
    return ret


class params(object):
    """Simulation, controller, behavior and scenario parameters.
    Defaults are stored in JSON format (database/defaults.json)
    """
    def __init__(self, config_file=None, overrides=None):
        d = os.path.split(__file__)[0]
        self.database_dir = os.path.join(d, 'database')
        f = os.path.join(self.database_dir, 'defaults.json')
        with open(f) as inF:
            self.values = json.load(inF)
        if config_file is not None:
            self.update_from_file(config_file)
        if overrides is not None:
            self.apply_overrides(overrides)

    def keys(self):
        return sorted(flatten(self.values).keys())

    def _parent(self, key):
        parts = key.split('.')
        node = self.values
        try:
            for p in parts[:-1]:
                node = node[p]
            if not isinstance(node, dict) or parts[-1] not in node:
                raise KeyError(key)
        except (KeyError, TypeError):
            msg = 'Unknown parameter: "{}"'
            raise KeyError(msg.format(key))
        return node, parts[-1]

    def get(self, key):
        node, k = self._parent(key)
        return node[k]

    def set(self, key, value):
        node, k = self._parent(key)
        if isinstance(node[k], dict):
            msg = 'Parameter "{}" is a group; set its members instead'
            raise KeyError(msg.format(key))
        node[k] = value

    def update(self, d):
        """Setting every leaf of a nested dict
        """
        for k, v in sorted(flatten(d).items()):
            self.set(k, v)

    def update_from_file(self, file_name):
        with open(file_name) as inF:
            try:
                d = json.load(inF)
            except ValueError as e:
                msg = 'Cannot parse config file "{}": {}'
                raise ValueError(msg.format(file_name, e))
        self.update(d)

    def apply_overrides(self, overrides):
        """Overrides as a list of 'dotted.key=value' strings
        """
        for x in overrides:
            if '=' not in x:
                msg = 'Parameter override must look like "key=value"; got "{}"'
                raise ValueError(msg.format(x))
            k, v = x.split('=', 1)
            self.set(k.strip(), parse_value(v.strip()))

    def to_dict(self):
        return copy.deepcopy(self.values)

    def to_json(self):
        return json.dumps(self.values, indent=2, sort_keys=True)

    def hash(self):
        """sha1 of the resolved parameter set
        """
        txt = json.dumps(self.values, sort_keys=True, separators=(',', ':'))
        return hashlib.sha1(txt.encode('utf-8')).hexdigest()

    # typed parameter sets
    def sim_params(self):
        return Simulation.SimParams(**self.values['sim'])

    def controller_params(self):
        return Controller.ControllerParams(**self.values['controller'])

    def behavior_params(self):
        return Behaviors.BehaviorParams(**self.values['behavior'])

    def merge_params(self):
        m = self.values['merge']
        return Context.MergeParams(m['danger_threshold'],
                                   (m['interp_speeds'], m['interp_steers']))

    def scenario_params(self):
        s = dict(self.values['scenario'])
        s['max_steer'] = math.radians(s.pop('max_steer_deg'))
        return Scenario.ScenarioParams(**s)

    def engine_params(self):
        g = self.values['grid']
        n_v, n_phi = int(g['n_speeds']), int(g['n_steers'])
        # validate the grid resolution before any run starts
        Context.ActionGrid.from_limits(0.0, 1.0, 1.0, n_v, n_phi)
        return Simulation.EngineParams(self.sim_params(), self.controller_params(),
                                       self.behavior_params(), self.merge_params(),
                                       n_v, n_phi)


# main
if __name__ == '__main__':
    pass
