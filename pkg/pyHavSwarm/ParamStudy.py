from __future__ import print_function
# import
## batteries
import os
import json
import argparse
import logging
## 3rd party
import pandas as pd
## package
from pyHavSwarm import Utils
from pyHavSwarm import Params
from pyHavSwarm import Experiment

logger = logging.getLogger(__name__)


# functions
def get_desc():
    desc = 'Simulate one swarm configuration across values of a single parameter'
    return desc

def parse_args(test_args=None, subparsers=None):
    # desc
    desc = get_desc()
    epi = """DESCRIPTION:
    Vary one parameter (a dotted key of the parameter file, e.g.
    "behavior.evade_weight") over a list of values. Every value is a cell
    named "<key>=<value>". All cells share the same scenario seeds, so the
    values are compared on identical scenarios (unless the parameter itself
    changes scenario generation, e.g. "scenario.trailer_sigma").

    A study.txt table (one row per value) collects the main rates and the
    hash of each cell's scenario set.

    Examples:
    --param-name behavior.evade_weight --values "0,1,2,4"
    --param-name merge.danger_threshold --values "0.05,0.1,0.5"
    """
    if subparsers:
        parser = subparsers.add_parser('param-study', description=desc, epilog=epi,
                                       formatter_class=argparse.RawTextHelpFormatter)
    else:
        parser = argparse.ArgumentParser(description=desc, epilog=epi,
                                         formatter_class=argparse.RawTextHelpFormatter)

    # args
    ## study
    study = parser.add_argument_group('Study')
    study.add_argument('--param-name', type=str, required=True,
                       help='Dotted parameter key to vary')
    study.add_argument('--values', type=str, required=True,
                       help='Comma-separated parameter values (JSON literals)')
    study.add_argument('--n-hav', type=int, default=2,
                       help='Number of HAVs (default: %(default)s)')
    study.add_argument('--density', type=str, default='0.12',
                       help='Collision density; a fraction or a percentage (default: %(default)s)')
    ## shared
    Experiment.add_common_args(parser)

    # parse & return
    if test_args:
        args = parser.parse_args(test_args)
        return args

    return parser

def check_args(args):
    Experiment.check_common_args(args)
    if args.n_hav < 1:
        raise Utils.ConfigError('--n-hav must be >= 1')
    args.density = Experiment.parse_densities(args.density)
    if len(args.density) != 1:
        raise Utils.ConfigError('--density takes a single value')
    args.density = args.density[0]
    args.values = parse_values(args.values)
    if len(args.values) == 0:
        raise Utils.ConfigError('--values: no values provided')
    if args.name is None:
        args.name = 'param-study'

def parse_values(x):
    """Comma-separated values; JSON lists and objects stay intact, e.g. '[4,10.7],[5,11]'
    """
    try:
        values = json.loads('[' + x + ']')
    except ValueError:
        return [Params.parse_value(y.strip()) for y in x.split(',') if y.strip() != '']
    return values

def value_label(x):
    if isinstance(x, float) and x == int(x):
        return '{:g}'.format(x)
    if isinstance(x, (list, dict)):
        return json.dumps(x, separators=(',', ':'))
    return str(x)

def study_table(param_name, values, results, out_dir):
    """One row per parameter value
    Returns: pandas.DataFrame
    """
    rows = []
    for x, (cell, s) in zip(values, results):
        with open(os.path.join(out_dir, cell.name, 'manifest.txt')) as inF:
            scenario_set = json.load(inF)['scenario_set']
        rows.append([param_name, value_label(x), cell.name, s['n_runs'],
                     s['generation_failures'], s['success_pct'], s['deadlock_pct'],
                     s['livelock_pct'], s['hav_completion_pct'],
                     s['avg_speed_mean'], s['path_deviation_mean'], scenario_set])
    columns = ['param', 'value', 'cell', 'n_runs', 'generation_failures',
               'success_pct', 'deadlock_pct', 'livelock_pct', 'hav_completion_pct',
               'avg_speed_mean', 'path_deviation_mean', 'scenario_set']
    return pd.DataFrame(rows, columns=columns)

def _main(args):
    check_args(args)
    cells = []
    for x in args.values:
        params = Experiment.load_params(args, extra=[(args.param_name, x)])
        name = '{}={}'.format(args.param_name, value_label(x))
        cells.append(Experiment.Cell(name, args.n_hav, args.density, params))
    out_dir = os.path.join(args.out_dir, args.name)
    ret = Experiment.run_cells(args.name, 'param-study', cells, args, out_dir=out_dir)
    df = study_table(args.param_name, args.values, ret, out_dir)
    if df['scenario_set'].nunique() > 1:
        logger.info('Scenario sets differ between values of {}'.format(args.param_name))
    f = os.path.join(out_dir, 'study.txt')
    df.to_csv(f, sep='\t', index=False, float_format='%.10g')
    Utils.file_written(f)
    return Experiment.EXIT_OK

def main(args=None):
    # Input
    if args is None:
        args = parse_args().parse_args()
    return Experiment.guarded(_main, args)


# main
if __name__ == '__main__':
    pass
