from __future__ import print_function
# import
## batteries
import os
import argparse
import logging
from itertools import product
## 3rd party
import pandas as pd
## package
from pyHavSwarm import Utils
from pyHavSwarm import Experiment

logger = logging.getLogger(__name__)


# functions
def get_desc():
    desc = 'Simulate a grid of swarm sizes x collision densities'
    return desc

def parse_args(test_args=None, subparsers=None):
    # desc
    desc = get_desc()
    epi = """DESCRIPTION:
    Simulate every combination of swarm size (N_H) and collision density
    (rho). Each combination is one cell with its own output directory
    (see the run subcommand). The seeds of a cell depend only on --seed,
    N_H, rho and the run number, so adding cells to a grid does not change
    the scenarios of the existing cells.

    A grid.txt table (one row per cell) collects the main rates:
    success, deadlock and livelock (%), plus the mean average speed and
    path deviation.

    Examples:
    --n-hav "2,5,10" --density "5%,15%,25%"
    --n-hav "1-10" --density "0.05,0.1"
    """
    if subparsers:
        parser = subparsers.add_parser('grid', description=desc, epilog=epi,
                                       formatter_class=argparse.RawTextHelpFormatter)
    else:
        parser = argparse.ArgumentParser(description=desc, epilog=epi,
                                         formatter_class=argparse.RawTextHelpFormatter)

    # args
    ## grid
    grid = parser.add_argument_group('Grid')
    grid.add_argument('--n-hav', type=str, default='2,5,10',
                      help='Swarm sizes; comma-separated values and/or ranges (default: %(default)s)')
    grid.add_argument('--density', type=str, default='5%,15%,25%',
                      help='Collision densities; comma-separated fractions or percentages (default: %(default)s)')
    ## shared
    Experiment.add_common_args(parser, max_steps=20000)

    # parse & return
    if test_args:
        args = parser.parse_args(test_args)
        return args

    return parser

def check_args(args):
    Experiment.check_common_args(args)
    args.n_hav = Experiment.parse_sizes(args.n_hav)
    args.density = Experiment.parse_densities(args.density)
    if args.name is None:
        args.name = 'grid'

def grid_table(results):
    """One row per cell
    Returns: pandas.DataFrame
    """
    rows = []
    for cell, s in results:
        rows.append([cell.name, cell.n_hav, cell.density, s['n_runs'],
                     s['generation_failures'], s['success_pct'], s['deadlock_pct'],
                     s['livelock_pct'], s['hav_completion_pct'],
                     s['avg_speed_mean'], s['path_deviation_mean']])
    columns = ['cell', 'n_hav', 'density', 'n_runs', 'generation_failures',
               'success_pct', 'deadlock_pct', 'livelock_pct', 'hav_completion_pct',
               'avg_speed_mean', 'path_deviation_mean']
    return pd.DataFrame(rows, columns=columns)

def _main(args):
    check_args(args)
    params = Experiment.load_params(args)
    cells = [Experiment.Cell(Experiment.cell_name(n, d), n, d, params)
             for n, d in product(args.n_hav, args.density)]
    ret = Experiment.run_cells(args.name, 'grid', cells, args)
    df = grid_table(ret)
    f = os.path.join(args.out_dir, args.name, 'grid.txt')
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
