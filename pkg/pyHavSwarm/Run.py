from __future__ import print_function
# import
## batteries
import os
import argparse
import logging
## package
from pyHavSwarm import Utils
from pyHavSwarm import Scenario
from pyHavSwarm import Experiment

logger = logging.getLogger(__name__)


# functions
def get_desc():
    desc = 'Simulate a single HAV swarm configuration'
    return desc

def parse_args(test_args=None, subparsers=None):
    # desc
    desc = get_desc()
    epi = """DESCRIPTION:
    Simulate one swarm size (N_H) at one collision density (rho) for
    --runs randomly generated scenarios. Each scenario seed is derived
    from --seed, N_H, rho and the run number, so a run can be reproduced
    on its own.

    Alternatively, a single saved scenario (JSON; see --save-scenarios)
    can be simulated with --scenario. N_H and rho are then taken from
    the scenario file.

    Output (<out-dir>/<name>/NH<N_H>_rho<rho>/):
    * runs.csv      one row per HAV per run
    * summary.txt   aggregate rates (%) and mean/CI statistics
    * manifest.txt  resolved parameters, seeds and versions (for replay)

    Exit codes:
    0 = success; 1 = configuration error; 2 = safety violation
    """
    if subparsers:
        parser = subparsers.add_parser('run', description=desc, epilog=epi,
                                       formatter_class=argparse.RawTextHelpFormatter)
    else:
        parser = argparse.ArgumentParser(description=desc, epilog=epi,
                                         formatter_class=argparse.RawTextHelpFormatter)

    # args
    ## swarm
    swarm = parser.add_argument_group('Swarm')
    swarm.add_argument('--n-hav', type=int, default=1,
                       help='Number of HAVs (default: %(default)s)')
    swarm.add_argument('--density', type=str, default='0.12',
                       help='Collision density; a fraction or a percentage (e.g. "12%%") (default: %(default)s)')
    swarm.add_argument('--scenario', type=str, default=None,
                       help='Saved scenario file (JSON) to simulate instead of a generated one')
    ## shared
    Experiment.add_common_args(parser)

    # parse & return
    if test_args:
        args = parser.parse_args(test_args)
        return args

    return parser

def check_args(args):
    Experiment.check_common_args(args)
    if args.scenario is None:
        if args.n_hav < 1:
            raise Utils.ConfigError('--n-hav must be >= 1')
        args.density = Experiment.parse_densities(args.density)
        if len(args.density) != 1:
            raise Utils.ConfigError('--density takes a single value; use the grid subcommand for several')
        args.density = args.density[0]
    elif not os.path.isfile(args.scenario):
        msg = 'Cannot find scenario file: {}'
        raise Utils.ConfigError(msg.format(args.scenario))
    if args.name is None:
        args.name = 'run'

def load_scenario(file_name):
    """Reading and validating a saved scenario
    """
    try:
        scn = Scenario.read_scenario(file_name)
        Scenario.check_scenario(scn)
    except (KeyError, ValueError, TypeError) as e:
        msg = 'Invalid scenario file "{}": {}'
        raise Utils.ConfigError(msg.format(file_name, e))
    return scn

def _main(args):
    check_args(args)
    params = Experiment.load_params(args)
    if args.scenario is not None:
        scn = load_scenario(args.scenario)
        if args.runs > 1:
            logger.warning('A saved scenario is deterministic; simulating it once')
        n_hav, density = len(scn.havs), scn.density
        seeds = [[scn.seed]]
        files = [args.scenario]
    else:
        n_hav, density = args.n_hav, args.density
        seeds, files = None, None
    cell = Experiment.Cell(Experiment.cell_name(n_hav, density), n_hav, density, params)
    mode = 'single' if args.scenario is not None or args.runs == 1 else 'batch'
    ret = Experiment.run_cells(args.name, mode, [cell], args,
                               scenario_files=files, seeds=seeds)
    for cell, summary in ret:
        msg = '{}: success {:.1f}%, deadlock {:.1f}%, livelock {:.1f}%, collision {:.1f}%'
        logger.info(msg.format(cell.name, summary['success_pct'], summary['deadlock_pct'],
                               summary['livelock_pct'], summary['collision_pct']))
    return Experiment.EXIT_OK

def main(args=None):
    # Input
    if args is None:
        args = parse_args().parse_args()
    return Experiment.guarded(_main, args)


# main
if __name__ == '__main__':
    pass
