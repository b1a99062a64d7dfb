from __future__ import print_function
# import
## batteries
import os
import glob
import json
import argparse
import logging
## package
from pyHavSwarm import __version__
from pyHavSwarm import Utils
from pyHavSwarm import Params
from pyHavSwarm import Experiment

logger = logging.getLogger(__name__)

# files re-created (and compared with --check) for every cell
CELL_FILES = ['runs.csv', 'summary.txt', 'manifest.txt']


# functions
def get_desc():
    desc = 'Re-run experiment cells from their manifests'
    return desc

def parse_args(test_args=None, subparsers=None):
    # desc
    desc = get_desc()
    epi = """DESCRIPTION:
    Re-run one or more cells of a previous run, grid or param-study
    using only the parameters and seeds recorded in manifest.txt.

    The input is either a cell directory (containing manifest.txt) or an
    experiment directory (containing <cell>/manifest.txt).
    The previous runs.csv, summary.txt and manifest.txt are backed up as
    "#<file>.<n>#" before being re-written.

    With --check, the new files are compared byte-by-byte with the backups.

    Exit codes:
    0 = success (and identical output with --check)
    1 = configuration error (e.g., missing or invalid manifest)
    2 = safety violation
    3 = output differs from the original (--check)
    """
    if subparsers:
        parser = subparsers.add_parser('replay', description=desc, epilog=epi,
                                       formatter_class=argparse.RawTextHelpFormatter)
    else:
        parser = argparse.ArgumentParser(description=desc, epilog=epi,
                                         formatter_class=argparse.RawTextHelpFormatter)

    # args
    ## I/O
    groupIO = parser.add_argument_group('I/O')
    groupIO.add_argument('directory', metavar='DIR', type=str,
                         help='Cell or experiment directory')
    groupIO.add_argument('--save-scenarios', action='store_true', default=False,
                         help='Write every scenario (JSON) next to the run table (default: %(default)s)')
    groupIO.add_argument('--trajectory', action='store_true', default=False,
                         help='Write the per-step trajectory log of every run (default: %(default)s)')
    ## replay
    rep = parser.add_argument_group('Replay')
    rep.add_argument('--check', action='store_true', default=False,
                     help='Compare the new output with the original (default: %(default)s)')
    rep.add_argument('--jobs', type=int, default=1,
                     help='Number of worker processes (default: %(default)s)')

    # parse & return
    if test_args:
        args = parser.parse_args(test_args)
        return args

    return parser

def check_args(args):
    if args.jobs < 1:
        raise Utils.ConfigError('--jobs must be >= 1')
    if not os.path.isdir(args.directory):
        msg = 'Cannot find directory: {}'
        raise Utils.ConfigError(msg.format(args.directory))

def find_manifests(directory):
    """Manifest files in a cell directory or its sub-directories
    """
    f = os.path.join(directory, 'manifest.txt')
    if os.path.isfile(f):
        return [f]
    files = sorted(glob.glob(os.path.join(directory, '*', 'manifest.txt')))
    if len(files) == 0:
        msg = 'No manifest.txt found in {} or its sub-directories'
        raise Utils.ConfigError(msg.format(directory))
    return files

def read_manifest(manifest_file):
    try:
        with open(manifest_file) as inF:
            m = json.load(inF)
        params = Params.params()
        params.update(m['params'])
        params.engine_params()
        params.scenario_params()
        seeds = [int(x) for x in m['seeds']]
        cell = Experiment.Cell(os.path.basename(os.path.dirname(os.path.abspath(manifest_file))),
                               int(m['n_hav']), float(m['density']), params)
    except (KeyError, ValueError, TypeError) as e:
        msg = 'Invalid manifest "{}": {}'
        raise Utils.ConfigError(msg.format(manifest_file, e))
    if params.hash() != m.get('params_hash'):
        msg = 'Parameter hash mismatch in {}; the manifest may have been edited'
        logger.warning(msg.format(manifest_file))
    if m.get('version') != __version__:
        msg = '{} was written by version {} (current: {})'
        logger.warning(msg.format(manifest_file, m.get('version'), __version__))
    return m, cell, seeds

def replay_cell(manifest_file, args):
    """Re-running one cell in place.
    Returns: list of files that differ from the backups (only with check)
    """
    m, cell, seeds = read_manifest(manifest_file)
    cell_dir = os.path.dirname(os.path.abspath(manifest_file))
    scenario_file = m.get('scenario_file')
    if scenario_file is not None and not os.path.isfile(scenario_file):
        msg = 'Cannot find the scenario file of {}: {}'
        raise Utils.ConfigError(msg.format(manifest_file, scenario_file))
    backups = {}
    for x in CELL_FILES:
        f = os.path.join(cell_dir, x)
        if os.path.isfile(f):
            backups[x] = Utils.backup_file(f)
    run_args = argparse.Namespace(seed=m.get('base_seed'), runs=len(seeds),
                                  trajectory=args.trajectory,
                                  save_scenarios=args.save_scenarios,
                                  jobs=args.jobs)
    files = None if scenario_file is None else [scenario_file]
    Experiment.run_cells(m['experiment'], m['mode'], [cell], run_args,
                         out_dir=os.path.dirname(cell_dir),
                         scenario_files=files, seeds=[seeds])
    diff = []
    if args.check:
        for x in CELL_FILES:
            if x not in backups or not Utils.same_bytes(os.path.join(cell_dir, x), backups[x]):
                diff.append(os.path.join(cell_dir, x))
    return diff

def _main(args):
    check_args(args)
    diff = []
    for f in find_manifests(args.directory):
        logger.info('Replaying {}'.format(f))
        diff += replay_cell(f, args)
    if len(diff) > 0:
        for f in diff:
            logger.error('Replay output differs: {}'.format(f))
        return Experiment.EXIT_MISMATCH
    if args.check:
        logger.info('Replay output is identical to the original')
    return Experiment.EXIT_OK

def main(args=None):
    # Input
    if args is None:
        args = parse_args().parse_args()
    return Experiment.guarded(_main, args)


# main
if __name__ == '__main__':
    pass
