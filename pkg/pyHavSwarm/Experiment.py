from __future__ import print_function
# import
## batteries
import os
import json
import hashlib
import logging
import collections
from concurrent.futures import ProcessPoolExecutor
## package
from pyHavSwarm import __version__
from pyHavSwarm import Utils
from pyHavSwarm import Params
from pyHavSwarm import Scenario
from pyHavSwarm import Simulation
from pyHavSwarm import Metrics

logger = logging.getLogger(__name__)

#-- notes on output layout --#
# <out_dir>/<name>/<cell>/runs.csv      one row per HAV per run
# <out_dir>/<name>/<cell>/summary.txt   tab-delimited metric/value table
# <out_dir>/<name>/<cell>/manifest.txt  JSON: parameters, seeds, cell definition
# optional: scenario_<run>.json, trajectory_<run>.csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SAFETY = 2
EXIT_MISMATCH = 3


Cell = collections.namedtuple('Cell', ['name', 'n_hav', 'density', 'params'])
Cell.__doc__ = """One aggregation unit: swarm size, density and a resolved Params.params"""

RunTask = collections.namedtuple('RunTask', ['cell', 'run', 'seed', 'n_hav', 'density',
                                             'engine_params', 'scenario_params',
                                             'params_hash', 'scenario_file',
                                             'trajectory'])

RunResult = collections.namedtuple('RunResult', ['cell', 'run', 'seed', 'record',
                                                 'scenario', 'trajectory', 'error'])


# argument helpers
def add_common_args(parser, max_steps=None):
    """Arguments shared by the run, grid and param-study subcommands
    """
    groupIO = parser.add_argument_group('I/O')
    groupIO.add_argument('--out-dir', type=str, default='.',
                         help='Output directory (default: %(default)s)')
    groupIO.add_argument('--name', type=str, default=None,
                         help='Experiment name (output sub-directory); the subcommand name if not provided')
    groupIO.add_argument('--save-scenarios', action='store_true', default=False,
                         help='Write every generated scenario (JSON) next to the run table (default: %(default)s)')
    groupIO.add_argument('--trajectory', action='store_true', default=False,
                         help='Write the per-step trajectory log of every run (default: %(default)s)')

    exp = parser.add_argument_group('Experiment')
    exp.add_argument('--seed', type=int, default=0,
                     help='Base seed; scenario seeds are derived from it (default: %(default)s)')
    exp.add_argument('--runs', type=int, default=1,
                     help='Runs (scenarios) per cell (default: %(default)s)')
    exp.add_argument('--max-steps', type=int, default=max_steps,
                     help='Step limit before a run is classified as livelock; the config value if not provided (default: %(default)s)')
    exp.add_argument('--jobs', type=int, default=1,
                     help='Number of worker processes (default: %(default)s)')

    par = parser.add_argument_group('Parameters')
    par.add_argument('--config', type=str, default=None,
                     help='JSON file of parameter values (same layout as the packaged defaults)')
    par.add_argument('--param', type=str, action='append', default=[],
                     help='Parameter override as "dotted.key=value" (e.g. "behavior.evade_weight=3"); can be repeated')
    return parser

def check_common_args(args):
    if args.runs < 1:
        raise Utils.ConfigError('--runs must be >= 1')
    if args.max_steps is not None and args.max_steps < 1:
        raise Utils.ConfigError('--max-steps must be >= 1')
    if args.jobs < 1:
        raise Utils.ConfigError('--jobs must be >= 1')

def load_params(args, extra=None):
    """Resolved parameters: packaged defaults < --config < --max-steps < --param < extra
    """
    try:
        p = Params.params(config_file=args.config)
        if args.max_steps is not None:
            p.set('sim.max_steps', args.max_steps)
        p.apply_overrides(args.param)
        if extra is not None:
            for k, v in extra:
                p.set(k, v)
        # fail early on invalid values
        p.engine_params()
        p.scenario_params()
    except (KeyError, ValueError, TypeError, IOError) as e:
        raise Utils.ConfigError(str(e))
    return p

def cell_name(n_hav, density):
    return 'NH{}_rho{:g}'.format(n_hav, density)

def parse_densities(x):
    try:
        z = Utils.make_float_list(x)
    except ValueError as e:
        raise Utils.ConfigError(str(e))
    for d in z:
        if not 0 < d <= 0.5:
            msg = 'Collision densities must be in (0, 0.5]; got {}'
            raise Utils.ConfigError(msg.format(d))
    return z

def parse_sizes(x):
    try:
        z = Utils.make_range(x)
    except ValueError as e:
        raise Utils.ConfigError(str(e))
    if len(z) == 0 or min(z) < 1:
        msg = 'Swarm sizes must be integers >= 1; got "{}"'
        raise Utils.ConfigError(msg.format(x))
    return z


# running
def run_one(task):
    """Generating (or loading) one scenario and simulating it.
    Scenario generation failures are returned, not raised.
    Returns: RunResult
    """
    try:
        if task.scenario_file is not None:
            scn = Scenario.read_scenario(task.scenario_file)
        else:
            scn = Scenario.sample_scenario(task.seed, task.n_hav, task.density,
                                           task.scenario_params)
    except Utils.ScenarioError as e:
        logger.warning('Scenario {} skipped: {}'.format(task.seed, e))
        return RunResult(task.cell, task.run, task.seed, None, None, None, str(e))
    ret = Simulation.run_scenario(scn, task.engine_params, task.params_hash,
                                  trajectory=task.trajectory)
    if task.trajectory:
        record, traj = ret
    else:
        record, traj = ret, None
    return RunResult(task.cell, task.run, task.seed, record, scn, traj, '')

def execute(tasks, jobs=1):
    """Running tasks; results come back in task order regardless of completion order
    """
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_one, tasks))
    return [run_one(t) for t in tasks]

def make_tasks(cells, seeds, trajectory=False, scenario_files=None):
    """One task per (cell, run); seeds[i][r] is the scenario seed of cell i, run r
    """
    tasks = []
    for i, cell in enumerate(cells):
        ep = cell.params.engine_params()
        sp = cell.params.scenario_params()
        h = cell.params.hash()
        for r, seed in enumerate(seeds[i]):
            f = None if scenario_files is None else scenario_files[i]
            tasks.append(RunTask(i, r, seed, cell.n_hav, cell.density, ep, sp, h,
                                 f, trajectory))
    return tasks

def cell_seeds(base_seed, cell, runs):
    return [Scenario.scenario_seed(base_seed, cell.n_hav, cell.density, r)
            for r in range(runs)]


# output
def scenario_set_hash(results):
    h = hashlib.sha1()
    for res in results:
        if res.scenario is not None:
            h.update(Scenario.scenario_hash(res.scenario).encode('utf-8'))
    return h.hexdigest()

def manifest(name, mode, cell, base_seed, seeds, scenario_set='', scenario_file=None):
    m = collections.OrderedDict([('version', __version__),
                                ('experiment', name),
                                ('mode', mode),
                                ('cell', cell.name),
                                ('n_hav', cell.n_hav),
                                ('density', cell.density),
                                ('base_seed', base_seed),
                                ('runs', len(seeds)),
                                ('seeds', list(seeds)),
                                ('params_hash', cell.params.hash()),
                                ('scenario_set', scenario_set),
                                ('params', cell.params.to_dict())])
    if scenario_file is not None:
        m['scenario_file'] = os.path.abspath(scenario_file)
    return m

def write_cell(cell_dir, cell, results, manifest_d, save_scenarios=False):
    """Writing runs.csv, summary.txt, manifest.txt (+ optional scenarios/trajectories)
    Returns: summary (pandas.Series)
    """
    if not os.path.isdir(cell_dir):
        os.makedirs(cell_dir)
    done = [r for r in results if r.record is not None]
    failures = len(results) - len(done)
    df = Metrics.hav_table([r.record for r in done], [r.run for r in done])
    df['scenario_hash'] = [Scenario.scenario_hash(r.scenario)
                           for r in done for _ in r.record.havs]
    # runs.csv
    f = os.path.join(cell_dir, 'runs.csv')
    df.to_csv(f, index=False, float_format='%.10g')
    Utils.file_written(f)
    # summary.txt
    summary = Metrics.aggregate(df, generation_failures=failures)
    f = os.path.join(cell_dir, 'summary.txt')
    Metrics.write_summary(summary, f)
    Utils.file_written(f)
    # manifest.txt
    f = os.path.join(cell_dir, 'manifest.txt')
    with open(f, 'w') as outF:
        outF.write(json.dumps(manifest_d, indent=2) + '\n')
    Utils.file_written(f)
    # optional files
    for r in done:
        if save_scenarios:
            f = os.path.join(cell_dir, 'scenario_{}.json'.format(r.run))
            Scenario.write_scenario(r.scenario, f)
            Utils.file_written(f)
        if r.trajectory is not None:
            f = os.path.join(cell_dir, 'trajectory_{}.csv'.format(r.run))
            r.trajectory.to_csv(f, index=False, float_format='%.10g')
            Utils.file_written(f)
    return summary

def run_cells(name, mode, cells, args, out_dir=None, scenario_files=None, seeds=None):
    """Running every cell and writing its outputs.
    seeds : per-cell scenario seeds; derived from args.seed if not provided
    Returns: list of (Cell, summary)
    """
    if out_dir is None:
        out_dir = os.path.join(args.out_dir, name)
    if seeds is None:
        seeds = [cell_seeds(args.seed, c, args.runs) for c in cells]
    tasks = make_tasks(cells, seeds, args.trajectory, scenario_files)
    logger.info('{}: {} cells, {} runs'.format(name, len(cells), len(tasks)))
    results = execute(tasks, args.jobs)
    ret = []
    for i, cell in enumerate(cells):
        res = [r for r in results if r.cell == i]
        f = None if scenario_files is None else scenario_files[i]
        m = manifest(name, mode, cell, args.seed, seeds[i], scenario_set_hash(res), f)
        summary = write_cell(os.path.join(out_dir, cell.name), cell, res, m,
                             args.save_scenarios)
        ret.append((cell, summary))
    return ret

def guarded(func, args):
    """Calling a subcommand body, mapping errors to exit codes
    """
    try:
        return func(args)
    except Utils.ConfigError as e:
        logger.error('Configuration error: {}'.format(e))
        return EXIT_CONFIG
    except Utils.SafetyViolation as e:
        logger.error('Safety violation: {}'.format(e))
        return EXIT_SAFETY
    except Utils.KinematicsError as e:
        logger.error('Kinematics error: {}'.format(e))
        return EXIT_SAFETY


# main
if __name__ == '__main__':
    pass
