from __future__ import print_function

# import
## batteries
import math
import collections
## 3rd party
import numpy as np
import pandas as pd
from scipy import stats
## package

#-- notes on aggregation --#
# Metrics are computed per HAV, averaged per run, then averaged across runs
# (macro-averaging).  Rates are percentages of runs.  "Affected" HAVs are the
# HAVs of a failed run that did not reach both goals.

OUTCOMES = ('Success', 'Deadlock', 'Livelock')
JACKKNIFE_ANGLE = math.pi / 2.0

# completion rates (%) reported for the one- and two-HAV comparison setups;
# 'repulsion' is the earlier attraction-repulsion controller
REFERENCE_COMPLETION = {1 : {'context_steering' : 100.0, 'repulsion' : 83.4},
                        2 : {'context_steering' : 73.2, 'repulsion' : 65.1}}


HavRecord = collections.namedtuple('HavRecord',
                                   ['hav', 'n_trailers', 'footprint', 'distance',
                                    'total_time', 'waiting_time', 'planned_legs',
                                    'reached_goal1', 'reached_both', 'n_replans',
                                    'max_articulation'])
HavRecord.__new__.__defaults__ = (0.0,)
HavRecord.__doc__ = """Per-HAV run summary.
planned_legs : initial Dubins length of each assigned leg (m)
max_articulation : largest |articulation angle| over the committed steps (rad)"""


class RunRecord(collections.namedtuple('RunRecord',
                                       ['outcome', 'havs', 'seed', 'params_hash',
                                        'density', 'steps', 'polyline_contacts'])):
    """Outcome of one simulation run plus per-HAV records
    """
    __slots__ = ()

    @property
    def n_hav(self):
        return len(self.havs)

    @property
    def classification(self):
        return self.outcome.classification


# per-HAV metrics
def planned_length(record, hav):
    return float(sum(record.havs[hav].planned_legs))

def average_speed(record, hav):
    """Traveled distance / (elapsed time - time waiting at a reached goal).
    Returns: m/s, or NaN if no eligible time
    """
    h = record.havs[hav]
    eligible = h.total_time - h.waiting_time
    if not eligible > 0:
        return float('nan')
    return h.distance / eligible

def path_deviation(record, hav):
    """Traveled distance / sum of the initially planned leg lengths
    """
    L = planned_length(record, hav)
    if not L > 0:
        return float('nan')
    return record.havs[hav].distance / L


# tables
def hav_table(records, run_ids=None):
    """One row per HAV per run
    Returns: pandas.DataFrame
    """
    if run_ids is None:
        run_ids = list(range(len(records)))
    rows = []
    for run, rec in zip(run_ids, records):
        for i, h in enumerate(rec.havs):
            rows.append([run, rec.seed, rec.n_hav, rec.density, rec.classification,
                         rec.outcome.step, i, h.n_trailers, h.footprint, h.distance,
                         h.total_time, h.waiting_time, planned_length(rec, i),
                         int(h.reached_goal1), int(h.reached_both), h.n_replans,
                         average_speed(rec, i), path_deviation(rec, i),
                         h.max_articulation, rec.polyline_contacts, rec.params_hash])
    columns = ['run', 'seed', 'n_hav', 'density', 'outcome', 'step', 'hav',
               'n_trailers', 'footprint', 'distance', 'total_time', 'waiting_time',
               'planned_length', 'reached_goal1', 'reached_both', 'n_replans',
               'avg_speed', 'path_deviation', 'max_articulation', 'polyline_contacts',
               'params_hash']
    return pd.DataFrame(rows, columns=columns)

def run_table(df_hav):
    """Per-run means of the per-HAV table
    """
    if df_hav.shape[0] == 0:
        return pd.DataFrame(columns=['run', 'outcome', 'n_hav', 'avg_speed',
                                     'path_deviation', 'affected'])
    g = df_hav.groupby('run', sort=True)
    df = pd.DataFrame({'outcome' : g['outcome'].first(),
                       'n_hav' : g['hav'].count(),
                       'avg_speed' : g['avg_speed'].mean(),
                       'path_deviation' : g['path_deviation'].mean(),
                       'affected' : 1.0 - g['reached_both'].mean()})
    return df.reset_index()


# statistics
def normal_ci(x, level=0.95):
    """Mean with a normal-approximation confidence interval.
    Returns: (mean, low, high); bounds are NaN for fewer than 2 values
    """
    x = np.asarray(x, dtype=float)
    x = x[~np.isnan(x)]
    if x.shape[0] == 0:
        return float('nan'), float('nan'), float('nan')
    m = float(np.mean(x))
    if x.shape[0] < 2:
        return m, float('nan'), float('nan')
    z = stats.norm.ppf(0.5 + level / 2.0)
    half = z * float(np.std(x, ddof=1)) / math.sqrt(x.shape[0])
    return m, m - half, m + half

def bootstrap_ci(x, level=0.95, n_boot=2000, seed=0):
    """Percentile bootstrap interval of the mean (cross-check for normal_ci)
    Returns: (low, high)
    """
    x = np.asarray(x, dtype=float)
    x = x[~np.isnan(x)]
    if x.shape[0] == 0:
        return float('nan'), float('nan')
    rng = np.random.Generator(np.random.Philox(seed))
    idx = rng.integers(0, x.shape[0], size=(n_boot, x.shape[0]))
    means = x[idx].mean(axis=1)
    alpha = (1.0 - level) / 2.0
    return float(np.quantile(means, alpha)), float(np.quantile(means, 1.0 - alpha))

def _add_ci(summary, name, x):
    m, lo, hi = normal_ci(x)
    summary[name + '_mean'] = m
    summary[name + '_ci_low'] = lo
    summary[name + '_ci_high'] = hi


def aggregate(records, generation_failures=0):
    """Macro-averaged summary of a set of runs.
    records : list of RunRecord (or a per-HAV DataFrame from hav_table)
    Returns: pandas.Series
    """
    if isinstance(records, pd.DataFrame):
        df_hav = records
    else:
        df_hav = hav_table(records)
    df_run = run_table(df_hav)
    n = df_run.shape[0]
    s = collections.OrderedDict()
    s['n_runs'] = n
    s['generation_failures'] = int(generation_failures)
    for o in OUTCOMES:
        s[o.lower() + '_pct'] = 100.0 * float((df_run['outcome'] == o).sum()) / n if n > 0 else float('nan')
    s['task_completion_pct'] = s['success_pct']
    s['hav_completion_pct'] = 100.0 * float(df_hav['reached_both'].mean()) if n > 0 else float('nan')
    # footprint overlaps and jackknifes abort a run with SafetyViolation, so
    # these count what the completed runs recorded; polyline contacts are
    # only recorded with sim.check_polylines on
    g = df_hav.groupby('run', sort=True)
    jackknifed = g['max_articulation'].max() > JACKKNIFE_ANGLE
    contacts = g['polyline_contacts'].first() > 0
    s['jackknife_pct'] = 100.0 * float(jackknifed.sum()) / n if n > 0 else float('nan')
    s['collision_pct'] = 100.0 * float(contacts.sum()) / n if n > 0 else float('nan')
    s['polyline_contact_runs'] = int(contacts.sum())
    for o in OUTCOMES[1:]:
        _add_ci(s, o.lower() + '_affected', df_run.loc[df_run['outcome'] == o, 'affected'])
    success = df_run['outcome'] == 'Success'
    _add_ci(s, 'avg_speed', df_run['avg_speed'])
    _add_ci(s, 'avg_speed_success', df_run.loc[success, 'avg_speed'])
    _add_ci(s, 'path_deviation', df_run['path_deviation'])
    _add_ci(s, 'path_deviation_success', df_run.loc[success, 'path_deviation'])
    n_havs = df_run['n_hav'].unique() if n > 0 else []
    if len(n_havs) == 1 and int(n_havs[0]) in REFERENCE_COMPLETION:
        ref = REFERENCE_COMPLETION[int(n_havs[0])]
        s['reference_completion_pct'] = ref['context_steering']
        s['reference_repulsion_completion_pct'] = ref['repulsion']
    return pd.Series(s)

def write_summary(summary, file_name):
    """Tab-delimited key/value table
    """
    df = summary.rename_axis('metric').reset_index(name='value')
    df.to_csv(file_name, sep='\t', index=False, float_format='%.10g')
    return file_name

def read_summary(file_name):
    df = pd.read_csv(file_name, sep='\t')
    return pd.Series(df['value'].values, index=df['metric'].values)


# main
if __name__ == '__main__':
    pass
