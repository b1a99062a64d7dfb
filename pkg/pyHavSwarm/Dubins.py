from __future__ import print_function

# import
## batteries
import math
import collections
## 3rd party
import numpy as np
## package
from pyHavSwarm import Utils
from pyHavSwarm import Torus

mod2pi = Utils.mod2pi

#-- notes on Dubins words --#
# Each solver works in the normalized frame (start at origin, goal on the
# x-axis at distance d = D/R) and returns the three segment lengths
# (t, p, q) in units of R, or None if the word is infeasible.
# 'L' = left turn, 'R' = right turn, 'S' = straight.

WORDS = ('LSL', 'RSR', 'LSR', 'RSL', 'RLR', 'LRL')


class DubinsPath(collections.namedtuple('DubinsPath',
                                        ['word', 'segment_params', 'radius',
                                         'start_pose', 'goal_pose'])):
    """Shortest path made of turns at radius R and at most one straight segment.
    segment_params : (3,) segment lengths in meters
    """
    __slots__ = ()

    @property
    def length(self):
        return float(sum(self.segment_params))


PathSample = collections.namedtuple('PathSample', ['x', 'y', 'heading', 's'])


class SampledPath(object):
    """Arc-length ordered samples of a DubinsPath (numpy columns).
    Indexing returns PathSample objects.
    """
    def __init__(self, xs, ys, headings, s):
        self.xs = xs
        self.ys = ys
        self.headings = headings
        self.s = s
        self.points = np.column_stack([xs, ys])

    def __len__(self):
        return self.s.shape[0]

    def __getitem__(self, i):
        return PathSample(float(self.xs[i]), float(self.ys[i]),
                          float(self.headings[i]), float(self.s[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    @property
    def length(self):
        return float(self.s[-1])


# word solvers
def _LSL(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p_sq = 2 + d * d - 2 * math.cos(alpha - beta) + 2 * d * (sa - sb)
    if p_sq < -1e-10:
        return None
    p_sq = max(p_sq, 0.0)
    tmp = math.atan2(cb - ca, d + sa - sb)
    return mod2pi(-alpha + tmp), math.sqrt(p_sq), mod2pi(beta - tmp)

def _RSR(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p_sq = 2 + d * d - 2 * math.cos(alpha - beta) + 2 * d * (sb - sa)
    if p_sq < -1e-10:
        return None
    p_sq = max(p_sq, 0.0)
    tmp = math.atan2(ca - cb, d - sa + sb)
    return mod2pi(alpha - tmp), math.sqrt(p_sq), mod2pi(-beta + tmp)

def _LSR(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p_sq = -2 + d * d + 2 * math.cos(alpha - beta) + 2 * d * (sa + sb)
    if p_sq < -1e-10:
        return None
    p_sq = max(p_sq, 0.0)
    p = math.sqrt(p_sq)
    tmp = math.atan2(-ca - cb, d + sa + sb) - math.atan2(-2.0, p)
    return mod2pi(-alpha + tmp), p, mod2pi(-mod2pi(beta) + tmp)

def _RSL(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p_sq = -2 + d * d + 2 * math.cos(alpha - beta) - 2 * d * (sa + sb)
    if p_sq < -1e-10:
        return None
    p_sq = max(p_sq, 0.0)
    p = math.sqrt(p_sq)
    tmp = math.atan2(ca + cb, d - sa - sb) - math.atan2(2.0, p)
    return mod2pi(alpha - tmp), p, mod2pi(beta - tmp)

def _RLR(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    tmp = (6.0 - d * d + 2 * math.cos(alpha - beta) + 2 * d * (sa - sb)) / 8.0
    if abs(tmp) > 1 + 1e-10:
        return None
    p = mod2pi(2 * math.pi - math.acos(min(max(tmp, -1.0), 1.0)))
    t = mod2pi(alpha - math.atan2(ca - cb, d - sa + sb) + p / 2.0)
    return t, p, mod2pi(alpha - beta - t + p)

def _LRL(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    tmp = (6.0 - d * d + 2 * math.cos(alpha - beta) + 2 * d * (sb - sa)) / 8.0
    if abs(tmp) > 1 + 1e-10:
        return None
    p = mod2pi(2 * math.pi - math.acos(min(max(tmp, -1.0), 1.0)))
    t = mod2pi(-alpha - math.atan2(ca - cb, d + sa - sb) + p / 2.0)
    return t, p, mod2pi(mod2pi(beta) - alpha - t + p)

_SOLVERS = {'LSL': _LSL, 'RSR': _RSR, 'LSR': _LSR,
            'RSL': _RSL, 'RLR': _RLR, 'LRL': _LRL}


# functions
def word_lengths(start, goal, radius):
    """Segment lengths (m) of every feasible Dubins word.
    Returns: dict {word : (l1, l2, l3)}; infeasible words are omitted
    """
    if not radius > 0:
        msg = 'Turning radius must be > 0; got {}'
        raise ValueError(msg.format(radius))
    dx = goal.x - start.x
    dy = goal.y - start.y
    d = math.hypot(dx, dy) / radius
    theta = mod2pi(math.atan2(dy, dx))
    alpha = mod2pi(start.heading - theta)
    beta = mod2pi(goal.heading - theta)
    ret = {}
    for word in WORDS:
        tpq = _SOLVERS[word](alpha, beta, d)
        if tpq is not None:
            ret[word] = tuple(x * radius for x in tpq)
    return ret

def plan(start, goal, radius):
    """Shortest Dubins path from start to goal with turning radius `radius`.
    start, goal : Torus.Pose (unwrapped frame)
    Returns: DubinsPath
    """
    if not (np.all(np.isfinite(start)) and np.all(np.isfinite(goal))):
        raise ValueError('Poses must be finite')
    if (math.hypot(goal.x - start.x, goal.y - start.y) < 1e-9 and
        abs(Utils.wrap_angle(goal.heading - start.heading)) < 1e-9):
        return DubinsPath('LSL', (0.0, 0.0, 0.0), float(radius), start, goal)
    lengths = word_lengths(start, goal, radius)
    if len(lengths) == 0:
        msg = 'No Dubins path found from {} to {}'
        raise ValueError(msg.format(start, goal))
    # min keeps the first word (WORDS order) on ties
    feasible = [w for w in WORDS if w in lengths]
    word = min(feasible, key=lambda w: sum(lengths[w]))
    return DubinsPath(word, lengths[word], float(radius), start, goal)

def _segment_poses(kind, x, y, th, R, s):
    """Poses along one segment at local arc lengths s (np.array)
    """
    if kind == 'S':
        return x + s * math.cos(th), y + s * math.sin(th), np.full(s.shape, th)
    if kind == 'L':
        th_s = th + s / R
        return (x + R * (np.sin(th_s) - math.sin(th)),
                y - R * (np.cos(th_s) - math.cos(th)),
                th_s)
    th_s = th - s / R
    return (x - R * (np.sin(th_s) - math.sin(th)),
            y + R * (np.cos(th_s) - math.cos(th)),
            th_s)

def pose_at(path, s):
    """Poses at arc lengths s along a path (np.arrays: x, y, heading)
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    xs = np.empty(s.shape)
    ys = np.empty(s.shape)
    hs = np.empty(s.shape)
    x, y, th = path.start_pose.x, path.start_pose.y, path.start_pose.heading
    offset = 0.0
    seg_len = path.segment_params
    for i, kind in enumerate(path.word):
        lo = offset
        hi = offset + seg_len[i]
        if i == len(path.word) - 1:
            sel = s >= lo
        else:
            sel = (s >= lo) & (s < hi)
        if np.any(sel):
            xs[sel], ys[sel], hs[sel] = _segment_poses(kind, x, y, th, path.radius, s[sel] - lo)
        # segment end pose
        ex, ey, eh = _segment_poses(kind, x, y, th, path.radius, np.array([seg_len[i]]))
        x, y, th = ex[0], ey[0], eh[0]
        offset = hi
    return xs, ys, Utils.wrap_angle(hs)

def sample(path, step=0.1):
    """Discretizing a path into samples spaced at most `step` apart, both ends included.
    Returns: SampledPath
    """
    if not step > 0:
        raise ValueError('Sample step must be > 0')
    L = path.length
    n = max(int(math.ceil(L / step - 1e-9)), 1) if L > 0 else 0
    s = np.linspace(0.0, L, n + 1)
    xs, ys, hs = pose_at(path, s)
    return SampledPath(xs, ys, hs, s)

def nearest_and_lookahead_index(samples, position, lookahead, world=None):
    """Index of the nearest sample to `position` and the sample `lookahead` meters further along.
    samples : SampledPath
    position : (2,) point
    lookahead : l_C (m)
    world : TorusWorld; if given, distances use the minimal image
    Returns: (nearest index, lookahead index)
    """
    if len(samples) == 0:
        raise ValueError('No path samples')
    if lookahead < 0:
        raise ValueError('Lookahead distance must be >= 0')
    if world is None:
        diff = samples.points - np.asarray(position, dtype=float)[None, :]
    else:
        diff = Torus.rel_vector(position, samples.points, world)
    # np.argmin keeps the earliest index on ties
    i_near = int(np.argmin(np.einsum('ij,ij->i', diff, diff)))
    target = samples.s[i_near] + lookahead - 1e-9
    i_look = int(np.searchsorted(samples.s, target, side='left'))
    i_look = min(max(i_look, i_near), len(samples) - 1)
    return i_near, i_look

def nearest_and_lookahead(samples, position, lookahead, world=None):
    """Nearest path sample p_N and look-ahead sample p_C (PathSample objects)
    """
    i_near, i_look = nearest_and_lookahead_index(samples, position, lookahead, world)
    return samples[i_near], samples[i_look]


# main
if __name__ == '__main__':
    pass
