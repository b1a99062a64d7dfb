from __future__ import print_function

# import
## batteries
import collections
## 3rd party
import numpy as np
## package
from pyHavSwarm import Vehicle

#-- notes on context maps --#
# A context map is an (n_v, n_phi) array indexed [speed, steer].
# Speeds ascend from vmin to vmax; steers ascend from -phi_max to +phi_max.
# The middle steer column is exactly 0 (n_phi is odd).

KINDS = ('interest', 'danger')
CUBIC_MIN_POINTS = 4


class ActionGrid(collections.namedtuple('ActionGrid', ['speeds', 'steers'])):
    """Discrete (speed, steer) action grid.
    speeds : np.array (n_v,), evenly spaced over [vmin, vmax]
    steers : np.array (n_phi,), evenly spaced over [-phi_max, phi_max]
    """
    __slots__ = ()

    def __new__(cls, speeds, steers):
        speeds = np.asarray(speeds, dtype=float)
        steers = np.asarray(steers, dtype=float)
        if speeds.ndim != 1 or speeds.shape[0] < 2:
            raise ValueError('The speed axis needs at least 2 values')
        if steers.ndim != 1 or steers.shape[0] < 3 or steers.shape[0] % 2 == 0:
            msg = 'The steering axis needs an odd number (>= 3) of values; got {}'
            raise ValueError(msg.format(steers.shape[0]))
        if np.any(np.diff(speeds) <= 0) or np.any(np.diff(steers) <= 0):
            raise ValueError('Grid axes must be strictly increasing')
        if steers[steers.shape[0] // 2] != 0:
            raise ValueError('The middle steering value must be 0')
        return super(ActionGrid, cls).__new__(cls, speeds, steers)

    @classmethod
    def from_limits(cls, min_speed, max_speed, max_steer, n_speeds=5, n_steers=5):
        speeds = np.linspace(min_speed, max_speed, int(n_speeds))
        steers = np.linspace(-max_steer, max_steer, int(n_steers))
        # linspace may leave a rounding residue at the center
        steers[steers.shape[0] // 2] = 0.0
        return cls(speeds, steers)

    @classmethod
    def for_hav(cls, config, n_speeds=5, n_steers=5):
        return cls.from_limits(config.min_speed, config.max_speed, config.max_steer,
                               n_speeds, n_steers)

    @property
    def shape(self):
        return (self.speeds.shape[0], self.steers.shape[0])

    @property
    def zero_steer_index(self):
        return self.steers.shape[0] // 2

    @property
    def min_speed(self):
        return float(self.speeds[0])

    @property
    def max_speed(self):
        return float(self.speeds[-1])

    @property
    def max_steer(self):
        return float(self.steers[-1])

    def actions(self):
        """Flat enumeration of all grid actions in row-major [speed, steer] order.
        Returns: (speeds (n,), steers (n,))
        """
        v, phi = np.meshgrid(self.speeds, self.steers, indexing='ij')
        return v.ravel(), phi.ravel()

    def action(self, i_v, i_phi):
        return Vehicle.Action(float(self.speeds[i_v]), float(self.steers[i_phi]))


class ContextMap(collections.namedtuple('ContextMap', ['kind', 'values'])):
    """Grid of interest or danger values over an ActionGrid
    """
    __slots__ = ()

    def __new__(cls, kind, values):
        if kind not in KINDS:
            msg = 'Context map kind must be one of {}; got "{}"'
            raise ValueError(msg.format(KINDS, kind))
        values = np.asarray(values, dtype=float)
        if values.ndim != 2:
            raise ValueError('Context map values must be a 2D array')
        return super(ContextMap, cls).__new__(cls, kind, values)

    @classmethod
    def interest(cls, values):
        return cls('interest', values)

    @classmethod
    def danger(cls, values):
        return cls('danger', values)


class MergeParams(collections.namedtuple('MergeParams',
                                         ['danger_threshold', 'interp_shape'])):
    """Merging and selection settings.
    danger_threshold : epsilon_D
    interp_shape : (n_v_int, n_phi_int) upsampled resolution
    """
    __slots__ = ()

    def __new__(cls, danger_threshold=0.1, interp_shape=(20, 40)):
        if not danger_threshold > 0:
            msg = 'Danger threshold must be > 0; got {}'
            raise ValueError(msg.format(danger_threshold))
        interp_shape = tuple(int(x) for x in interp_shape)
        if len(interp_shape) != 2 or min(interp_shape) < 2:
            msg = 'Interpolation shape must be 2 values >= 2; got {}'
            raise ValueError(msg.format(interp_shape))
        return super(MergeParams, cls).__new__(cls, float(danger_threshold), interp_shape)


Selection = collections.namedtuple('Selection', ['action', 'block', 'filtered', 'stand_still'])
Selection.__doc__ = """Result of merging: selected action, block mask, filtered interest
and whether the stand-still fallback was taken"""


# interpolation
def _source_coords(n_src, n_dst):
    """Positions of the target nodes in source index units
    """
    if n_dst == 1:
        return np.zeros(1)
    return np.arange(n_dst) * ((n_src - 1) / float(n_dst - 1))

def linear_weights(n_src, n_dst):
    """Interpolation matrix W (n_dst, n_src) so that W @ y is the linear interpolant
    """
    W = np.zeros((n_dst, n_src))
    if n_src == 1:
        W[:, 0] = 1.0
        return W
    u = _source_coords(n_src, n_dst)
    k = np.minimum(np.floor(u).astype(int), n_src - 2)
    t = u - k
    rows = np.arange(n_dst)
    W[rows, k] += 1.0 - t
    W[rows, k + 1] += t
    return W

def catmull_rom_weights(n_src, n_dst):
    """Interpolation matrix W (n_dst, n_src) of the uniform Catmull-Rom spline.
    Ends are clamped: the missing outer neighbor repeats the end value.
    """
    if n_src < 2:
        return linear_weights(n_src, n_dst)
    W = np.zeros((n_dst, n_src))
    u = _source_coords(n_src, n_dst)
    k = np.minimum(np.floor(u).astype(int), n_src - 2)
    t = u - k
    t2 = t * t
    t3 = t2 * t
    coef = [0.5 * (-t + 2 * t2 - t3),
            0.5 * (2 - 5 * t2 + 3 * t3),
            0.5 * (t + 4 * t2 - 3 * t3),
            0.5 * (-t2 + t3)]
    rows = np.arange(n_dst)
    for off, c in zip((-1, 0, 1, 2), coef):
        idx = np.clip(k + off, 0, n_src - 1)
        np.add.at(W, (rows, idx), c)
    return W

def interp_weights(grid_shape, target_shape):
    """Separable weight matrices (W_v, W_phi) for the given shapes
    """
    n_v, n_phi = grid_shape
    if n_v >= CUBIC_MIN_POINTS and n_phi >= CUBIC_MIN_POINTS:
        f = catmull_rom_weights
    else:
        f = linear_weights
    return f(n_v, target_shape[0]), f(n_phi, target_shape[1])

def upsample(values, grid_shape, target_shape):
    """Upsampling a context map (Catmull-Rom if both axes have >= 4 points, else bilinear).
    values : np.array grid_shape
    Returns: np.array target_shape
    """
    values = np.asarray(values, dtype=float)
    if tuple(values.shape) != tuple(grid_shape):
        msg = 'Values shape {} does not match grid shape {}'
        raise ValueError(msg.format(values.shape, grid_shape))
    if target_shape[0] < grid_shape[0] or target_shape[1] < grid_shape[1]:
        msg = 'Target shape {} is smaller than the grid shape {}'
        raise ValueError(msg.format(target_shape, grid_shape))
    W_v, W_phi = interp_weights(grid_shape, target_shape)
    return W_v @ values @ W_phi.T

def nearest_source_index(n_src, n_dst):
    """Source node closest to each target node
    """
    return np.rint(_source_coords(n_src, n_dst)).astype(int)


# merging
def _check_shape(cmap, grid, kind):
    if cmap.kind != kind:
        msg = 'Expected a {} map; got a {} map'
        raise ValueError(msg.format(kind, cmap.kind))
    if tuple(cmap.values.shape) != grid.shape:
        msg = 'Context map shape {} does not match the action grid {}'
        raise ValueError(msg.format(cmap.values.shape, grid.shape))

def _as_weighted(interest_maps):
    for x in interest_maps:
        if isinstance(x, ContextMap):
            yield x, 1.0
        else:
            cmap, w = x
            if w < 0:
                msg = 'Interest weights must be >= 0; got {}'
                raise ValueError(msg.format(w))
            yield cmap, float(w)

def block_mask(danger_maps, grid, params):
    """OR over danger maps of (value > epsilon_D)
    """
    B = np.zeros(grid.shape, dtype=bool)
    for cmap in danger_maps:
        _check_shape(cmap, grid, 'danger')
        B |= cmap.values > params.danger_threshold
    return B

def merge_interest(interest_maps, grid):
    """Weighted sum of interest maps.
    interest_maps : iterable of ContextMap or (ContextMap, weight)
    """
    S = np.zeros(grid.shape)
    for cmap, w in _as_weighted(interest_maps):
        _check_shape(cmap, grid, 'interest')
        S += w * cmap.values
    return S

def index_to_action(p, q, grid, target_shape):
    """Upsampled node (p, q) to a continuous action (0-based indices)
    """
    v = grid.min_speed + p / float(target_shape[0] - 1) * (grid.max_speed - grid.min_speed)
    phi = -grid.max_steer + q / float(target_shape[1] - 1) * (2.0 * grid.max_steer)
    return Vehicle.Action(float(v), float(phi))

def argmax_upsampled(up, grid, target_shape):
    """Argmax over an upsampled map; ties prefer higher speed, then smaller |phi|,
    then the lower steering index.
    Returns: (p, q) or None if every entry is -inf
    """
    best = np.max(up)
    if not np.isfinite(best):
        return None
    p, q = np.nonzero(up == best)
    if p.shape[0] == 1:
        return int(p[0]), int(q[0])
    phi_abs = np.abs(-grid.max_steer + q / float(target_shape[1] - 1) * 2.0 * grid.max_steer)
    order = np.lexsort((q, phi_abs, -p))
    return int(p[order[0]]), int(q[order[0]])

def select(filtered, block, grid, params):
    """Interpolation-based selection over a filtered interest map.
    Upsampled nodes whose nearest source cell is blocked are never selected;
    a non-positive best value falls back to standing still.
    Returns: (Action, stand_still flag)
    """
    if np.all(block):
        return Vehicle.STAND_STILL, True
    target = params.interp_shape
    up = upsample(filtered, grid.shape, target)
    iv = nearest_source_index(grid.shape[0], target[0])
    iphi = nearest_source_index(grid.shape[1], target[1])
    up = np.where(block[np.ix_(iv, iphi)], -np.inf, up)
    pq = argmax_upsampled(up, grid, target)
    if pq is None or not up[pq] > 0:
        return Vehicle.STAND_STILL, True
    return index_to_action(pq[0], pq[1], grid, target), False

def merge(interest_maps, danger_maps, grid, params):
    """Danger masking, weighted interest merge and action selection.
    Returns: Selection
    """
    interest_maps = list(interest_maps)
    danger_maps = list(danger_maps)
    B = block_mask(danger_maps, grid, params)
    S = merge_interest(interest_maps, grid)
    F = np.where(B, 0.0, S)
    action, still = select(F, B, grid, params)
    return Selection(action, B, F, still)

def merge_and_select(interest_maps, danger_maps, grid, params):
    """Context map merging and action selection.
    interest_maps : iterable of ContextMap or (ContextMap, weight)
    danger_maps : iterable of ContextMap
    grid : ActionGrid
    params : MergeParams
    Returns: Vehicle.Action
    """
    return merge(interest_maps, danger_maps, grid, params).action

def best_grid_action(filtered, block, grid):
    """Best unblocked discrete action with positive interest (same tie-break), or None
    """
    vals = np.where(block, -np.inf, filtered)
    best = np.max(vals)
    if not (np.isfinite(best) and best > 0):
        return None
    p, q = np.nonzero(vals == best)
    order = np.lexsort((q, np.abs(grid.steers[q]), -p))
    return grid.action(int(p[order[0]]), int(q[order[0]]))


# main
if __name__ == '__main__':
    pass
