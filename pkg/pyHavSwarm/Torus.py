from __future__ import print_function

# import
## batteries
import math
import itertools
import collections
## 3rd party
import numpy as np
## package
from pyHavSwarm import Utils


class TorusWorld(collections.namedtuple('TorusWorld', ['edge_length'])):
    """Square world with periodic boundaries in x and y.
    edge_length : d_torus (m)
    """
    __slots__ = ()

    def __new__(cls, edge_length):
        if not edge_length > 0:
            msg = 'Torus edge length must be > 0; got {}'
            raise ValueError(msg.format(edge_length))
        return super(TorusWorld, cls).__new__(cls, float(edge_length))


class Pose(collections.namedtuple('Pose', ['x', 'y', 'heading'])):
    """Position of a truck rear axle plus truck heading
    """
    __slots__ = ()

    def __new__(cls, x, y, heading):
        return super(Pose, cls).__new__(cls, float(x), float(y),
                                        Utils.wrap_angle(float(heading)))

    @property
    def position(self):
        return np.array([self.x, self.y])


# functions
def wrap(point, world):
    """Mapping coordinates into [0, d_torus)
    point : array-like (..., 2)
    """
    L = world.edge_length
    p = np.mod(np.asarray(point, dtype=float), L)
    # np.mod of a tiny negative number rounds up to L
    return np.where(p >= L, 0.0, p)

def wrap_pose(pose, world):
    x, y = wrap([pose.x, pose.y], world)
    return Pose(x, y, pose.heading)

def rel_vector(frm, to, world):
    """Minimal-image displacement from `frm` to `to`.
    Each component lies in [-d_torus/2, d_torus/2); exact ties resolve
    to the negative representative.
    frm, to : array-like (..., 2), broadcastable
    """
    d = np.asarray(to, dtype=float) - np.asarray(frm, dtype=float)
    return min_image(d, world)

def min_image(d, world):
    """Minimal image of raw displacement vectors d (..., 2)
    """
    L = world.edge_length
    r = np.mod(np.asarray(d, dtype=float) + 0.5 * L, L) - 0.5 * L
    return np.where(r >= 0.5 * L, r - L, r)

def torus_distance(frm, to, world):
    """Shortest distance between points under periodic boundaries
    """
    return np.linalg.norm(rel_vector(frm, to, world), axis=-1)

def min_image_oracle(frm, to, world):
    """Brute force: shortest of the 9 periodic images (used to validate rel_vector)
    """
    L = world.edge_length
    frm = np.asarray(frm, dtype=float)
    to = np.asarray(to, dtype=float)
    best = None
    for i, j in itertools.product([-1, 0, 1], repeat=2):
        d = to + np.array([i * L, j * L]) - frm
        n = math.hypot(d[0], d[1])
        if best is None or n < best[0]:
            best = (n, d)
    return best[1]

def potential_collision(center_i, d_i, center_h, d_h, world):
    """Do two footprint circles overlap (touching included)?
    center_i, center_h : (2,) circle centers (truck rear axles)
    d_i, d_h : footprint radii
    """
    if d_i <= 0 or d_h <= 0:
        raise ValueError('Footprint radii must be > 0')
    return bool(torus_distance(center_i, center_h, world) <= d_i + d_h)

def overlapping_pairs(centers, radii, world):
    """All pairs (i, h), i < h, whose footprints overlap
    centers : np.array (n, 2)
    radii : np.array (n,)
    """
    centers = np.asarray(centers, dtype=float)
    radii = np.asarray(radii, dtype=float)
    n = centers.shape[0]
    if n < 2:
        return []
    dist = torus_distance(centers[:, None, :], centers[None, :, :], world)
    limit = radii[:, None] + radii[None, :]
    i, h = np.nonzero(np.triu(dist <= limit, k=1))
    return list(zip(i.tolist(), h.tolist()))


# main
if __name__ == '__main__':
    pass
