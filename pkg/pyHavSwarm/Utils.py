from __future__ import print_function

# import
## batteries
import os
import sys
import math
import logging
## 3rd party
import numpy as np


logger = logging.getLogger(__name__)


# exceptions
class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit status 1)
    """
    pass

class ScenarioError(RuntimeError):
    """Scenario generation gave up (rejection cap exceeded)
    """
    pass

class KinematicsError(RuntimeError):
    """Kinematic integration produced a physically impossible value (CLI exit status 2)
    """
    pass

class SafetyViolation(RuntimeError):
    """A committed simulation step jackknifed a HAV or overlapped two footprints.
    dump : str, diagnostic dump of the offending world state
    """
    def __init__(self, msg, dump=''):
        RuntimeError.__init__(self, msg)
        self.dump = dump


# functions
def wrap_angle(x):
    """Wrapping angle(s) to (-pi, pi]
    x : float or np.array
    """
    if isinstance(x, np.ndarray):
        y = np.pi - np.mod(np.pi - x, 2.0 * np.pi)
        return np.where(y <= -np.pi, y + 2.0 * np.pi, y)
    y = math.pi - ((math.pi - x) % (2.0 * math.pi))
    # float modulo can round up to the full period
    if y <= -math.pi:
        y += 2.0 * math.pi
    return y

def mod2pi(x):
    """Wrapping angle to [0, 2*pi)
    """
    y = math.fmod(x, 2.0 * math.pi)
    if y < 0:
        y += 2.0 * math.pi
    if y >= 2.0 * math.pi:
        y = 0.0
    return y

def file_written(file_name):
    """Status on writing file
    file_name: string
    """
    print('File written: {}'.format(file_name), file=sys.stderr)

def make_range(x):
    """Integers from a string of comma-delimited values and hyphenated ranges.
    Example: "2,5,10" -> [2, 5, 10]
    Example: "1-3,8" -> [1, 2, 3, 8]
    """
    z = []
    for i in str(x).split(','):
        i = i.strip()
        if i == '':
            continue
        try:
            j = [int(k) for k in i.split('-')]
        except ValueError:
            msg = 'Cannot convert "{}" to an integer or a range'
            raise ValueError(msg.format(i))
        if len(j) == 2:
            z += list(range(j[0], j[1] + 1))
        elif len(j) == 1:
            z += j
        else:
            msg = 'Invalid range: "{}"'
            raise ValueError(msg.format(i))
    return z

def make_float_list(x):
    """Comma-delimited string of numbers to a list of floats.
    Percentages are allowed ("5%,15%" == "0.05,0.15").
    """
    z = []
    for i in str(x).split(','):
        i = i.strip()
        if i == '':
            continue
        try:
            if i.endswith('%'):
                z.append(float(i[:-1]) / 100.0)
            else:
                z.append(float(i))
        except ValueError:
            msg = 'Cannot convert "{}" to a number'
            raise ValueError(msg.format(i))
    if len(z) == 0:
        raise ValueError('No values provided: "{}"'.format(x))
    return z

def backup_file(f):
    """Renaming an existing file to "#<file>.<n>#" (n = first free number).
    Returns: path of the backup, or None if f does not exist
    """
    if not os.path.exists(f):
        logger.warning('Nothing to back up: {}'.format(f))
        return None
    dirname, basename = os.path.split(f)
    count = 1
    while True:
        backup = os.path.join(dirname, '#{}.{}#'.format(basename, count))
        if not os.path.exists(backup):
            break
        count += 1
    logger.info('Backing up {} to {}'.format(f, backup))
    os.rename(f, backup)
    return backup

def same_bytes(file1, file2):
    """Do two files have byte-identical content?
    """
    with open(file1, 'rb') as inF1, open(file2, 'rb') as inF2:
        return inF1.read() == inF2.read()


# main
if __name__ == '__main__':
    pass
