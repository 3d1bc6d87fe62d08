# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Shared definitions: edge labels, exceptions, run settings and logging setup.
"""
import os
import logging

import numpy as np

# Edge labels are stored as small integers everywhere; -1 marks "unassigned".
LABELS = ('a', 'b', 'c')
UNASSIGNED = -1
LABEL_INDEX = {name: i for i, name in enumerate(LABELS)}

# Distance-specific minimum number of timezones in an earth map tiling
MIN_TIMEZONES = {1: 2, 2: 2, 3: 2, 4: 2, 5: 4}

DISTANCES = (1, 2, 3, 4, 5)


def label_index(name):
    """Convert 'a'/'b'/'c' to its integer code"""
    try:
        return LABEL_INDEX[name]
    except KeyError:
        raise InputError('unknown edge label {!r}'.format(name))


def label_string(codes):
    """Convert a sequence of integer codes to a string such as 'aabab'.
    Unassigned positions are printed as '?'.
    """
    return ''.join(LABELS[c] if c >= 0 else '?' for c in codes)


def codes_from_string(s):
    return np.array([label_index(ch) for ch in s], dtype=np.int8)


#==============================================================================
# EXCEPTIONS
#==============================================================================

class PentaglobeError(Exception):
    """Base class for errors raised by pentaglobe"""
    def __init__(self, message):
        super().__init__(message)
        self.message = message


class InputError(PentaglobeError):
    """Invalid pattern, distance, timezone count or subject"""


class InconsistentSeedError(PentaglobeError):
    """A seed labeling violates partial feasibility on some face"""


class SymmetryError(PentaglobeError):
    """A group element does not act on the given host"""


class OutputError(PentaglobeError):
    """An output file could not be written"""


def check_distance(d):
    if d not in DISTANCES:
        raise InputError('distance must be one of 1-5, got {!r}'.format(d))
    return d


def check_timezones(d, n):
    check_distance(d)
    nmin = MIN_TIMEZONES[d]
    if n < nmin:
        raise InputError('distance {:d} needs at least {:d} timezones, got {:d}'.format(
            d, nmin, n))
    return n


#==============================================================================
# SETTINGS
#==============================================================================

class Settings(dict):
    """Run configuration with defaults and environment overrides.

    Values are accessible both as dictionary entries and as attributes.

    Sample usage:

        from pentaglobe.common import Settings
        settings = Settings(max_n=5)
        settings.threads   # from PENTAGLOBE_THREADS, default 1

    """
    defaults = {
        'threads': 1,
        'max_n': 6,
        'max_closed': 20000,
        'oracle_sample': 200,
        'expected': None,
    }
    env = {
        'threads': 'PENTAGLOBE_THREADS',
        'max_n': 'PENTAGLOBE_MAX_N',
        'max_closed': 'PENTAGLOBE_MAX_CLOSED',
        'oracle_sample': 'PENTAGLOBE_ORACLE_SAMPLE',
        'expected': 'PENTAGLOBE_EXPECTED',
    }

    def __init__(self, **kwargs):
        super().__init__(self.defaults)
        for key, var in self.env.items():
            val = os.environ.get(var)
            if val:
                self[key] = self._try_cast(key, val)
        for key, val in kwargs.items():
            if val is None:
                continue
            if key not in self.defaults:
                raise InputError('unknown setting {!r}'.format(key))
            self[key] = val
        if self['threads'] < 1:
            raise InputError('thread count must be positive')

    def _try_cast(self, key, s):
        if self.defaults[key] is None:
            return s
        try:
            return int(s)
        except ValueError:
            raise InputError('{:s} must be an integer, got {!r}'.format(self.env[key], s))

    def __getattr__(self, key):
        try:
            return self[key]
        except KeyError:
            raise AttributeError(key)

    def __repr__(self):
        return '\n'.join('{:>12s} : {!r}'.format(key, val) for key, val in self.items())


def setup_logging(verbosity=0):
    """Send pentaglobe log records to stderr at a level set by verbosity
    (0: warnings, 1: info, 2 or more: debug).
    """
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbosity, 2)]
    logger = logging.getLogger('pentaglobe')
    logger.setLevel(level)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
        logger.addHandler(handler)
    return logger
