# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Classification checks against the published values.

Every expected value lives in data/expected_values.json. Each check returns
one or more rows (name, expected, computed). Above the configured
closed-enumeration cap the oracle rows compare a sample of closed walks
instead of the full enumeration.

Sample usage:

    from pentaglobe.verification import verify_all
    report = verify_all()
    report.passed      # True when every row passes
    report.df          # one row per sub-check

"""
import json
import logging
import os
import time
from collections import Counter
from itertools import islice
from concurrent.futures import ThreadPoolExecutor

import pandas as pd

from pentaglobe.common import DISTANCES, MIN_TIMEZONES, InputError, Settings
from pentaglobe.patterns import PATTERNS
from pentaglobe.mesh import build_earth_map, build_neighborhood_fragment, validate
from pentaglobe.search import (enumerate_completions, is_valid_labeling, naive_completions,
                               orbit_reduce)
from pentaglobe.neighborhood import classify_neighborhoods, interior_b_class, propagation
from pentaglobe.earthmap import (assemble, build_family_graph, classify_families,
                                 closed_labelings, core_tile_types, cycle_labelings, decompose,
                                 earth_map_group, enumerate_parts, enumerate_timezone_tilings,
                                 gluable_meridian_parts, pole_combinations, pole_key,
                                 strip_group, strip_tilings, timezone_specializations)

logger = logging.getLogger(__name__)

default_expected = os.path.join(os.path.dirname(__file__), 'data', 'expected_values.json')

SKIPPED = 'skipped'


def load_expected(fpath=None):
    fpath = fpath or default_expected
    try:
        with open(fpath, encoding='utf-8') as f:
            return json.load(f)
    except OSError as err:
        raise InputError('cannot read expected values {:s}: {:s}'.format(
            str(fpath), err.strerror or str(err)))


class VerificationReport(object):
    """Rows of (check, reference, expected, computed, passed, elapsed, skipped)"""
    columns = ['check', 'reference', 'expected', 'computed', 'passed', 'elapsed', 'skipped']

    def __init__(self, rows=()):
        self.rows = list(rows)

    @property
    def passed(self):
        return all(row['passed'] or row['skipped'] for row in self.rows)

    @property
    def failures(self):
        return [row for row in self.rows if not (row['passed'] or row['skipped'])]

    @property
    def df(self):
        return pd.DataFrame(self.rows, columns=self.columns)

    def to_csv(self, fpath, verbose=True):
        self.df.to_csv(fpath, index=False)
        if verbose:
            print('Wrote', fpath)

    def to_dict(self):
        return {'passed': self.passed, 'checks': self.rows}

    def summary(self):
        """One line per row, e.g. 'PASS  neighborhoods[a4b]  18'"""
        lines = []
        for row in self.rows:
            status = 'SKIP' if row['skipped'] else ('PASS' if row['passed'] else 'FAIL')
            line = '{:4s}  {:s}  {:s}'.format(status, row['check'], str(row['computed']))
            if status == 'FAIL':
                line += '  (expected {!s})'.format(row['expected'])
            lines.append(line)
        npass = sum(row['passed'] for row in self.rows)
        nskip = sum(row['skipped'] for row in self.rows)
        lines.append('{:d} passed, {:d} failed, {:d} skipped'.format(
            npass, len(self.rows) - npass - nskip, nskip))
        return '\n'.join(lines)

    def __repr__(self):
        return self.summary()


def _legal_counts(d, max_n):
    return [n for n in range(MIN_TIMEZONES[d], max_n + 1)]


#==============================================================================
# CHECKS
#==============================================================================

def check_neighborhood_counts(expected, settings):
    rows = []
    for name, count in expected['neighborhood_counts'].items():
        rows.append(('neighborhoods[{:s}]'.format(name), count,
                     len(classify_neighborhoods(name))))
    a4b = classify_neighborhoods('a4b')
    split = Counter(interior_b_class(nt) for nt in a4b)
    rows.append(('a4b interior b split', expected['a4b_interior_b'],
                 {k: split.get(k, 0) for k in expected['a4b_interior_b']}))
    rows.append(('a4b forced without interior b', expected['a4b_forced_without_interior_b'],
                 sum(1 for nt in a4b if interior_b_class(nt) == 'none' and nt.forced_vertices)))
    rows.append(('a4b forced', expected['a4b_forced_total'],
                 sum(1 for nt in a4b if nt.forced_vertices)))
    a2b2c = classify_neighborhoods('a2b2c')
    rows.append(('a2b2c forced', expected['a2b2c_forced'],
                 [list(nt.forced_vertex_names) for nt in a2b2c if nt.forced_vertices]))
    return rows


def check_propagation(expected, settings):
    rows = []
    for name, table in expected['propagation'].items():
        computed = propagation(name).df.to_dict(orient='index')
        rows.append(('propagation[{:s}]'.format(name), table,
                     {str(t): row for t, row in computed.items()}))
    return rows


def check_a3bc_excluded(expected, settings):
    rows = []
    for d in DISTANCES:
        rows.append(('a3bc timezone tilings d={:d}'.format(d), 0,
                     len(strip_tilings(d, 'a3bc'))))
    for d in DISTANCES:
        for n in _legal_counts(d, settings.max_n):
            rows.append(('a3bc closed d={:d} n={:d}'.format(d, n), 0,
                         len(closed_labelings(d, n, 'a3bc'))))
    return rows


def _family_counts(pattern):
    return {str(d): len(classify_families(d, pattern)) for d in DISTANCES}


def _combinations(d, pattern):
    return [pole_combinations(f)[1] for f in classify_families(d, pattern)]


def check_a2b2c_families(expected, settings):
    rows = [('families[a2b2c]', expected['families']['a2b2c'], _family_counts('a2b2c'))]
    distinct = {str(d): len(set(_combinations(d, 'a2b2c'))) == len(_combinations(d, 'a2b2c'))
                for d in DISTANCES}
    rows.append(('a2b2c pole combinations distinct', {str(d): True for d in DISTANCES},
                 distinct))
    names = sorted([pole_key(north, south, label_swap=True)]
                   for north, south in expected['a2b2c_d5_descriptors'])
    d5 = sorted(list(f.descriptor[1]) for f in classify_families(5, 'a2b2c'))
    rows.append(('a2b2c d=5 descriptors', names, d5))
    return rows


def check_a3b2_families(expected, settings):
    rows = [('families[a3b2]', expected['families']['a3b2'], _family_counts('a3b2'))]
    collide = any(len(set(_combinations(d, 'a3b2'))) < len(_combinations(d, 'a3b2'))
                  for d in DISTANCES)
    rows.append(('a3b2 pole combinations collide', True, collide))
    for d in DISTANCES:
        for kind in (('meridian_part', 'core_part') if d == 4 else ('timezone',)):
            direct, special = timezone_specializations(d, kind)
            rows.append(('a3b2 from a2b2c d={:d} {:s}'.format(d, kind), 0,
                         len(direct - special)))
    return rows


def check_a4b_families(expected, settings):
    rows = [('families[a4b]', expected['families']['a4b'], _family_counts('a4b'))]
    parities = {str(d): sorted(f.parity for f in classify_families(d, 'a4b')) for d in DISTANCES}
    rows.append(('a4b family parities', {str(d): [0, 1] for d in DISTANCES}, parities))
    broken = 0
    for d in DISTANCES:
        for kind in (('meridian_part', 'core_part') if d == 4 else ('timezone',)):
            broken += sum(1 for t in strip_tilings(d, 'a4b', kind)
                          if t.left.count('b') % 2 != t.right.count('b') % 2)
    rows.append(('a4b parity preserved', 0, broken))
    return rows


def check_a4b_raw_counts(expected, settings):
    rows = []
    for d, pairs in expected['a4b_raw'].items():
        cat = enumerate_timezone_tilings(int(d), 'a4b')
        computed = {key: cat.raw_count(tuple(key.split('|'))) for key in pairs}
        rows.append(('a4b raw d={:s}'.format(d), pairs, computed))
    meridian, core = enumerate_parts('a4b')
    pairs = expected['a4b_d4_core_raw']
    rows.append(('a4b raw d=4 core parts', pairs,
                 {key: core.raw_count(tuple(key.split('|'))) for key in pairs}))

    reps = orbit_reduce([t.labeling for t in gluable_meridian_parts('a4b')],
                        strip_group(4, 'meridian_part'))
    left = list(meridian.template.left_meridian)
    parity = Counter('odd' if list(rep.labeling.labels[left]).count(1) % 2 else 'even'
                     for rep in reps)
    rows.append(('a4b d=4 meridian representatives', expected['a4b_d4_meridian_representatives'],
                 {k: parity.get(k, 0) for k in ('even', 'odd')}))

    fg = build_family_graph(5, 'a4b')
    even = fg.subgraph(0)
    rows.append(('a4b d=5 even signatures', expected['a4b_d5_even_nodes'],
                 sorted({sig for sig, _ in even.nodes})))
    rows.append(('a4b d=5 aaaaa loops', expected['a4b_d5_aaaaa_loops'],
                 len(fg.loops('aaaaa'))))
    repeated = sorted('{:s}->{:s}'.format(u[0], v[0]) for u, v in set(even.edges())
                      if u != v and even.number_of_edges(u, v) > 1)
    rows.append(('a4b d=5 even unique by boundary', [], repeated))
    rows.append(('a4b d=5 aaaba out-degree', expected['a4b_d5_aaaba_out_degree'],
                 fg.out_degree('aaaba')))
    return rows


def check_orbit_bookkeeping(expected, settings):
    _, core = enumerate_parts('a4b')
    reps = core[('aaaa', 'aaaa')]
    return [('a4b aaaa|aaaa multiplicities', expected['a4b_d4_core_multiplicities'],
             sorted(rep.multiplicity for rep in reps))]


def _multiset(labelings, group):
    return sorted((rep.labeling.labels.tolist(), rep.multiplicity)
                  for rep in orbit_reduce(labelings, group))


def sampled_oracle(d, n, pattern, size):
    """Disagreements between the first `size` closed walks of the family
    graph and the first `size` labelings found by direct search on the
    closed earth map.

    A walk agrees when its assembly is a valid labeling that cuts back into
    the same walk; a direct labeling agrees when it cuts into a closed walk.
    """
    fg = build_family_graph(d, pattern)
    em = build_earth_map(d, n)
    bad = 0
    for walk in islice(fg.closed_walks(n), size):
        labeling = assemble(em, [fg.arrows[k] for k in walk], fg.pattern)
        if not is_valid_labeling(labeling) or decompose(labeling, fg) != walk:
            logger.warning('walk %s of d=%d n=%d %s disagrees with the closed map', walk,
                           d, n, fg.pattern.name)
            bad += 1
    for labeling in enumerate_completions(em, fg.pattern, limit=size):
        if not fg.is_closed_walk(decompose(labeling, fg)):
            logger.warning('closed d=%d n=%d %s labeling is not a closed walk', d, n,
                           fg.pattern.name)
            bad += 1
    return bad


def check_oracle_equivalence(expected, settings):
    rows = []
    for pattern in PATTERNS.values():
        for d in DISTANCES:
            fg = build_family_graph(d, pattern)
            for n in (MIN_TIMEZONES[d], MIN_TIMEZONES[d] + 1):
                name = 'closed oracle {:s} d={:d} n={:d}'.format(pattern.name, d, n)
                if fg.count_closed(n) > settings.max_closed:
                    rows.append((name + ' sampled', 0,
                                 sampled_oracle(d, n, pattern, settings.oracle_sample)))
                    continue
                group = earth_map_group(d, n, pattern)
                direct = _multiset(closed_labelings(d, n, pattern), group)
                cycles = _multiset(cycle_labelings(d, n, pattern), group)
                rows.append((name, len(direct), len(cycles) if cycles == direct else
                             'differs ({:d} orbits)'.format(len(cycles))))
    return rows


def check_structure(expected, settings):
    rows = []
    for d in DISTANCES:
        for n in _legal_counts(d, settings.max_n):
            report = validate(build_earth_map(d, n))
            rows.append(('earth map d={:d} n={:d}'.format(d, n), [],
                         [row['check'] for row in report.failures]))
    return rows


def check_search_oracle(expected, settings):
    frag = build_neighborhood_fragment()
    rows = []
    for pattern in PATTERNS.values():
        fast = sorted(lab.labels.tolist() for lab in enumerate_completions(frag, pattern))
        slow = sorted(lab.labels.tolist() for lab in naive_completions(frag, pattern))
        rows.append(('search oracle {:s}'.format(pattern.name), len(slow),
                     len(fast) if fast == slow else 'differs ({:d})'.format(len(fast))))
    return rows


def check_a3b2_core_tiles(expected, settings):
    fg = build_family_graph(5, 'a3b2')
    rows = []
    for n in _legal_counts(5, settings.max_n):
        name = 'a3b2 d=5 n={:d} core tiles'.format(n)
        if fg.count_closed(n) > settings.max_closed:
            rows.append((name, None, SKIPPED))
            continue
        types = set()
        for labeling in cycle_labelings(5, n, 'a3b2'):
            types.update(core_tile_types(labeling).values())
        rows.append((name, [expected['a3b2_d5_core_type']] if types else [], sorted(types)))
    return rows


# Fixed report order
CHECKS = [
    ('neighborhood counts', 'neighborhood lemma', check_neighborhood_counts),
    ('propagation', 'propagation tables', check_propagation),
    ('a3bc exclusion', 'no a3bc earth maps', check_a3bc_excluded),
    ('a2b2c families', 'a2b2c classification', check_a2b2c_families),
    ('a3b2 families', 'a3b2 classification', check_a3b2_families),
    ('a4b families', 'a4b classification', check_a4b_families),
    ('a4b raw counts', 'a4b timezone tilings', check_a4b_raw_counts),
    ('orbit bookkeeping', 'a4b core part orbits', check_orbit_bookkeeping),
    ('oracle equivalence', 'closed enumeration vs family graph', check_oracle_equivalence),
    ('structure', 'earth map invariants', check_structure),
    ('search oracle', 'backtracking vs naive search', check_search_oracle),
    ('a3b2 core tiles', 'distance 5 a3b2 core tiles', check_a3b2_core_tiles),
]


def _run_check(entry, expected, settings):
    title, reference, func = entry
    tstart = time.time()
    try:
        results = func(expected, settings)
    except KeyError as err:
        raise InputError('expected values lack {!s} needed by {:s}'.format(err, title))
    elapsed = time.time() - tstart
    logger.info('%s: %d rows in %.1f s', title, len(results), elapsed)
    rows = []
    for name, exp, computed in results:
        skipped = computed == SKIPPED
        rows.append({
            'check': name,
            'reference': reference,
            'expected': exp,
            'computed': computed,
            'passed': (not skipped) and computed == exp,
            'elapsed': round(elapsed, 3),
            'skipped': skipped,
        })
    return rows


def verify_all(settings=None, checks=None):
    """Run the checks (all by default) and collect a VerificationReport.

    Checks run on `settings.threads` worker threads; rows keep the order of
    CHECKS regardless of completion order.
    """
    settings = settings or Settings()
    expected = load_expected(settings.expected)
    entries = [c for c in CHECKS if checks is None or c[0] in checks]
    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        futures = [pool.submit(_run_check, entry, expected, settings) for entry in entries]
        rows = [row for fut in futures for row in fut.result()]
    return VerificationReport(rows)
