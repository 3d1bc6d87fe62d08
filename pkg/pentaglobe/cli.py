# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Command-line front end.

USAGE: pentaglobe <command> [options]

    neighborhoods --pattern P [--format text|json|svg] [--out PATH]
    propagation   --pattern P [--format text|json|csv] [--out PATH]
    timezones     --distance D --pattern P [--up-to-symmetry] [--format text|json|csv]
    families      --distance D --pattern P [--format text|json|dot]
    closed-enum   --distance D --timezones N --pattern P [--format text|json]
    verify-all    [--max-n N] [--format text|json|csv]
    render        --pattern P [--distance D] --out FILE.svg [ITEM]

Exit status is 0 on success, 1 when verify-all finds a mismatch, 2 for usage
errors and 3 when an output file cannot be written.
"""
import argparse
import logging
import os
import sys

from pentaglobe.common import (PentaglobeError, InputError, OutputError, Settings,
                               setup_logging)
from pentaglobe.patterns import get_pattern
from pentaglobe.io import to_json, family_graph_dot

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_OUTPUT = 3

COMMANDS = ('neighborhoods', 'propagation', 'timezones', 'families', 'closed-enum',
            'verify-all', 'render')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='pentaglobe',
        description='Enumerate edge-congruent pentagonal earth map tilings')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress to stderr (-vv for debug output)')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    def add(name, helpstr, formats=('text', 'json')):
        p = sub.add_parser(name, help=helpstr)
        p.add_argument('--format', choices=formats, default=formats[0])
        p.add_argument('--out', default=None, help='output file (directory for svg)')
        return p

    p = add('neighborhoods', 'neighborhood tilings of one pattern', ('text', 'json', 'svg'))
    p.add_argument('--pattern', required=True)

    p = add('propagation', 'propagation table of one pattern', ('text', 'json', 'csv'))
    p.add_argument('--pattern', required=True)

    p = add('timezones', 'timezone tilings by meridian signatures', ('text', 'json', 'csv'))
    p.add_argument('--pattern', required=True)
    p.add_argument('--distance', type=int, required=True)
    p.add_argument('--up-to-symmetry', action='store_true',
                   help='list symmetry representatives instead of raw tilings')

    p = add('families', 'families of earth map tilings', ('text', 'json', 'dot'))
    p.add_argument('--pattern', required=True)
    p.add_argument('--distance', type=int, required=True)

    p = add('closed-enum', 'closed earth map tilings by direct search')
    p.add_argument('--pattern', required=True)
    p.add_argument('--distance', type=int, required=True)
    p.add_argument('--timezones', type=int, required=True)
    p.add_argument('--up-to-symmetry', action='store_true')

    p = add('verify-all', 'run every classification check', ('text', 'json', 'csv'))
    p.add_argument('--max-n', type=int, default=None,
                   help='largest timezone count enumerated directly')

    p = sub.add_parser('render', help='SVG drawing of a tiling or family graph')
    p.add_argument('--pattern', required=True)
    p.add_argument('--distance', type=int, default=None)
    p.add_argument('--out', required=True)
    p.add_argument('item', nargs='?', default=None,
                   help='neighborhood type, or timezone tiling index with --distance; '
                        'the family graph is drawn when omitted with --distance')
    return parser


def _emit(text, fpath=None):
    if fpath is None:
        sys.stdout.write(text)
        return
    try:
        with open(fpath, 'w', encoding='utf-8') as f:
            f.write(text)
    except OSError as err:
        raise OutputError('cannot write {:s}: {:s}'.format(str(fpath), err.strerror or str(err)))
    logger.info('wrote %s', fpath)


#==============================================================================
# COMMANDS
#==============================================================================

def cmd_neighborhoods(args, settings):
    from pentaglobe.neighborhood import classify_neighborhoods
    tilings = classify_neighborhoods(args.pattern)
    if args.format == 'json':
        return _emit(to_json(list(tilings)), args.out)
    if args.format == 'svg':
        from pentaglobe.plotting import render
        if args.out is None:
            raise InputError('--format svg needs an --out directory')
        try:
            os.makedirs(args.out, exist_ok=True)
        except OSError as err:
            raise OutputError('cannot create {:s}: {:s}'.format(args.out, err.strerror))
        for nt in tilings:
            fname = '{:s}_{:s}.svg'.format(nt.pattern.name, nt.type_id or str(nt.index))
            render(nt, os.path.join(args.out, fname), verbose=False)
        return
    lines = ['{:d} tilings'.format(len(tilings))]
    for nt in tilings:
        forced = ' '.join(nt.forced_vertex_names) or 'none'
        lines.append('type {:>4s}  multiplicity {:2d}  forced vertices: {:s}'.format(
            nt.type_id or '?', nt.multiplicity, forced))
    _emit('\n'.join(lines) + '\n', args.out)


def cmd_propagation(args, settings):
    from pentaglobe.neighborhood import propagation
    table = propagation(args.pattern)
    if args.format == 'json':
        return _emit(to_json(table), args.out)
    if args.format == 'csv':
        return _emit(table.df.to_csv(), args.out)
    _emit(table.df.to_string() + '\n', args.out)


def cmd_timezones(args, settings):
    from pentaglobe.earthmap import enumerate_timezone_tilings
    cat = enumerate_timezone_tilings(args.distance, args.pattern)
    if args.format == 'csv':
        return _emit(cat.df.to_csv(index=False), args.out)
    if args.format == 'json':
        out = []
        for (left, right), tilings in cat.raw.items():
            entry = {'left': left, 'right': right, 'raw': len(tilings)}
            if args.up_to_symmetry:
                entry['tilings'] = cat[(left, right)]
            else:
                entry['tilings'] = tilings
            out.append(entry)
        return _emit(to_json(out), args.out)
    lines = ['{:d} tilings, {:d} signature pairs'.format(cat.total, len(cat))]
    for (left, right), tilings in cat.raw.items():
        line = '{:s} -> {:s}  {:d}'.format(left, right, len(tilings))
        if args.up_to_symmetry:
            mults = [rep.multiplicity for rep in cat[(left, right)]]
            line += '  ({:d} up to symmetry: {:s})'.format(len(mults),
                                                          ' '.join(str(m) for m in mults))
        lines.append(line)
    _emit('\n'.join(lines) + '\n', args.out)


def cmd_families(args, settings):
    from pentaglobe.earthmap import build_family_graph, classify_families
    if args.format == 'dot':
        return _emit(family_graph_dot(build_family_graph(args.distance, args.pattern)), args.out)
    families = classify_families(args.distance, args.pattern)
    if args.format == 'json':
        return _emit(to_json(list(families)), args.out)
    lines = ['{:d} families'.format(len(families))]
    for fam in families:
        parity = {0: 'even', 1: 'odd'}.get(fam.parity, '-')
        poles = ' '.join(fam.descriptor[1])
        lines.append('family {:d}  {:s}  {:4s}  {:d} arrows  poles {:s}'.format(
            fam.id, fam.representative, parity, len(fam.arrows), poles))
    _emit('\n'.join(lines) + '\n', args.out)


def cmd_closed_enum(args, settings):
    from pentaglobe.earthmap import closed_labelings, enumerate_closed
    raw = closed_labelings(args.distance, args.timezones, get_pattern(args.pattern))
    reps = enumerate_closed(args.distance, args.timezones, args.pattern)
    if args.format == 'json':
        return _emit(to_json(reps if args.up_to_symmetry else list(raw)), args.out)
    lines = ['{:d} tilings, {:d} up to symmetry'.format(len(raw), len(reps))]
    if args.up_to_symmetry:
        lines += ['{!s}  x{:d}'.format(rep.labeling, rep.multiplicity) for rep in reps]
    _emit('\n'.join(lines) + '\n', args.out)


def cmd_verify_all(args, settings):
    from pentaglobe.verification import verify_all
    report = verify_all(settings)
    if args.format == 'json':
        _emit(to_json(report), args.out)
    elif args.format == 'csv':
        _emit(report.df.to_csv(index=False), args.out)
    else:
        _emit(report.summary() + '\n', args.out)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_render(args, settings):
    from pentaglobe.plotting import render
    if args.distance is None:
        from pentaglobe.neighborhood import classify_neighborhoods, by_type
        tilings = classify_neighborhoods(args.pattern)
        if args.item is None:
            subject = tilings[0]
        else:
            subject = by_type(tilings).get(args.item)
            if subject is None:
                raise InputError('{:s} has no neighborhood type {!r}'.format(
                    get_pattern(args.pattern).name, args.item))
    elif args.item is None:
        from pentaglobe.earthmap import build_family_graph
        subject = build_family_graph(args.distance, args.pattern)
    else:
        from pentaglobe.earthmap import strip_tilings
        tilings = strip_tilings(args.distance, get_pattern(args.pattern))
        try:
            subject = tilings[int(args.item)]
        except (ValueError, IndexError):
            raise InputError('no timezone tiling {!r} among {:d}'.format(args.item, len(tilings)))
    render(subject, args.out, verbose=False)


HANDLERS = {
    'neighborhoods': cmd_neighborhoods,
    'propagation': cmd_propagation,
    'timezones': cmd_timezones,
    'families': cmd_families,
    'closed-enum': cmd_closed_enum,
    'verify-all': cmd_verify_all,
    'render': cmd_render,
}


def run(argv=None):
    """Execute one command and return its exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_OK
    setup_logging(args.verbose)
    try:
        settings = Settings(max_n=getattr(args, 'max_n', None))
        if hasattr(args, 'pattern'):
            get_pattern(args.pattern)
        status = HANDLERS[args.command](args, settings)
    except OutputError as err:
        print('pentaglobe: error: {:s}'.format(err.message), file=sys.stderr)
        return EXIT_OUTPUT
    except PentaglobeError as err:
        print('pentaglobe: error: {:s}'.format(err.message), file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print('pentaglobe: error: {!s}'.format(err), file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK if status is None else status


def main():
    sys.exit(run())
