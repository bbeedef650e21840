"""
tau-loop - exact representation theory of loop Affine-Virasoro algebras.
Copyright (C) 2026 the tau-loop developers

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published
by the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful, but
WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""
import logging
import sys

import yaml

from tau_loop._version import version_stamp, runtime_info
from tau_loop.central_ops import (COMMUTATOR, NORMAL_ORDERED, OperatorSpec, centrality_report, omega_apply,
                                  t_apply, t_apply_commutator, vir_bracket_report)
from tau_loop.comm_algebra import (algebra_from_spec, crt_split, ideal_generated, quotient, radical, validate,
                                   zero_ideal)
from tau_loop.exact_linear import SparseVec
from tau_loop.exceptions import TauLoopException, InputError
from tau_loop.io_utils import (format_scalar, load_spec_file, make_report, parse_scalar, parse_scalar_list,
                               to_serializable, write_to_stream)
from tau_loop.selftest import basis_pairs, evaluation_example, run_selftest
from tau_loop.tau_algebra import COCYCLES, BiDegree, TauSymbol, parse_symbol
from tau_loop.weight_modules import (PsiFunctional, check_cofinite_annihilation, dominant_integral,
                                     format_dimension_table, irreducible, nilpotency_probe, pbw_dimension_oracle,
                                     singular_vectors, verma)

__log_name__ = 'tau-loop.log'

_installed_handlers = []


def init_log(verbose, log_file=True):
    """
    Initialise the runtime logger for both console and file output.

    :param verbose: set console verbosity level.
    :param log_file: also append to the log file
    :return: logger
    """
    logging.captureWarnings(True)
    logger = logging.getLogger('main')

    # root log listens to everything
    root = logging.getLogger('')
    root.setLevel(logging.DEBUG)

    # repeated invocations in one process replace the previous handlers
    while _installed_handlers:
        root.removeHandler(_installed_handlers.pop())

    # log message format
    formatter = logging.Formatter(fmt='%(levelname)-8s | %(asctime)s | %(name)7s | %(message)s')

    # Runtime console listens to INFO by default
    ch = logging.StreamHandler()
    if verbose:
        ch.setLevel(logging.DEBUG)
    else:
        ch.setLevel(logging.INFO)
    ch.setFormatter(formatter)
    root.addHandler(ch)
    _installed_handlers.append(ch)

    if log_file:
        fh = logging.FileHandler(__log_name__, mode='a')
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(formatter)
        root.addHandler(fh)
        _installed_handlers.append(fh)

    return logger


def _int(value, field, source=None):
    try:
        if isinstance(value, bool):
            raise ValueError()
        return int(value)
    except (TypeError, ValueError):
        raise InputError(field, 'expected an integer, found [{}]'.format(value), source)


def _int_pair(value, field, source=None):
    items = value.split(',') if isinstance(value, str) else value
    if not isinstance(items, (list, tuple)) or len(items) != 2:
        raise InputError(field, 'expected two integers "x,y", found [{}]'.format(value), source)
    return tuple(_int(x, '{}[{}]'.format(field, i), source) for i, x in enumerate(items))


def _coords(value, field, algebra, source=None):
    """An algebra element from a list of coordinates."""
    values = parse_scalar_list(value, field, source)
    if len(values) != algebra.dim:
        raise InputError(field, 'expected {} coordinates for {}'.format(algebra.dim, algebra.name), source)
    return SparseVec(enumerate(values))


def _psi_from_text(text, index):
    spec = {}
    for item in text.split(','):
        if not item.strip():
            continue
        if '=' not in item:
            raise InputError('psi[{}]'.format(index), 'expected key=value items, found [{}]'.format(item))
        k, v = item.split('=', 1)
        spec[k.strip()] = v.strip()
    return spec


class JobSpec(object):
    """
    A fully parsed job: the command, the algebra, psi choices, box and command parameters.
    Construction parses every field so that no command runs on partially valid input.
    """

    PARAMS = ('j', 'k', 'a', 'b', 'realization', 'window', 'labels', 'ideal', 'z', 'lam', 'c', 'offset',
              'index', 'symbol', 'op', 'module', 'scope', 'nmax', 'only', 'reduce')

    def __init__(self, command, algebra, psis, box, params, fmt, output, cocycle, source=None, box_given=True):
        self.command = command
        self.algebra = algebra
        self.psis = psis
        self.box = box
        self.box_given = box_given
        self.params = params
        self.format = fmt
        self.output = output
        self.cocycle = cocycle
        self.source = source

    @classmethod
    def from_args(cls, args):
        job = load_spec_file(args.job, '--job') if args.job else {}
        source = args.job

        command = args.command
        if command == 'run':
            command = job.get('command')
            if command not in COMMANDS or command == 'run':
                raise InputError('command', 'job file must name one of {}'.format(sorted(set(COMMANDS) - {'run'})),
                                 source)

        if args.algebra:
            algebra = algebra_from_spec(load_spec_file(args.algebra, '--algebra'), args.algebra)
        elif args.preset:
            spec = {'preset': args.preset}
            if args.N is not None:
                spec['N'] = args.N
            if args.points is not None:
                spec['points'] = args.points
            if args.poly is not None:
                spec['coeffs'] = args.poly
            algebra = algebra_from_spec(spec)
        elif 'algebra' in job:
            algebra = algebra_from_spec(job['algebra'], source)
        else:
            algebra = algebra_from_spec({'preset': 'scalar'})

        if args.psi:
            psis = [PsiFunctional.from_spec(_psi_from_text(p, i), algebra) for i, p in enumerate(args.psi)]
        elif args.psi_file:
            psis = [PsiFunctional.from_spec(load_spec_file(args.psi_file, '--psi-file'), algebra, args.psi_file)]
        elif 'psi' in job:
            raw = job['psi'] if isinstance(job['psi'], list) else [job['psi']]
            psis = [PsiFunctional.from_spec(p, algebra, source) for p in raw]
        else:
            psis = []

        box = _int_pair(args.box if args.box is not None else job.get('box', '2,2'), 'box', source)
        if min(box) < 0:
            raise InputError('box', 'box sizes must be non-negative', source)

        params = job.get('params', {})
        if not isinstance(params, dict):
            raise InputError('params', 'expected a mapping', source)
        params = dict(params)
        for name in cls.PARAMS:
            value = getattr(args, name, None)
            if value is not None:
                params[name] = value

        fmt = args.format or job.get('format', 'text')
        if fmt not in ('text', 'json', 'yaml'):
            raise InputError('format', 'expected text, json or yaml', source)
        cocycle = args.cocycle or job.get('cocycle', 'standard')
        if cocycle not in COCYCLES:
            raise InputError('cocycle', 'expected one of {}'.format(COCYCLES), source)

        return cls(command, algebra, psis, box, params, fmt, args.output or job.get('output'), cocycle, source,
                   box_given=args.box is not None or 'box' in job)

    def psi(self, required=True):
        if not self.psis:
            if required:
                raise InputError('psi', 'this command needs --psi or --psi-file')
            return None
        return self.psis[0]

    def param(self, name, default=None):
        return self.params.get(name, default)

    def element(self, name, default=None):
        value = self.params.get(name)
        if value is None:
            return SparseVec(default if default is not None else self.algebra.unit)
        return _coords(value, name, self.algebra, self.source)

    def pairs(self):
        if 'a' in self.params or 'b' in self.params:
            return [(self.element('a'), self.element('b'))]
        return basis_pairs(self.algebra)

    def ideal(self):
        raw = self.params.get('ideal')
        if raw is None:
            return zero_ideal(self.algebra)
        groups = raw.split(';') if isinstance(raw, str) else raw
        generators = [_coords(g, 'ideal[{}]'.format(i), self.algebra, self.source) for i, g in enumerate(groups)]
        return ideal_generated(self.algebra, generators)

    def module(self, psi=None):
        psi = psi or self.psi()
        kind = self.param('module', 'verma')
        if kind == 'verma':
            return verma(psi, self.algebra, self.box, self.cocycle)
        elif kind == 'irreducible':
            return irreducible(psi, self.algebra, self.box, self.cocycle)
        raise InputError('module', 'expected verma or irreducible, found [{}]'.format(kind), self.source)

    def operator(self):
        op = self.param('op', 'omega')
        if op == 'omega':
            return OperatorSpec(0, self.element('a'), self.element('b'))
        j = _int(self.param('j', 0), 'j', self.source)
        realization = self.param('realization', NORMAL_ORDERED)
        if op == 'T-commutator':
            realization = COMMUTATOR
        elif op != 'T':
            raise InputError('op', 'expected omega, T or T-commutator, found [{}]'.format(op), self.source)
        return OperatorSpec(j, self.element('a'), self.element('b'), realization)

    def describe(self):
        return {'algebra': self.algebra.name, 'box': list(self.box), 'cocycle': self.cocycle,
                'psi': [p.to_dict() for p in self.psis]}


def cmd_validate_algebra(job):
    result = validate(job.algebra)
    n = job.algebra.dim
    return make_report('validate_algebra', job.describe(), n * (n - 1) // 2 + n ** 3 + n,
                       result['violations'], laws=result['laws'])


def cmd_radical(job):
    ideal = job.ideal()
    rad = radical(ideal)
    return make_report('radical', dict(job.describe(), ideal_rank=ideal.rank), 1, [],
                       rank=rad.rank, basis=[job.algebra.format_element(r) for r in rad.rows])


def cmd_crt(job):
    algebra = job.algebra
    projection = None
    if job.param('reduce'):
        algebra, projection = quotient(algebra, radical(zero_ideal(algebra)))
    split = crt_split(algebra)
    idempotents = [projection.lift(e) if projection else e for e in split.idempotents]
    return make_report('crt', dict(job.describe(), reduced=bool(projection)), len(split), [],
                       idempotents=[job.algebra.format_element(e) for e in idempotents],
                       point_maps=[[format_scalar(v) for v in pm.values] for pm in split.point_maps])


def _dims_payload(dims, box):
    return {'dims': {'{},{}'.format(*o): d for o, d in sorted(dims.items())},
            'table': format_dimension_table(dims, box)}


def cmd_verma_dims(job):
    module = verma(job.psi(), job.algebra, job.box, job.cocycle)
    dims = module.dims()
    oracle = pbw_dimension_oracle(job.algebra, job.box)
    violations = [{'offset': list(o), 'enumerated': d, 'oracle': oracle[o]} for o, d in sorted(dims.items())
                  if oracle[o] != d]
    return make_report('verma_dims', job.describe(), len(dims), violations, **_dims_payload(dims, job.box))


def cmd_irreducible_dims(job):
    module = irreducible(job.psi(), job.algebra, job.box, job.cocycle)
    dims = module.dims()
    return make_report('irreducible_dims', job.describe(), len(dims), [], **_dims_payload(dims, job.box))


def _start_vector(job, module):
    if job.param('offset') is None:
        return module.highest_weight_vector()
    offset = BiDegree(*_int_pair(job.param('offset'), 'offset', job.source))
    basis = module.basis(offset)
    index = _int(job.param('index', 0), 'index', job.source)
    if not 0 <= index < len(basis):
        raise InputError('index', 'offset {} has {} basis vectors'.format(tuple(offset), len(basis)), job.source)
    return SparseVec.unit(basis[index])


def cmd_apply(job):
    module = job.module()
    v = _start_vector(job, module)
    symbols = job.param('symbol')
    if symbols:
        if isinstance(symbols, str):
            symbols = [symbols]
        w = v
        # the rightmost symbol acts first
        for text in reversed(symbols):
            w = module.apply(parse_symbol(text, job.algebra.labels), w)
        applied = ' '.join(symbols)
    else:
        op = job.operator()
        w = op.apply(module, v)
        applied = op.describe(job.algebra)
    return make_report('apply', dict(job.describe(), applied=applied, vector=module.format_vector(v)), 1, [],
                       image=module.format_vector(w))


def cmd_singular(job):
    module = job.module()
    scope = job.param('scope', 'tau')
    if job.param('offset') is not None:
        offsets = [BiDegree(*_int_pair(job.param('offset'), 'offset', job.source))]
    else:
        offsets = module.offsets()
    found = []
    for o in offsets:
        space = singular_vectors(module, o, scope)
        if space.rank:
            found.append({'offset': list(o), 'rank': space.rank,
                          'vectors': [module.format_vector(module.vector(o, row)) for row in space.rows]})
    return make_report('singular', dict(job.describe(), scope=scope, module=module.kind), len(offsets), [],
                       singular=found)


def _window(job):
    return _int_pair(job.param('window', '-2,2'), 'window', job.source)


def cmd_check_central(job):
    module = job.module()
    return centrality_report(job.operator(), module, window=_window(job), labels=job.param('labels', 'unit'),
                             progress=logging.getLogger('main').isEnabledFor(logging.DEBUG))


def cmd_check_bracket(job):
    k = _int(job.param('k', 1), 'k', job.source)
    j = _int(job.param('j', -1), 'j', job.source)
    modules = [job.module(psi) for psi in (job.psis or [job.psi()])]
    return vir_bracket_report(k, j, job.pairs(), modules)


def cmd_check_integrable(job):
    psi = job.psi()
    verdict, witness = dominant_integral(psi, job.algebra)
    module = irreducible(psi, job.algebra, job.box, job.cocycle)
    v = module.highest_weight_vector()
    P, Q = job.box
    one = job.algebra.unit
    probes = []
    for gen, power, nmax in (('Y', 0, P), ('X', -1, Q)):
        result = nilpotency_probe(module, gen, power, one, v, nmax)
        probes.append({'generator': TauSymbol.current(gen, power).label(['1']), 'nmax': nmax,
                       'nilpotent': result.nilpotent, 'N': result.N,
                       'surviving': None if result.nilpotent else module.format_vector(result.vector)})
    violations = []
    if job.algebra.dim == 1 and verdict:
        # string lengths lam + 1 and c - lam + 1 bound the nilpotency order
        lam, c, _ = psi.on_unit(job.algebra)
        for probe, bound in zip(probes, (lam + 1, c - lam + 1)):
            if probe['nmax'] >= bound and not probe['nilpotent']:
                violations.append(dict(probe, reason='dominant psi but not nilpotent within {}'.format(bound)))
    return make_report('integrable', job.describe(), len(probes), violations, dominant=verdict,
                       witness=witness, probes=probes)


def cmd_check_annihilation(job):
    return check_cofinite_annihilation(job.psi(), job.algebra, job.ideal(), job.box, job.cocycle,
                                       window=_window(job))


def cmd_evaluation_example(job):
    z = parse_scalar_list(job.param('z', '1,2'), 'z', job.source)
    lams = parse_scalar_list(job.param('lam', '2,3'), 'lam', job.source)
    cs = parse_scalar_list(job.param('c', '1,2'), 'c', job.source)
    for name, values in (('z', z), ('lam', lams), ('c', cs)):
        if len(values) != 2:
            raise InputError(name, 'expected two values', job.source)
    box = job.box if job.box_given else (3, 2)
    return evaluation_example(tuple(z), tuple(lams), tuple(cs), box)


def cmd_selftest(job):
    only = job.param('only')
    if isinstance(only, str):
        only = [x.strip() for x in only.split(',') if x.strip()]
    return run_selftest(progress=logging.getLogger('main').isEnabledFor(logging.DEBUG), only=only)


COMMANDS = {
    'validate-algebra': cmd_validate_algebra,
    'radical': cmd_radical,
    'crt': cmd_crt,
    'verma-dims': cmd_verma_dims,
    'irreducible-dims': cmd_irreducible_dims,
    'apply': cmd_apply,
    'singular': cmd_singular,
    'check-central': cmd_check_central,
    'check-bracket': cmd_check_bracket,
    'check-integrable': cmd_check_integrable,
    'check-annihilation': cmd_check_annihilation,
    'example31': cmd_evaluation_example,
    'evaluation-example': cmd_evaluation_example,
    'selftest': cmd_selftest,
    'run': None,
}


def render_text(report):
    """
    Aligned key/value lines; multi-line strings such as dimension tables are printed as is.
    """
    lines = []
    head = ('identity', 'passed', 'checked')
    width = max(len(k) for k in report)
    for k in head:
        lines.append('{} : {}'.format(k.ljust(width), report[k]))
    lines.append('{} : {}'.format('violations'.ljust(width), len(report['violations'])))
    for k in sorted(report):
        if k in head or k in ('schema', 'violations'):
            continue
        value = to_serializable(report[k])
        if isinstance(value, str) and '\n' in value:
            lines.append('{} :'.format(k.ljust(width)))
            lines.append(value)
        elif isinstance(value, (dict, list)):
            lines.append('{} :'.format(k.ljust(width)))
            lines.append(yaml.safe_dump(value, default_flow_style=False, sort_keys=True).rstrip())
        else:
            lines.append('{} : {}'.format(k.ljust(width), value))
    if report['violations']:
        lines.append('violations:')
        lines.append(yaml.safe_dump(to_serializable(report['violations']), default_flow_style=False,
                                    sort_keys=True).rstrip())
    return '\n'.join(lines)


def emit(report, job):
    fmt = 'plain' if job.format == 'text' else job.format
    data = render_text(report) if fmt == 'plain' else report
    if job.output:
        with open(job.output, 'w') as out_h:
            write_to_stream(out_h, data, fmt)
    else:
        write_to_stream(sys.stdout, data, fmt)


def main(argv=None):
    import argparse

    #
    # Commandline interface
    #
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', default=False, action='store_true', help='Verbose output')
    common.add_argument('--no-log-file', default=False, action='store_true',
                        help='Do not append to {}'.format(__log_name__))
    common.add_argument('--format', choices=['text', 'json', 'yaml'], default=None, help='Report format [text]')
    common.add_argument('-o', '--output', metavar='FILE', default=None, help='Write the report to a file')
    common.add_argument('--job', metavar='FILE', default=None, help='Job spec file (YAML or JSON)')
    common.add_argument('--cocycle', choices=COCYCLES, default=None,
                        help='Affine cocycle convention [standard]')
    common.add_argument('--preset', choices=['scalar', 'jet', 'points', 'laurent', 'poly'], default=None,
                        help='Coefficient algebra preset')
    common.add_argument('--N', type=int, default=None, help='Order of the jet preset')
    common.add_argument('--points', metavar='Z1,Z2,..', default=None, help='Points of the points preset')
    common.add_argument('--poly', metavar='C0,C1,..', default=None,
                        help='Ascending coefficients for the laurent and poly presets')
    common.add_argument('--algebra', metavar='FILE', default=None, help='Algebra spec file')
    common.add_argument('--psi', action='append', metavar='lam=..,c=..,d0=..', default=None,
                        help='Highest weight on the unit; repeat for several')
    common.add_argument('--psi-file', metavar='FILE', default=None, help='psi spec file with h, K, L0 lists')
    common.add_argument('--box', metavar='P,Q', default=None, help='Truncation box [2,2]')

    parser = argparse.ArgumentParser(description='Exact computations in loop Affine-Virasoro algebras')
    parser.add_argument('-V', '--version', default=False, action='version',
                        version=version_stamp(False), help='Version')
    sub = parser.add_subparsers(dest='command', help='commands')
    sub.required = True

    sub.add_parser('run', parents=[common], help='Run the command named in a job file')
    sub.add_parser('validate-algebra', parents=[common], help='Check the algebra laws')
    p = sub.add_parser('radical', parents=[common], help='Radical of an ideal')
    p.add_argument('--ideal', metavar='G1;G2', help='Ideal generators as coordinate lists separated by ;')
    p = sub.add_parser('crt', parents=[common], help='Primitive idempotents and point maps')
    p.add_argument('--reduce', default=None, action='store_true', help='Quotient by the radical first')
    sub.add_parser('verma-dims', parents=[common], help='Verma weight space dimensions')
    sub.add_parser('irreducible-dims', parents=[common], help='Irreducible weight space dimensions')

    module_args = argparse.ArgumentParser(add_help=False)
    module_args.add_argument('--module', choices=['verma', 'irreducible'], default=None, help='Module [verma]')
    op_args = argparse.ArgumentParser(add_help=False)
    op_args.add_argument('--op', choices=['omega', 'T', 'T-commutator'], default=None, help='Operator [omega]')
    op_args.add_argument('--j', default=None, help='Virasoro index of T_j')
    op_args.add_argument('--a', metavar='COORDS', default=None, help='Coordinates of a [unit]')
    op_args.add_argument('--b', metavar='COORDS', default=None, help='Coordinates of b [unit]')

    p = sub.add_parser('apply', parents=[common, module_args, op_args], help='Apply symbols or an operator')
    p.add_argument('--symbol', action='append', default=None, help='Symbol such as "Y(t^0;1)", repeatable')
    p.add_argument('--offset', metavar='P,Q', default=None, help='Offset of the start vector [highest weight]')
    p.add_argument('--index', default=None, help='Basis index at the offset [0]')

    p = sub.add_parser('singular', parents=[common, module_args], help='Singular vectors per offset')
    p.add_argument('--offset', metavar='P,Q', default=None, help='Single offset [all]')
    p.add_argument('--scope', choices=['tau', 'affine'], default=None, help='Raising generators [tau]')

    p = sub.add_parser('check-central', parents=[common, module_args, op_args], help='Centrality of an operator')
    p.add_argument('--realization', choices=[NORMAL_ORDERED, COMMUTATOR], default=None)
    p.add_argument('--window', metavar='LO,HI', default=None, help='t-power window [-2,2]')
    p.add_argument('--labels', choices=['unit', 'all'], default=None, help='Generator labels [unit]')

    p = sub.add_parser('check-bracket', parents=[common, module_args], help='[L_k, T_j] identity')
    p.add_argument('--k', default=None, help='Index of L_k [1]')
    p.add_argument('--j', default=None, help='Index of T_j [-1]')
    p.add_argument('--a', metavar='COORDS', default=None)
    p.add_argument('--b', metavar='COORDS', default=None)

    sub.add_parser('check-integrable', parents=[common], help='Dominance and nilpotency probes')
    p = sub.add_parser('check-annihilation', parents=[common], help='Annihilation by an ideal')
    p.add_argument('--ideal', metavar='G1;G2', help='Ideal generators as coordinate lists separated by ;')
    p.add_argument('--window', metavar='LO,HI', default=None, help='Generator window [-2,2]')

    p = sub.add_parser('example31', aliases=['evaluation-example'], parents=[common],
                       help='T_-1, T_-2 on a two point evaluation tensor')
    p.add_argument('--z', metavar='Z1,Z2', default=None, help='Evaluation points [1,2]')
    p.add_argument('--lam', metavar='L1,L2', default=None, help='Factor weights [2,3]')
    p.add_argument('--c', metavar='C1,C2', default=None, help='Factor levels [1,2]')

    p = sub.add_parser('selftest', parents=[common], help='Run the acceptance suite')
    p.add_argument('--only', metavar='NAMES', default=None, help='Comma separated criteria')

    args = parser.parse_args(argv)

    logger = init_log(args.verbose, log_file=not args.no_log_file)

    logger.debug(runtime_info())
    logger.debug(sys.version.replace('\n', ' '))

    try:

        job = JobSpec.from_args(args)
        report = COMMANDS[job.command](job)
        emit(report, job)
        if not report['passed']:
            logger.error('{}: {} violations'.format(report['identity'], len(report['violations'])))
            sys.exit(1)

    except TauLoopException as ex:
        logger.error(str(ex))
        sys.exit(2)

    except Exception as ex:
        logger.exception(ex)
        sys.exit(1)
