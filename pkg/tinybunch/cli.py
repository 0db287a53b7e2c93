"""
The ``tinybunch`` command line tool.

Exit codes: ``0`` when every check holds, ``1`` when an identity is violated
(the report carries the counterexample), ``2`` on input or usage errors.
"""
import argparse
import json
import logging
import sys
from contextlib import nullcontext
from typing import (Any, Callable, Dict, List, Optional, Sequence, TextIO,
                    Tuple)

from .bimyb import (BiMYB, check_bimyb, check_even_tempered, check_prop4,
                    check_remark5, check_remark6, q_bracket)
from .bunch import (MYBAlgebra, check_compatible, check_gamma_homomorphism,
                    check_mcybe_variant, check_myb,
                    check_primed_lie_condition, primed_bracket,
                    tangent_bracket)
from .catalog import CATALOG, DEFAULT_LAMBDAS, DEFAULT_WINDOW, lookup
from .claims import claims_matrix
from .document import (InputDocument, ReportDocument, dumps, export_objects,
                       parse_document)
from .errors import InputError, UnsupportedError
from .liecore import check_jacobi, op_polynomial
from .ratlin import format_rational, parse_rational
from .reports import CheckReport, collecting_all_counterexamples
from .rep import check_corollary, check_family_closure, check_representation
from .storages import JSONStorage
from .version import __version__

__all__ = ('build_parser', 'run', 'main', 'CHECKS', 'MAKERS')

logger = logging.getLogger(__name__)


class _Context:
    """
    The parsed input document plus the selector flags of one invocation.
    """

    def __init__(self, doc: InputDocument, args: argparse.Namespace):
        self.doc = doc
        self.args = args
        self.window = args.window
        self.lambdas = args.lambdas

    def algebras(self, count: int = 1):
        names = self.args.algebra or []
        if not names:
            if count == 1:
                return [self.doc.select('algebras')]
            return self._in_order('algebras', count, '--algebra')

        if len(names) != count:
            raise InputError('--algebra', 'expected {} algebra(s), got {}'
                             .format(count, len(names)))
        return [self.doc.select('algebras', name) for name in names]

    def algebra(self):
        return self.algebras(1)[0]

    def operators(self, count: int = 1):
        names = self.args.operator or []
        if not names:
            if count == 1:
                return [self.doc.select('operators')]
            return self._in_order('operators', count, '--operator')

        if len(names) != count:
            raise InputError('--operator', 'expected {} operator(s), got {}'
                             .format(count, len(names)))
        return [self.doc.select('operators', name) for name in names]

    def operator(self):
        return self.operators(1)[0]

    def _in_order(self, section: str, count: int, flag: str):
        entries = self.doc.section(section)
        if len(entries) != count:
            raise InputError(flag, 'the document has {} {}, name {} of them'
                             .format(len(entries), section, count))
        return list(entries.values())

    def pick(self, section: str, flag: str):
        return self.doc.select(section, getattr(self.args, flag))

    def constant(self):
        return self.args.constant if self.args.constant is not None else 1


def _check_compat(ctx: _Context) -> CheckReport:
    if ctx.args.algebra and len(ctx.args.algebra) == 2:
        first, second = ctx.algebras(2)
    else:
        pencil = ctx.pick('pencils', 'pencil')
        first, second = pencil.base, pencil.direction

    return check_compatible(first, second, ctx.window)


def _bimyb(ctx: _Context) -> BiMYB:
    r1, r2 = ctx.operators(2)
    return BiMYB(ctx.algebra(), r1, r2)


def _remark5(ctx: _Context) -> CheckReport:
    r, xi = ctx.operators(2)
    return check_remark5(ctx.algebra(), r, xi, ctx.window)


CHECKS: Dict[str, Callable[[_Context], CheckReport]] = {
    'jacobi': lambda ctx: check_jacobi(ctx.algebra(), ctx.window),
    'myb': lambda ctx: check_myb(ctx.algebra(), ctx.operator(), ctx.window),
    'mcybe': lambda ctx: check_mcybe_variant(ctx.algebra(), ctx.operator(),
                                             ctx.constant(), ctx.window),
    'primed-lie': lambda ctx: check_primed_lie_condition(
        ctx.algebra(), ctx.operator(), ctx.window),
    'compat': _check_compat,
    'bunch': lambda ctx: check_gamma_homomorphism(
        ctx.pick('pencils', 'pencil'), ctx.lambdas, ctx.window),
    'bimyb': lambda ctx: check_bimyb(_bimyb(ctx), ctx.window),
    'prop4': lambda ctx: check_prop4(ctx.pick('assoc_algebras', 'assoc'),
                                     ctx.pick('elements', 'element'),
                                     ctx.window),
    'remark5': _remark5,
    'remark6': lambda ctx: check_remark6(ctx.pick('assoc_algebras', 'assoc'),
                                         ctx.pick('elements', 'element'),
                                         ctx.window),
    'even-tempered': lambda ctx: check_even_tempered(_bimyb(ctx),
                                                     ctx.window),
    'rep': lambda ctx: check_representation(
        ctx.pick('representations', 'rep'), ctx.window),
    'corollary': lambda ctx: check_corollary(
        MYBAlgebra(ctx.algebra(), ctx.operator()), ctx.lambdas, ctx.window),
    'closure': lambda ctx: check_family_closure(
        ctx.pick('families', 'family'), ctx.window),
}


def _make_poly(ctx: _Context) -> Dict[str, Any]:
    if ctx.args.coeffs is None:
        raise InputError('--coeffs', 'required for make poly')

    op = ctx.operator()
    if op.is_finite:
        return export_objects(
            {'operators': {'poly': op_polynomial(ctx.args.coeffs, op)}})

    # Graded operators have no matrix: refer to the source instead
    document = export_objects({'operators': {op.label: op}})
    document['operators']['poly'] = {
        'kind': 'polynomial', 'of': op.label,
        'coeffs': [format_rational(c) for c in ctx.args.coeffs]}
    return document


def _export(section: str, name: str,
            build: Callable[[_Context], Any]) -> Callable[[_Context],
                                                           Dict[str, Any]]:
    return lambda ctx: export_objects({section: {name: build(ctx)}})


MAKERS: Dict[str, Callable[[_Context], Dict[str, Any]]] = {
    'tangent': _export('algebras', 'tangent', lambda ctx: tangent_bracket(
        ctx.algebra(), ctx.operator())),
    'primed': _export('algebras', 'primed', lambda ctx: primed_bracket(
        ctx.algebra(), ctx.operator())),
    'qbracket': _export('algebras', 'qbracket', lambda ctx: q_bracket(
        ctx.pick('assoc_algebras', 'assoc'),
        ctx.pick('elements', 'element'))),
    'poly': _make_poly,
}


def _lambda_list(text: str) -> Tuple[Any, ...]:
    try:
        return tuple(parse_rational(part.strip())
                     for part in text.split(',') if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    """
    The argument parser of the ``tinybunch`` command.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--input', metavar='FILE',
                        help='input document (JSON)')
    common.add_argument('--window', type=int, metavar='W',
                        help='check graded algebras on [-W, W]')
    common.add_argument('--lambdas', type=_lambda_list, metavar='A,B,C',
                        default=DEFAULT_LAMBDAS,
                        help='lambda samples (default: 0,1,2)')
    common.add_argument('--json', action='store_true',
                        help='print a JSON report')
    common.add_argument('--all-counterexamples', action='store_true',
                        help='collect every counterexample, not just the '
                             'first one')
    common.add_argument('--out', metavar='FILE',
                        help='write the document or report to FILE')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='log progress to stderr')

    selectors = common.add_argument_group('selectors')
    selectors.add_argument('--algebra', action='append', metavar='NAME')
    selectors.add_argument('--operator', action='append', metavar='NAME')
    selectors.add_argument('--assoc', metavar='NAME')
    selectors.add_argument('--element', metavar='NAME')
    selectors.add_argument('--pencil', metavar='NAME')
    selectors.add_argument('--rep', metavar='NAME')
    selectors.add_argument('--family', metavar='NAME')
    selectors.add_argument('--constant', type=_rational_arg, metavar='C',
                           help='constant of the mCYBE variant (default 1)')
    selectors.add_argument('--coeffs', type=_lambda_list,
                           metavar='A0,A1,...',
                           help='polynomial coefficients for make poly')

    parser = argparse.ArgumentParser(
        prog='tinybunch',
        description='Check identities of Lie algebra pencils and mYB '
                    'structures over exact rationals.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', parents=[common],
                                help='check an identity')
    check.add_argument('what', choices=sorted(CHECKS))

    make = commands.add_parser('make', parents=[common],
                               help='derive a bracket or operator')
    make.add_argument('what', choices=sorted(MAKERS))

    catalog = commands.add_parser('catalog', parents=[common],
                                  help='list or export catalog entries')
    catalog.add_argument('action', choices=('list', 'export'))
    catalog.add_argument('name', nargs='?',
                         help='entry to export, as name?key=value&...')

    commands.add_parser('claims', parents=[common],
                        help='run every check on the catalog')

    return parser


def _load(args: argparse.Namespace) -> InputDocument:
    if not args.input:
        raise InputError('--input', 'required for {} {}'
                         .format(args.command, args.what))

    with JSONStorage(args.input, access_mode='r') as storage:
        try:
            raw = storage.read()
        except json.JSONDecodeError as e:
            raise InputError(args.input, 'invalid JSON: {}'.format(e)) \
                from None

    if raw is None:
        raise InputError(args.input, 'empty document')

    return parse_document(raw)


def _write(path: str, data: Dict[str, Any]) -> None:
    with JSONStorage(path, create_dirs=True, sort_keys=True,
                     indent=2) as storage:
        storage.write(data)


def _dispatch(args: argparse.Namespace, report: ReportDocument,
              out: TextIO) -> None:
    if args.command == 'check':
        ctx = _Context(_load(args), args)
        report.add(CHECKS[args.what](ctx))
        _emit(args, report, out, report.to_text())

    elif args.command == 'make':
        ctx = _Context(_load(args), args)
        document = MAKERS[args.what](ctx)
        _emit_document(args, report, out, document)

    elif args.command == 'catalog':
        if args.action == 'list':
            report.extra['catalog'] = [
                {'name': entry.name, 'description': entry.description,
                 'parameters': dict(entry.defaults)}
                for entry in CATALOG.values()]
            text = '\n'.join(
                '{:<12} {}{}'.format(
                    entry.name, entry.description,
                    ' ({})'.format(', '.join(
                        '{}={}'.format(k, v)
                        for k, v in entry.defaults.items()))
                    if entry.defaults else '')
                for entry in CATALOG.values())
            _emit(args, report, out, text)
        else:
            if not args.name:
                raise InputError('name', 'catalog export needs an entry '
                                 'name')
            entry, params = lookup(args.name)
            _emit_document(args, report, out,
                           export_objects(entry.build(params)))

    else:
        matrix = claims_matrix(args.window or DEFAULT_WINDOW,
                               args.lambdas)
        report.extra['claims'] = matrix.to_dict()
        if matrix.contradictions:
            report.failed = True
        _emit(args, report, out, matrix.to_text())


def _emit(args: argparse.Namespace, report: ReportDocument, out: TextIO,
          text: str) -> None:
    data = report.to_dict()
    if args.out:
        _write(args.out, data)

    if args.json:
        out.write(dumps(data))
    else:
        out.write(text + '\n')
        if report.checks:
            out.write('verdict: {}\n'.format(report.verdict))


def _emit_document(args: argparse.Namespace, report: ReportDocument,
                   out: TextIO, document: Dict[str, Any]) -> None:
    if args.out:
        _write(args.out, document)

    if args.json:
        report.extra['document'] = document
        out.write(dumps(report.to_dict()))
    elif not args.out:
        out.write(dumps(document))


def run(argv: Sequence[str], out: Optional[TextIO] = None,
        err: Optional[TextIO] = None) -> Tuple[int, Optional[ReportDocument]]:
    """
    Run the command line tool.

    :param argv: the arguments, without the program name
    :param out: where output goes (default: stdout)
    :param err: where errors go (default: stderr)
    :returns: the exit code and the report (``None`` on usage errors)
    """
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()

    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else 2), None

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=err,
                            format='%(levelname)s %(name)s: %(message)s')

    report = ReportDocument(argv)
    context = collecting_all_counterexamples() if args.all_counterexamples \
        else nullcontext()

    try:
        with context:
            _dispatch(args, report, out)
    except (InputError, UnsupportedError, ValueError, KeyError,
            OSError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else e
        err.write('error: {}\n'.format(message))
        logger.debug('%s failed', args.command, exc_info=True)
        return 2, report

    return (1 if report.failed else 0), report


def main(argv: Optional[List[str]] = None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code
