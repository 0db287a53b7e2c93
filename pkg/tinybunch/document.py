"""
Input documents and report documents.

Input documents describe algebras, operators, associative algebras,
elements, pencils, representations and bracket families in JSON, with every
coefficient an exact rational (``3``, ``"-1/2"``). They are validated
against ``schemas/input.schema.json`` first and then semantically; every
rejection is an :class:`~tinybunch.errors.InputError` carrying the location
of the problem, e.g. ``algebras.so3.brackets[2].terms[0].c``.

Parsed documents serialize canonically (sorted keys, rationals as ``"p/q"``
strings, entries sorted by index), so exporting, parsing and exporting again
reproduces the same text.
"""
import json
import time
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import (Any, Callable, Dict, Iterable, List, Mapping, Optional,
                    Sequence, Set, Tuple)

import jsonschema

from .bimyb import AssocAlgebra
from .bunch import Pencil, tangent_bracket
from .catalog import DEFAULT_WINDOW, make_witt
from .errors import IdentityViolation, InputError, UnsupportedError
from .liecore import BracketMap, Element, LinearOperator, op_polynomial
from .ratlin import Matrix, SparseTensor3, format_rational, parse_rational
from .reports import CheckReport, Counterexample
from .rep import BracketFamily, BunchRepresentation
from .version import __version__

__all__ = ('InputDocument', 'ReportDocument', 'parse_input',
           'parse_document', 'dumps',
           'export_objects', 'report_to_dict', 'render_value', 'load_schema',
           'validate_report', 'SECTIONS')

SCHEMA_DIR = Path(__file__).parent / 'schemas'

# Sections in dependency order
SECTIONS = ('assoc_algebras', 'elements', 'algebras', 'operators', 'pencils',
            'representations', 'families')


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """
    Load one of the published schemas (``'input'`` or ``'report'``).
    """
    with open(SCHEMA_DIR / '{}.schema.json'.format(name),
              encoding='utf-8') as handle:
        return json.load(handle)


def _format_path(parts: Iterable[Any]) -> str:
    path = ''
    for part in parts:
        if isinstance(part, int):
            path += '[{}]'.format(part)
        else:
            path += '.{}'.format(part) if path else str(part)

    return path


def _validate(data: Any, schema_name: str) -> None:
    validator = jsonschema.Draft7Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(data),
                    key=lambda e: ([str(p) for p in e.absolute_path],
                                   e.message))
    if errors:
        error = errors[0]
        raise InputError(_format_path(error.absolute_path), error.message)


def validate_report(data: Dict[str, Any]) -> None:
    """
    Validate a report document against the report schema.

    :raises InputError: at the first violation
    """
    _validate(data, 'report')


def dumps(data: Any) -> str:
    """
    The canonical JSON text of a document.
    """
    return json.dumps(data, sort_keys=True, indent=2) + '\n'


# Entries (object -> canonical JSON)


def _terms_entry(x: Element) -> List[Dict[str, Any]]:
    return [{'k': k, 'c': format_rational(x[k])} for k in sorted(x)]


def _matrix_entry(m: Matrix) -> List[List[str]]:
    return [[format_rational(v) for v in row] for row in m.to_lists()]


def _grouped(entries: Iterable[Tuple[Tuple[int, int, int], Fraction]]
             ) -> List[Dict[str, Any]]:
    table: Dict[Tuple[int, int], List[Dict[str, Any]]] = defaultdict(list)
    for (i, j, k), c in entries:
        table[(i, j)].append({'k': k, 'c': format_rational(c)})

    return [{'i': i, 'j': j, 'terms': sorted(terms, key=lambda t: t['k'])}
            for (i, j), terms in sorted(table.items())]


def _algebra_entry(br: BracketMap,
                   names: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    if br.kind == 'witt':
        return {'kind': 'witt', 'window': br.default_window}

    if not br.is_finite:
        raise UnsupportedError('{} is a graded bracket without a '
                               'serializable rule'.format(br.label))

    entry: Dict[str, Any] = {'kind': 'structure_constants', 'dim': br.dim,
                             'brackets': _grouped(br.upper_entries())}
    if names is not None:
        entry['names'] = list(names)

    return entry


def _operator_entry(op: LinearOperator) -> Dict[str, Any]:
    if op.kind == 'shift':
        return {'kind': 'shift', 'offset': op.params['offset'],
                'scale': format_rational(op.params['scale'])}

    if op.kind == 'diagonal' and 'values' in op.params:
        return {'kind': 'diagonal',
                'values': [format_rational(v) for v in op.params['values']]}

    if op.is_finite:
        return {'kind': 'matrix', 'matrix': _matrix_entry(op.to_matrix())}

    raise UnsupportedError('{} is a graded operator without a serializable '
                           'form'.format(op.label))


def _assoc_entry(a: AssocAlgebra) -> Dict[str, Any]:
    entry: Dict[str, Any] = {'dim': a.dim,
                             'products': _grouped(a.product.items())}
    if a.unit is not None:
        entry['unit'] = _terms_entry(a.unit)
    if a.names is not None:
        entry['names'] = list(a.names)

    return entry


def export_objects(objects: Mapping[str, Mapping[str, Any]]
                   ) -> Dict[str, Any]:
    """
    Serialize named objects, grouped by document section, to a canonical
    input document.

    Pencils, representations and families refer to other objects by name,
    so everything they use has to be part of ``objects`` too.

    :raises UnsupportedError: for objects without a serializable form
    :raises ValueError: for references to unnamed objects
    """
    unknown = sorted(set(objects) - set(SECTIONS))
    if unknown:
        raise ValueError('unknown document section {!r}'.format(unknown[0]))

    names: Dict[int, str] = {}
    for section in SECTIONS:
        for name, obj in objects.get(section, {}).items():
            names.setdefault(id(obj), name)

    def ref(obj: Any, what: str) -> str:
        try:
            return names[id(obj)]
        except KeyError:
            raise ValueError('{} {!r} is not part of the document'
                             .format(what, getattr(obj, 'label', obj))) \
                from None

    converters: Dict[str, Callable[[Any], Any]] = {
        'assoc_algebras': _assoc_entry,
        'elements': _terms_entry,
        'algebras': _algebra_entry,
        'operators': _operator_entry,
        'pencils': lambda p: _pencil_entry(p, ref),
        'representations': lambda rep: {
            'pencil': ref(rep.source, 'pencil'),
            'images': [_matrix_entry(m) for m in rep.images],
            'q_op': _matrix_entry(rep.q_op)},
        'families': lambda fam: [ref(br, 'algebra') for br in fam],
    }

    document: Dict[str, Any] = {}
    for section in SECTIONS:
        entries = objects.get(section)
        if entries:
            document[section] = {name: converters[section](obj)
                                 for name, obj in entries.items()}

    return document


def _pencil_entry(p: Pencil, ref: Callable[[Any, str], str]
                  ) -> Dict[str, Any]:
    entry = {'base': ref(p.base, 'algebra'),
             'direction': ref(p.direction, 'algebra')}
    if p.operator is not None:
        entry['operator'] = ref(p.operator, 'operator')

    return entry


# Parsing


class InputDocument:
    """
    A parsed input document.

    Every section maps names to objects: :class:`BracketMap` for
    ``algebras``, :class:`LinearOperator` for ``operators`` and so on.
    ``canonical`` is the normalized JSON form.
    """

    def __init__(self):
        self.algebras: Dict[str, BracketMap] = {}
        self.operators: Dict[str, LinearOperator] = {}
        self.assoc_algebras: Dict[str, AssocAlgebra] = {}
        self.elements: Dict[str, Element] = {}
        self.pencils: Dict[str, Pencil] = {}
        self.representations: Dict[str, BunchRepresentation] = {}
        self.families: Dict[str, BracketFamily] = {}
        self.canonical: Dict[str, Any] = {}

    def section(self, name: str) -> Dict[str, Any]:
        if name not in SECTIONS:
            raise KeyError(name)

        return getattr(self, name)

    def select(self, section: str, name: Optional[str] = None) -> Any:
        """
        Look up an entry; without a name, the only entry of the section.

        :raises InputError: if the entry doesn't exist or the choice is
                            ambiguous
        """
        entries = self.section(section)
        if name is None:
            if len(entries) != 1:
                raise InputError(section, 'choose one of {} entries: {}'
                                 .format(len(entries),
                                         ', '.join(sorted(entries)) or
                                         'none'))
            return next(iter(entries.values()))

        if name not in entries:
            raise InputError('{}.{}'.format(section, name),
                             'no such entry')

        return entries[name]

    def to_json(self) -> str:
        return dumps(self.canonical)

    def __repr__(self):
        args = ['{}={}'.format(s, len(self.section(s)))
                for s in SECTIONS if self.section(s)]
        return '<{} {}>'.format(type(self).__name__, ', '.join(args))


def _rational(value: Any, path: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as e:
        raise InputError(path, str(e)) from None


def _terms(raw: Sequence[Mapping[str, Any]], path: str,
           dim: Optional[int] = None) -> Element:
    seen: Set[int] = set()
    pairs = []
    for t, term in enumerate(raw):
        here = '{}[{}]'.format(path, t)
        k = term['k']
        if dim is not None and not 0 <= k < dim:
            raise InputError(here + '.k', 'index {} outside range({})'
                             .format(k, dim))
        if k in seen:
            raise InputError(here + '.k', 'duplicate index {}'.format(k))
        seen.add(k)
        pairs.append((k, _rational(term['c'], here + '.c')))

    return Element(pairs)


def _matrix(raw: Sequence[Sequence[Any]], path: str) -> Matrix:
    cols = len(raw[0])
    rows = []
    for r, row in enumerate(raw):
        if len(row) != cols:
            raise InputError('{}[{}]'.format(path, r),
                             'expected {} entries, got {}'.format(cols,
                                                                  len(row)))
        rows.append([_rational(v, '{}[{}][{}]'.format(path, r, c))
                     for c, v in enumerate(row)])

    return Matrix(rows, cols=cols)


def _products(raw: Sequence[Mapping[str, Any]], path: str, dim: int,
              upper: bool) -> Dict[Tuple[int, int, int], Fraction]:
    entries: Dict[Tuple[int, int, int], Fraction] = {}
    seen: Set[Tuple[int, int]] = set()

    for index, item in enumerate(raw):
        here = '{}[{}]'.format(path, index)
        i, j = item['i'], item['j']
        for key, value in (('i', i), ('j', j)):
            if value >= dim:
                raise InputError('{}.{}'.format(here, key),
                                 'index {} outside range({})'.format(value,
                                                                     dim))
        if upper and i >= j:
            raise InputError(here, 'entries must have i < j, got ({}, {})'
                             .format(i, j))
        if (i, j) in seen:
            raise InputError(here, 'duplicate entry for ({}, {})'
                             .format(i, j))
        seen.add((i, j))

        for k, c in _terms(item['terms'], here + '.terms', dim).items():
            entries[(i, j, k)] = c

    return entries


def _names(raw: Mapping[str, Any], path: str,
           dim: int) -> Optional[List[str]]:
    names = raw.get('names')
    if names is not None and len(names) != dim:
        raise InputError(path + '.names', 'expected {} names, got {}'
                         .format(dim, len(names)))

    return names


def _require(raw: Mapping[str, Any], path: str, *fields: str) -> None:
    for field in fields:
        if field not in raw:
            raise InputError(path, '{!r} is required for kind {!r}'
                             .format(field, raw.get('kind')))


class _Parser:
    def __init__(self, raw: Mapping[str, Any]):
        self.raw = raw
        self.doc = InputDocument()
        self._resolving: List[str] = []

    def parse(self) -> InputDocument:
        for section in SECTIONS:
            entries = self.raw.get(section, {})
            parse = getattr(self, '_parse_' + section)
            for name in entries:
                if name not in self.doc.section(section):
                    parse(name)

        self.doc.canonical = {
            section: {name: self._canonical(section, name)
                      for name in self.raw[section]}
            for section in SECTIONS if self.raw.get(section)
        }
        return self.doc

    def _canonical(self, section: str, name: str) -> Any:
        raw = self.raw[section][name]
        obj = self.doc.section(section)[name]

        if section == 'algebras':
            return _algebra_entry(obj, raw.get('names'))
        if section == 'operators':
            if raw['kind'] == 'polynomial':
                return {'kind': 'polynomial', 'of': raw['of'],
                        'coeffs': [format_rational(parse_rational(c))
                                   for c in raw['coeffs']]}
            return _operator_entry(obj)
        if section == 'assoc_algebras':
            return _assoc_entry(obj)
        if section == 'elements':
            return _terms_entry(obj)
        if section == 'representations':
            return {'pencil': raw['pencil'],
                    'images': [_matrix_entry(m) for m in obj.images],
                    'q_op': _matrix_entry(obj.q_op)}

        return raw

    def _ref(self, section: str, name: str, path: str) -> Any:
        entries = self.doc.section(section)
        if name not in entries:
            if name not in self.raw.get(section, {}):
                raise InputError(path, 'unknown {} {!r}'.format(
                    section.rstrip('s').replace('_', ' '), name))
            getattr(self, '_parse_' + section)(name)

        return entries[name]

    def _parse_algebras(self, name: str) -> None:
        path = 'algebras.{}'.format(name)
        raw = self.raw['algebras'][name]

        if raw['kind'] == 'witt':
            br = make_witt(raw.get('window', DEFAULT_WINDOW))
        else:
            _require(raw, path, 'dim')
            dim = raw['dim']
            _names(raw, path, dim)
            entries = _products(raw.get('brackets', []), path + '.brackets',
                                dim, upper=True)
            br = BracketMap.from_upper(dim, entries, label=name)

        br.label = name
        self.doc.algebras[name] = br

    def _parse_operators(self, name: str) -> None:
        path = 'operators.{}'.format(name)
        raw = self.raw['operators'][name]
        kind = raw['kind']

        if kind == 'matrix':
            _require(raw, path, 'matrix')
            matrix = _matrix(raw['matrix'], path + '.matrix')
            if not matrix.is_square():
                raise InputError(path + '.matrix', 'operator matrix must be '
                                 'square, got {}'.format(matrix.shape))
            op = LinearOperator.from_matrix(matrix, label=name)
        elif kind == 'shift':
            _require(raw, path, 'offset')
            op = LinearOperator.shift(
                raw['offset'], _rational(raw.get('scale', 1),
                                         path + '.scale'), label=name)
        elif kind == 'diagonal':
            _require(raw, path, 'values')
            op = LinearOperator.diagonal(
                [_rational(v, '{}.values[{}]'.format(path, index))
                 for index, v in enumerate(raw['values'])], label=name)
        else:
            _require(raw, path, 'of', 'coeffs')
            if name in self._resolving:
                raise InputError(path + '.of', 'circular polynomial '
                                 'definition')
            self._resolving.append(name)
            inner = self._ref('operators', raw['of'], path + '.of')
            self._resolving.pop()
            coeffs = [_rational(c, '{}.coeffs[{}]'.format(path, index))
                      for index, c in enumerate(raw['coeffs'])]
            op = op_polynomial(coeffs, inner)
            op.label = name

        self.doc.operators[name] = op

    def _parse_assoc_algebras(self, name: str) -> None:
        path = 'assoc_algebras.{}'.format(name)
        raw = self.raw['assoc_algebras'][name]
        dim = raw['dim']
        names = _names(raw, path, dim)
        entries = _products(raw['products'], path + '.products', dim,
                            upper=False)
        unit = _terms(raw['unit'], path + '.unit', dim) \
            if 'unit' in raw else None

        try:
            a = AssocAlgebra(SparseTensor3(dim, entries), unit=unit,
                             label=name, names=names)
        except IdentityViolation as e:
            raise InputError(path, str(e)) from None

        self.doc.assoc_algebras[name] = a

    def _parse_elements(self, name: str) -> None:
        self.doc.elements[name] = _terms(self.raw['elements'][name],
                                         'elements.{}'.format(name))

    def _parse_pencils(self, name: str) -> None:
        path = 'pencils.{}'.format(name)
        raw = self.raw['pencils'][name]
        base = self._ref('algebras', raw['base'], path + '.base')
        op = self._ref('operators', raw['operator'], path + '.operator') \
            if 'operator' in raw else None

        try:
            if 'direction' in raw:
                direction = self._ref('algebras', raw['direction'],
                                      path + '.direction')
            elif op is not None:
                direction = tangent_bracket(base, op)
            else:
                raise InputError(path, 'a pencil needs a direction or an '
                                 'operator')
            pencil = Pencil(base, direction, op, label=name)
        except ValueError as e:
            if isinstance(e, InputError):
                raise
            raise InputError(path, str(e)) from None

        self.doc.pencils[name] = pencil

    def _parse_representations(self, name: str) -> None:
        path = 'representations.{}'.format(name)
        raw = self.raw['representations'][name]
        pencil = self._ref('pencils', raw['pencil'], path + '.pencil')
        images = [_matrix(m, '{}.images[{}]'.format(path, index))
                  for index, m in enumerate(raw['images'])]
        q_op = _matrix(raw['q_op'], path + '.q_op')

        try:
            rep = BunchRepresentation(pencil, images, q_op)
        except ValueError as e:
            raise InputError(path, str(e)) from None

        self.doc.representations[name] = rep

    def _parse_families(self, name: str) -> None:
        path = 'families.{}'.format(name)
        members = [self._ref('algebras', member,
                             '{}[{}]'.format(path, index))
                   for index, member in enumerate(self.raw['families'][name])]

        try:
            family = BracketFamily(members, label=name)
        except ValueError as e:
            raise InputError(path, str(e)) from None

        self.doc.families[name] = family


def parse_input(text: str) -> InputDocument:
    """
    Parse and validate an input document.

    Unknown fields, malformed rationals, out-of-range or duplicate
    structure constants, entries with ``i >= j``, unresolved references and
    shape mismatches are all rejected.

    :raises InputError: with the location of the first problem found
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError('', 'invalid JSON: {}'.format(e)) from None

    return parse_document(raw)


def parse_document(raw: Any) -> InputDocument:
    """
    Like :func:`parse_input`, for a document that is already decoded.
    """
    _validate(raw, 'input')
    return _Parser(raw).parse()


# Reports


def render_value(value: Any) -> Any:
    """
    A JSON form of a counterexample side.
    """
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Element):
        return {'terms': _terms_entry(value)}
    if isinstance(value, Matrix):
        return {'matrix': _matrix_entry(value)}
    if isinstance(value, SparseTensor3):
        return {'tensor': {'dim': value.dim,
                           'entries': [[i, j, k, format_rational(c)]
                                       for (i, j, k), c in value.items()]}}
    if isinstance(value, (tuple, list)):
        return [render_value(v) for v in value]

    return str(value)


def _counterexample_to_dict(cex: Counterexample) -> Dict[str, Any]:
    return {'indices': render_value(list(cex.indices)),
            'lhs': render_value(cex.lhs),
            'rhs': render_value(cex.rhs),
            'clause': cex.clause}


def report_to_dict(report: CheckReport) -> Dict[str, Any]:
    """
    The JSON form of a check report, clauses included.
    """
    data: Dict[str, Any] = {
        'identity': report.identity_name,
        'holds': report.holds,
        'tuples_checked': report.tuples_checked,
        'counterexample': (_counterexample_to_dict(report.counterexample)
                           if report.counterexample is not None else None),
        'clauses': [report_to_dict(c) for c in report.clauses],
        'notes': list(report.notes),
    }
    if report.counterexamples:
        data['counterexamples'] = [_counterexample_to_dict(c)
                                   for c in report.counterexamples]

    return data


class ReportDocument:
    """
    The result of one command: the checks run, the overall verdict and how
    long it took.

    Apart from ``timing`` the output only depends on the command and its
    inputs.
    """

    def __init__(self, command: Sequence[str]):
        self.command = list(command)
        self.checks: List[CheckReport] = []
        self.extra: Dict[str, Any] = {}
        self.failed = False
        self._started = time.perf_counter()

    def add(self, report: CheckReport) -> None:
        self.checks.append(report)
        if not report.holds:
            self.failed = True

    @property
    def verdict(self) -> str:
        return 'fails' if self.failed else 'holds'

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'tool': 'tinybunch',
            'version': __version__,
            'command': self.command,
            'checks': [report_to_dict(r) for r in self.checks],
            'verdict': self.verdict,
            'timing': {'seconds': round(time.perf_counter() - self._started,
                                        6)},
        }
        data.update(self.extra)
        return data

    def to_text(self) -> str:
        lines = []
        for report in self.checks:
            lines.extend(_report_lines(report, 0))
        return '\n'.join(lines)


def _report_lines(report: CheckReport, depth: int) -> List[str]:
    indent = '  ' * depth
    line = '{}{}: {} ({} tuples)'.format(
        indent, report.identity_name,
        'holds' if report.holds else 'FAILS', report.tuples_checked)
    lines = [line]

    cex = report.counterexample
    if cex is not None and not report.clauses:
        lines.append('{}  at {}: lhs = {!r}, rhs = {!r}'.format(
            indent, cex.indices, cex.lhs, cex.rhs))
    for note in report.notes:
        lines.append('{}  note: {}'.format(indent, note))
    for clause in report.clauses:
        lines.extend(_report_lines(clause, depth + 1))

    return lines
