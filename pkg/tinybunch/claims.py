"""
The claims matrix: every statement checked on the catalog instances.

Each row pairs a statement with an instance and a verdict. Rows whose
statement is asserted in the source text are flagged ``CONFIRMS`` when the
mechanical verdict agrees with the assertion and ``CONTRADICTS`` otherwise.
Computed facts that nothing asserts are ``RECORDED``; statements that cannot
be decided mechanically are ``NOT-CHECKED``.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from .bimyb import (BiMYB, check_bimyb, check_even_tempered, check_prop4,
                    check_prop5, check_remark4, check_remark5, check_remark6,
                    commutator_algebra, mult_operators)
from .bunch import (MYBAlgebra, check_compatible, check_gamma_homomorphism,
                    check_mcybe_variant, check_myb, check_operator_moves_basis,
                    check_primed_lie_condition, check_remark2_criterion,
                    check_tangent_jacobi, check_tangent_of_pencil,
                    make_gamma_bunch, myb_from_pencil, tangent_bracket)
from .catalog import (DEFAULT_LAMBDAS, DEFAULT_WINDOW, make_assoc_mat,
                      make_example2, make_sl2, make_witt, make_witt_shift,
                      mat_element, check_restriction_coherence,
                      sandwich_family)
from .errors import IdentityViolation
from .liecore import Element, check_jacobi, is_derivation, op_polynomial
from .ratlin import Matrix, RationalLike
from .reports import CheckReport, agreement
from .rep import (BracketFamily, check_corollary, check_faithful,
                  check_family_closure, check_homomorphism_obstruction,
                  check_representation)

__all__ = ('CONFIRMS', 'CONTRADICTS', 'NOT_CHECKED', 'RECORDED', 'ClaimRow',
           'ClaimsMatrix', 'claims_matrix')

logger = logging.getLogger(__name__)

CONFIRMS = 'CONFIRMS'
CONTRADICTS = 'CONTRADICTS'
NOT_CHECKED = 'NOT-CHECKED'
RECORDED = 'RECORDED'

# f(R) samples as (coefficients a_0, a_1, ...; label)
POLYNOMIALS = (((3,), '3'), ((0, 1), 'x'), ((0, 0, 1), 'x^2'),
               ((1, 2, 0, 1), '1+2x+x^3'))
BIMYB_POLYNOMIALS = (((0, 0, 1), 'x^2'), ((1, 1), '1+x'),
                     ((0, -1, 0, 1), 'x^3-x'))


@dataclass(frozen=True)
class ClaimRow:
    """
    One statement checked on one instance.

    :param claim: the statement
    :param instance: what it was checked on
    :param asserted: the verdict the statement asserts, ``None`` if it
                     asserts nothing about this instance
    :param report: the mechanical verdict, ``None`` if not checked
    :param note: a remark shown next to the verdict
    """

    claim: str
    instance: str
    asserted: Optional[bool]
    report: Optional[CheckReport]
    note: str = ''

    @property
    def status(self) -> str:
        if self.report is None:
            return NOT_CHECKED
        if self.asserted is None:
            return RECORDED

        return CONFIRMS if self.report.holds == self.asserted else \
            CONTRADICTS


class ClaimsMatrix:
    """
    The rows of a claims run, in a fixed order.
    """

    def __init__(self, rows: Sequence[ClaimRow], window: int,
                 lambdas: Sequence[RationalLike]):
        self.rows = tuple(rows)
        self.window = window
        self.lambdas = tuple(str(lam) for lam in lambdas)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def find(self, claim: str, instance: Optional[str] = None) -> ClaimRow:
        """
        The first row of a claim, optionally on a given instance.
        """
        for row in self.rows:
            if row.claim == claim and instance in (None, row.instance):
                return row

        raise KeyError((claim, instance))

    @property
    def contradictions(self) -> List[ClaimRow]:
        return [row for row in self.rows if row.status == CONTRADICTS]

    def to_text(self) -> str:
        lines = ['claims matrix (window {}, lambdas {})'.format(
            self.window, ','.join(self.lambdas))]
        for row in self.rows:
            line = '{:<12} {} [{}]'.format(row.status, row.claim,
                                           row.instance)
            if row.report is not None:
                line += ' tuples={}'.format(row.report.tuples_checked)
                cex = row.report.counterexample
                if cex is not None:
                    line += ' at {}'.format(cex.indices)
                    if cex.clause:
                        line += ' ({})'.format(cex.clause)
            if row.note:
                line += ' -- {}'.format(row.note)
            lines.append(line)

        counts: Dict[str, int] = {}
        for row in self.rows:
            counts[row.status] = counts.get(row.status, 0) + 1
        lines.append(', '.join('{} {}'.format(counts.get(status, 0), status)
                               for status in (CONFIRMS, CONTRADICTS,
                                              RECORDED, NOT_CHECKED)))
        return '\n'.join(lines)

    def to_dict(self) -> Dict[str, Any]:
        from .document import report_to_dict

        return {
            'window': self.window,
            'lambdas': list(self.lambdas),
            'rows': [{
                'claim': row.claim,
                'instance': row.instance,
                'status': row.status,
                'asserted': row.asserted,
                'note': row.note,
                'report': (report_to_dict(row.report)
                           if row.report is not None else None),
            } for row in self.rows],
        }


class _Collector:
    def __init__(self):
        self.rows: List[ClaimRow] = []

    def add(self, claim: str, instance: str, asserted: Optional[bool],
            check: Optional[Callable[[], CheckReport]], note: str = ''):
        report = check() if check is not None else None
        row = ClaimRow(claim, instance, asserted, report, note)
        logger.info('%s: %s [%s]', row.status, claim, instance)
        self.rows.append(row)


def _refused(construct: Callable[[], Any],
             then: Callable[[Any], CheckReport]) -> CheckReport:
    try:
        built = construct()
    except IdentityViolation as e:
        return e.report

    return then(built)


def _witt_rows(out: _Collector, window: int, lambdas):
    witt = make_witt(window)
    for n in (1, 2, 3):
        r = make_witt_shift(n)
        name = 'witt+R_{}, W={}'.format(n, window)
        out.add('Example 1: mYB identity', name, True,
                lambda: check_myb(witt, r, window))
        out.add('Example 1: R_n^2 ≠ Id', name, True,
                lambda: check_operator_moves_basis(r @ r, window))
        out.add('Example 1: primed Lie condition', name, True,
                lambda: check_primed_lie_condition(witt, r, window))
        out.add('Remark 1: R_n is a derivation', name, None,
                lambda: is_derivation(r, witt, window))
        out.add('mCYBE with c=0', name, None,
                lambda: check_mcybe_variant(witt, r, 0, window))
        out.add('Prop 3: brackets of R^k are compatible', name, True,
                lambda: _powers_compatible(witt, r, window))
        for coeffs, label in POLYNOMIALS:
            out.add('Prop 3: f(R) is mYB', '{}, f={}'.format(name, label),
                    True,
                    lambda: check_myb(witt, op_polynomial(coeffs, r), window))
        out.add('Corollary: R + lam [ad Z, R] is mYB', name, True, None,
                note='ad Z needs a finite algebra')

    r = make_witt_shift(1)
    name = 'witt+R_1, W={}'.format(window)
    out.add('Prop 2: tangent bracket is Lie', name, True,
            lambda: check_tangent_jacobi(witt, r, window))
    out.add('mixed Jacobi of bracket and tangent bracket', name, True,
            lambda: check_compatible(witt, tangent_bracket(witt, r), window))
    out.add('Theorem 1B: linear Gamma-bunch', name, True,
            lambda: _refused(
                lambda: make_gamma_bunch(MYBAlgebra(witt, r, window)),
                lambda p: check_gamma_homomorphism(p, lambdas, window)))
    out.add('Remark 2: criterion agrees with Jacobi', name, True,
            lambda: agreement('criterion vs Jacobi',
                              check_remark2_criterion(witt, r, window),
                              check_tangent_jacobi(witt, r, window)))


def _mat_rows(out: _Collector, lambdas):
    instances = [
        (2, Matrix.diagonal([1, 0]), 'diag(1,0)'),
        (3, Matrix.diagonal([1, 0, -1]), 'diag(1,0,-1)'),
        (3, Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 2]]), 'E12+E21+2E33'),
    ]

    for n, q_matrix, q_label in instances:
        assoc = make_assoc_mat(n)
        q = mat_element(q_matrix)
        br = commutator_algebra(assoc)
        left, right = mult_operators(assoc, q)
        bi = BiMYB(br, right, left)
        name = 'Mat({}), Q={}'.format(n, q_label)

        out.add('Prop 4: multiplications are mYB with tangent XQY-YQX',
                name, True, lambda: check_prop4(assoc, q))
        for op, side in ((left, 'left'), (right, 'right')):
            m = MYBAlgebra(br, op)
            out.add('Theorem 1B: linear Gamma-bunch',
                    '{}, {}'.format(name, side), True,
                    lambda: _refused(
                        lambda: make_gamma_bunch(m),
                        lambda p: CheckReport.combine(
                            'Gamma-bunch', [
                                check_gamma_homomorphism(p, lambdas),
                                check_tangent_of_pencil(p),
                                check_jacobi(p.direction),
                                check_compatible(p.base, p.direction)])))
        out.add('Theorem 1A: Gamma-bunch gives mYB', name, True,
                lambda: _refused(
                    lambda: myb_from_pencil(make_gamma_bunch(
                        MYBAlgebra(br, left)), lambdas),
                    lambda m: m.verify()))
        out.add('Def 2B: bi-mYB structure', name, True,
                lambda: check_bimyb(bi))
        out.add('Remark 4: R1 - R2 is a derivation', name, True,
                lambda: check_remark4(bi))
        out.add('Remark 5: (R, R + xi) decomposition', name, True,
                lambda: check_remark5(br, right, left - right))
        out.add('Remark 6: q-bracket', name, True,
                lambda: check_remark6(assoc, q))
        out.add('Def 2C: even-tempered', name, True,
                lambda: check_even_tempered(bi))
        for coeffs, label in POLYNOMIALS:
            out.add('Prop 3: f(R) is mYB',
                    '{}, left, f={}'.format(name, label), True,
                    lambda: check_myb(br, op_polynomial(coeffs, left)))
        for coeffs, label in BIMYB_POLYNOMIALS:
            out.add('Prop 5: polynomials of a bi-mYB structure',
                    '{}, f={}'.format(name, label), True,
                    lambda: check_prop5(bi, coeffs))
        out.add('Prop 3: brackets of R^k are compatible', name, True,
                lambda: _powers_compatible(br, left))
        out.add('Corollary: R + lam [ad Z, R] is mYB', name, True,
                lambda: check_corollary(MYBAlgebra(br, left), lambdas))


def _powers_compatible(br, op, window=None) -> CheckReport:
    brackets = [tangent_bracket(br, op.power(k)) for k in range(4)]
    clauses = []
    for a in range(4):
        for b in range(a + 1, 4):
            clauses.append(CheckReport.combine(
                'k={}, {}'.format(a, b),
                [check_compatible(brackets[a], brackets[b], window)]))

    return CheckReport.combine('R^k compatibility', clauses)


def _example2_rows(out: _Collector, lambdas):
    for n in (3, 4):
        example = make_example2(n, Matrix.diagonal(range(1, n + 1)))
        so = example.so_pencil
        name = 'so({}), Q=diag(1..{})'.format(n, n)
        out.add('Example 2: direction is Lie', name, True,
                lambda: check_jacobi(so.direction))
        out.add('Example 2: compatible brackets', name, True,
                lambda: check_compatible(so.base, so.direction))
        out.add('Example 2: ambient Mat(n) Gamma-bunch', name, True,
                lambda: check_gamma_homomorphism(example.ambient_pencil,
                                                 lambdas))
        out.add('Example 2: restriction to so(n) is exact', name, True,
                lambda: check_restriction_coherence(example))
        out.add('Example 2: diamond closure of {bracket, XQY-YQX}', name,
                None, lambda: check_family_closure(
                    BracketFamily([so.base, so.direction])))

    out.add('Example 2: so(p,q) forms admit no homomorphism into so(n)',
            'all real forms', False, None,
            note='universal negative over all homomorphisms')


def _example3_rows(out: _Collector):
    algebra, r, rep = make_sl2()
    name = 'sl(2), R L_i = i L_i'
    out.add('Example 3: mYB identity', name, True,
            lambda: check_myb(algebra, r))
    out.add('mCYBE with c=1', name, None,
            lambda: check_mcybe_variant(algebra, r, 1))
    out.add('Remark 1: R is a derivation', name, None,
            lambda: is_derivation(r, algebra))
    out.add('Remark 2: criterion agrees with Jacobi', name, True,
            lambda: agreement('criterion vs Jacobi',
                              check_remark2_criterion(algebra, r),
                              check_tangent_jacobi(algebra, r)))

    representation = check_representation(rep)
    name = 'sl(2) fundamental, Q_R = T(L_0)'
    out.add('Def 3: representation, lambda^0 coefficient', name, True,
            lambda: representation.clause('lambda^0'))
    out.add('Def 3: representation, lambda^1 coefficient', name, True,
            lambda: representation.clause('lambda^1'))
    out.add('Def 3: faithful', name, True, lambda: check_faithful(rep))
    out.add('Example 3: obstruction to a bi-mYB homomorphism', name, True,
            lambda: check_homomorphism_obstruction(rep, r, 1))


def _theorem2_rows(out: _Collector):
    assoc = make_assoc_mat(2)
    units = [Element.basis(k) for k in range(4)]
    out.add('Theorem 2: diamond closure of the sandwich family',
            'Mat(2), XAY-YAX for the 4 matrix units', True,
            lambda: check_family_closure(sandwich_family(assoc, units)))
    out.add('Theorem 2: isotopic pair structure', 'any family', None, None,
            note='structure defined elsewhere')
    out.add('Remark 3: identities between [.,.] and [.,.]_R',
            'all mYB algebras', None, None,
            note='no candidate identities are known')
    out.add('Remark 5: existence of xi for every bi-mYB pair',
            'all bi-mYB algebras', True, None,
            note='only the given-xi direction is checked')


def claims_matrix(window: int = DEFAULT_WINDOW,
                  lambdas: Sequence[RationalLike] = DEFAULT_LAMBDAS
                  ) -> ClaimsMatrix:
    """
    Run every check on every catalog instance.

    The rows come out in a fixed order, so two runs with the same arguments
    give identical matrices.
    """
    out = _Collector()
    _witt_rows(out, window, lambdas)
    _mat_rows(out, lambdas)
    _example2_rows(out, lambdas)
    _example3_rows(out)
    _theorem2_rows(out)

    return ClaimsMatrix(out.rows, window, lambdas)
