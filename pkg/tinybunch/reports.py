"""
Verdicts of identity checks.

Every checker in TinyBunch returns a :class:`CheckReport`. Checks enumerate
basis tuples in lexicographic order, evaluate both sides of an identity
exactly and stop at the first tuple where they differ (or keep collecting
inside :func:`collecting_all_counterexamples`).

Since all identities checked here are multilinear, holding on every basis
tuple of a window means holding for every element supported in it.
"""
import contextvars
import itertools
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import (Any, Callable, Iterable, Iterator, List, Optional,
                    Sequence, Tuple)

__all__ = ('Counterexample', 'CheckReport', 'sweep', 'sweep_basis',
           'agreement', 'collecting_all_counterexamples')

logger = logging.getLogger(__name__)

_collect_all = contextvars.ContextVar(
    'collect_all', default=False)  # type: contextvars.ContextVar[bool]


@contextmanager
def collecting_all_counterexamples() -> Iterator[None]:
    """
    Make every sweep inside the ``with`` block record all counterexamples
    instead of stopping at the first one.
    """
    token = _collect_all.set(True)
    try:
        yield
    finally:
        _collect_all.reset(token)


@dataclass(frozen=True)
class Counterexample:
    """
    A tuple where an identity fails, with both sides evaluated.

    ``lhs`` and ``rhs`` are usually :class:`~tinybunch.liecore.Element`
    instances; representation checks use matrices, rank checks plain numbers.
    """

    indices: Tuple[Any, ...]
    lhs: Any
    rhs: Any
    clause: Optional[str] = None


@dataclass(frozen=True)
class CheckReport:
    """
    The verdict of an identity check.

    :param identity_name: what was checked
    :param holds: whether the identity holds on every tuple checked
    :param tuples_checked: how many tuples were evaluated
    :param counterexample: the first failing tuple (``None`` iff ``holds``)
    :param counterexamples: all failing tuples, when collected
    :param clauses: the sub-reports of a bundled check
    :param notes: free-form remarks (e.g. cross-check verdicts)
    """

    identity_name: str
    holds: bool
    tuples_checked: int
    counterexample: Optional[Counterexample] = None
    counterexamples: Tuple[Counterexample, ...] = ()
    clauses: Tuple['CheckReport', ...] = ()
    notes: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.holds != (self.counterexample is None):
            raise ValueError('a report holds exactly when it has no '
                             'counterexample')

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def combine(cls, identity_name: str, clauses: Sequence['CheckReport'],
                notes: Sequence[str] = ()) -> 'CheckReport':
        """
        Bundle several reports into one.

        The bundle holds if every clause holds; its counterexample is the one
        of the first failing clause, tagged with that clause's name.
        """
        counterexample = None
        for clause in clauses:
            if not clause.holds:
                cex = clause.counterexample
                assert cex is not None
                counterexample = Counterexample(
                    cex.indices, cex.lhs, cex.rhs,
                    cex.clause or clause.identity_name)
                break

        return cls(identity_name=identity_name,
                   holds=counterexample is None,
                   tuples_checked=sum(c.tuples_checked for c in clauses),
                   counterexample=counterexample,
                   clauses=tuple(clauses),
                   notes=tuple(notes))

    def failing_clause(self) -> Optional['CheckReport']:
        """
        The first failing clause of a bundled report.
        """
        return next((c for c in self.clauses if not c.holds), None)

    def clause(self, name: str) -> 'CheckReport':
        """
        Look up a clause by its identity name.
        """
        for clause in self.clauses:
            if clause.identity_name == name:
                return clause

        raise KeyError(name)

    def __repr__(self):
        args = ['holds={}'.format(self.holds),
                'tuples={}'.format(self.tuples_checked)]
        if self.counterexample is not None:
            args.append('at={}'.format(self.counterexample.indices))

        return '<{} {!r} {}>'.format(type(self).__name__,
                                     self.identity_name, ', '.join(args))


def sweep(identity_name: str, tuples: Iterable[Tuple[Any, ...]],
          sides: Callable[..., Tuple[Any, Any]],
          clause: Optional[str] = None) -> CheckReport:
    """
    Evaluate an identity on a sequence of tuples.

    :param identity_name: the name the report carries
    :param tuples: the tuples to check, in the order they should be tried
    :param sides: called with the tuple unpacked, returns ``(lhs, rhs)``
    :param clause: the clause name attached to counterexamples
    """
    collect_all = _collect_all.get()
    found: List[Counterexample] = []
    checked = 0

    for indices in tuples:
        checked += 1
        lhs, rhs = sides(*indices)
        if lhs != rhs:
            found.append(Counterexample(tuple(indices), lhs, rhs, clause))
            if not collect_all:
                break

    report = CheckReport(identity_name=identity_name,
                         holds=not found,
                         tuples_checked=checked,
                         counterexample=found[0] if found else None,
                         counterexamples=tuple(found) if collect_all else ())

    logger.debug('%s: %s after %d tuples', identity_name,
                 'holds' if report.holds else 'fails', checked)

    return report


def sweep_basis(identity_name: str, indices: Sequence[int], arity: int,
                sides: Callable[..., Tuple[Any, Any]],
                clause: Optional[str] = None) -> CheckReport:
    """
    Evaluate an identity on all ``arity``-tuples of basis indices, in
    lexicographic order.
    """
    return sweep(identity_name, itertools.product(indices, repeat=arity),
                 sides, clause)


def agreement(identity_name: str, first: CheckReport,
              second: CheckReport) -> CheckReport:
    """
    A report that holds when two checks reach the same verdict.
    """
    lhs, rhs = first.holds, second.holds
    return CheckReport(
        identity_name=identity_name,
        holds=lhs == rhs,
        tuples_checked=first.tuples_checked + second.tuples_checked,
        counterexample=None if lhs == rhs else Counterexample(
            (), lhs, rhs, '{} vs {}'.format(first.identity_name,
                                            second.identity_name)),
        clauses=(first, second))
