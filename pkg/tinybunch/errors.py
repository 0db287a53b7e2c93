"""
Exceptions raised by TinyBunch.

Most problems are reported with builtin exceptions. The subclasses below only
exist where callers need more than a message: the location of a bad input, or
the report of the identity that refused a construction.
"""
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .reports import CheckReport

__all__ = ('InputError', 'IdentityViolation', 'UnsupportedError')


class InputError(ValueError):
    """
    A malformed input value.

    :param path: where the problem is, e.g. ``algebras.so3.brackets[0].i``
    :param reason: what is wrong with it
    """

    def __init__(self, path: str, reason: str):
        super().__init__('{}: {}'.format(path or '<root>', reason))
        self.path = path
        self.reason = reason


class IdentityViolation(ValueError):
    """
    A construction was refused because an identity it depends on fails.

    The failing :class:`~tinybunch.reports.CheckReport` is available as
    ``report``.
    """

    def __init__(self, report: 'CheckReport'):
        cex = report.counterexample
        where = ' at {}'.format(cex.indices) if cex is not None else ''
        super().__init__('{} fails{}'.format(report.identity_name, where))
        self.report = report


class UnsupportedError(NotImplementedError):
    """
    The operation needs a finite basis but got a graded (rule) backend.
    """
