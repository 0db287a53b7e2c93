import pytest  # type: ignore

from tinybunch.bimyb import commutator_algebra, mult_operators
from tinybunch.catalog import (make_assoc_mat, make_sl2, make_so, make_witt,
                               make_witt_shift, mat_element)
from tinybunch.ratlin import Matrix


@pytest.fixture
def so3():
    return make_so(3)


@pytest.fixture
def sl2():
    return make_sl2()


@pytest.fixture
def witt():
    # Small window: the sweeps are cubic in its size
    return make_witt(window=3)


@pytest.fixture
def shift1():
    return make_witt_shift(1)


@pytest.fixture
def mat2():
    return make_assoc_mat(2)


@pytest.fixture
def q2():
    return mat_element(Matrix.diagonal([1, 0]))


@pytest.fixture
def gl2(mat2):
    return commutator_algebra(mat2)


@pytest.fixture
def mult2(mat2, q2):
    """
    Left and right multiplication by ``diag(1, 0)`` on Mat(2).
    """
    return mult_operators(mat2, q2)
