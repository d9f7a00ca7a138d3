from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_ch.exact import (
    Infeasible,
    IntMat,
    NoSolution,
    NotCompletable,
    complete_to_unimodular,
    hnf,
    in_column_lattice,
    is_primitive,
    kernel_lattice_basis,
    positive_combination,
    primitive_part,
    snf,
    solve_dilated,
    verify_farkas,
)

entries = st.integers(min_value=-9, max_value=9)


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(IntMat)


def matmul(a, b):
    return IntMat([[sum(a[i, k] * b[k, j] for k in range(a.ncols)) for j in range(b.ncols)] for i in range(a.nrows)])


def diag(ds):
    return IntMat([[ds[i] if i == j else 0 for j in range(len(ds))] for i in range(len(ds))])


# --- basic types -----------------------------------------------------------


def test_intmat_rejects_ragged_and_empty():
    with pytest.raises(ValueError):
        IntMat([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMat([])


def test_intmat_columns_and_product():
    m = IntMat.from_columns([(1, 0, 1), (0, -1, 1)])
    assert m.shape == (3, 2)
    assert m.col(1) == (0, -1, 1)
    assert m @ (2, 3) == (2, -3, 5)
    assert m.T.shape == (2, 3)


def test_fraction_canonical_form():
    x = Fraction(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert Fraction(0, 7) == Fraction(0, 1) and Fraction(0, 7).denominator == 1


def test_is_primitive():
    assert is_primitive((1, 0, 1))
    assert is_primitive((0, -1, 1))
    assert not is_primitive((2, 4, 6))
    with pytest.raises(ValueError):
        is_primitive((0, 0, 0))
    assert primitive_part((2, 4, -6)) == (1, 2, -3)


# --- Smith and Hermite -----------------------------------------------------


def test_snf_diag_2_3():
    assert snf(diag([2, 3])).diag == (1, 6)


def test_snf_identity():
    res = snf(IntMat.identity(3))
    assert res.diag == (1, 1, 1)
    assert abs(res.u.det()) == 1 and abs(res.v.det()) == 1


def _check_snf(a):
    res = snf(a)
    assert matmul(matmul(res.u, a), res.v) == res.s
    assert abs(res.u.det()) == 1 and abs(res.v.det()) == 1
    ds = [res.s[i, i] for i in range(min(a.shape))]
    assert all(res.s[i, j] == 0 for i in range(a.nrows) for j in range(a.ncols) if i != j)
    assert all(x >= 0 for x in ds)
    nz = [x for x in ds if x]
    assert ds[: len(nz)] == nz  # zeros trail
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    return res


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4))
def test_snf_random_4x4(a):
    _check_snf(a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_snf_random_shapes(r, c, data):
    _check_snf(data.draw(matrices(r, c)))


def test_snf_deterministic():
    a = IntMat([[4, 6, 2], [2, -8, 6], [7, 1, 1]])
    assert snf(a) == snf(IntMat([[4, 6, 2], [2, -8, 6], [7, 1, 1]]))


def test_hnf_small():
    res = hnf(IntMat([[2, 1], [0, 1]]))
    assert matmul(IntMat([[2, 1], [0, 1]]), res.u) == res.h
    pivots = [res.h[i, j] for i, j in res.pivots]
    assert pivots[0] * pivots[1] == 2


def test_hnf_identity():
    assert hnf(IntMat.identity(3)).h == IntMat.identity(3)


@settings(max_examples=50, deadline=None)
@given(matrices(3, 5))
def test_hnf_random_membership(a):
    res = hnf(a)
    assert matmul(a, res.u) == res.h
    assert abs(res.u.det()) == 1
    for i, j in res.pivots:
        assert res.h[i, j] > 0
        for jj in range(j):
            assert 0 <= res.h[i, jj] < res.h[i, j]
    # the original columns lie in the lattice of h, and vice versa
    for col in a.columns():
        assert in_column_lattice(res.h if res.rank else a, col)
    for col in res.h.columns():
        assert in_column_lattice(a, col)


# --- kernels ---------------------------------------------------------------


def test_kernel_one_by_two():
    (k,) = kernel_lattice_basis(IntMat([[1, 1]]))
    assert k in ((1, -1), (-1, 1))


def test_kernel_simplex_style_columns():
    beta = IntMat.from_columns([(1, 0, 1), (0, 1, 1), (0, 0, 1), (-1, -1, 1)])
    (k,) = kernel_lattice_basis(beta)
    assert beta @ k == (0, 0, 0)
    assert sum(k) == 0


def test_kernel_full_rank_square():
    assert kernel_lattice_basis(IntMat([[2, 1], [1, 1]])) == []


@settings(max_examples=50, deadline=None)
@given(matrices(2, 4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_kernel_saturated(a, coeffs):
    basis = kernel_lattice_basis(a)
    rank = snf(a).rank
    assert len(basis) == 4 - rank
    for k in basis:
        assert a @ k == (0, 0)
    # any integer kernel vector, e.g. a primitive rescaling of a rational
    # combination of the basis, is an integer combination of the basis
    if basis:
        x = tuple(sum(c * k[i] for c, k in zip(coeffs, basis)) for i in range(4))
        if any(x):
            x = primitive_part(x)
            assert in_column_lattice(IntMat.from_columns(basis), x)


# --- completion and dilated solves ----------------------------------------


def test_complete_e1_e2():
    assert complete_to_unimodular([(1, 0, 0), (0, 1, 0)]) == (0, 0, 1)


def test_complete_c1_edge():
    vs = [(1, 0, 1), (0, 1, 1)]
    eta = complete_to_unimodular(vs)
    assert IntMat.from_columns(vs + [eta]).det() == 1


def test_complete_rejects_non_primitive():
    with pytest.raises(NotCompletable):
        complete_to_unimodular([(2, 0)])
    with pytest.raises(NotCompletable):
        complete_to_unimodular([(1, 1, 0), (1, -1, 0)])


sl3_steps = st.lists(st.tuples(st.integers(0, 1), st.integers(-2, 2)), min_size=1, max_size=5)


@settings(max_examples=40, deadline=None)
@given(sl3_steps)
def test_complete_invariant_under_re_presentation(steps):
    vs = [[1, 0, 1], [0, 1, 1]]
    ref = complete_to_unimodular(vs)
    # replace the pair by another basis of the same sublattice, keeping orientation
    a, b = list(vs[0]), list(vs[1])
    for which, t in steps:
        if which:
            a = [x + t * y for x, y in zip(a, b)]
        else:
            b = [x + t * y for x, y in zip(b, a)]
    assert complete_to_unimodular([a, b]) == ref


def test_solve_dilated_identity():
    assert solve_dilated(IntMat.identity(3), (4, -1, 2)) == (1, (4, -1, 2))


def test_solve_dilated_scalar():
    assert solve_dilated(IntMat([[2]]), (1,)) == (2, (1,))


def test_solve_dilated_ck_eta():
    beta = IntMat.from_columns([(1, 0, 1), (0, -1, 1), (0, 1, 1), (-1, 1, 1)])
    n, x = solve_dilated(beta, (1, 1, 1))
    assert n == 1
    assert beta @ x == (1, 1, 1)
    assert beta @ (0, 0, 2, -1) == (1, 1, 1)


def test_solve_dilated_outside_span():
    with pytest.raises(NoSolution):
        solve_dilated(IntMat([[1, 0], [0, 0]]), (0, 1))


@settings(max_examples=40, deadline=None)
@given(matrices(2, 3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_dilated_minimal(a, x0):
    y = a @ x0
    if not any(y):
        return
    n, x = solve_dilated(a, y)
    assert n == 1 and a @ x == y
    # halve: the smallest dilation of y/g is exactly the one that works
    g = 0
    for v in y:
        from math import gcd

        g = gcd(g, v)
    yp = tuple(v // g for v in y)
    n, x = solve_dilated(a, yp)
    assert a @ x == tuple(n * v for v in yp)
    for m in range(1, n):
        assert not in_column_lattice(a, tuple(m * v for v in yp))


# --- positive combinations --------------------------------------------------


def ck_beta(k):
    return IntMat.from_columns([(1, 0, 1), (0, -1, 1), (0, k, 1), (-1, 2 * k - 1, 1)])


@pytest.mark.parametrize("k", range(1, 7))
def test_positive_combination_ck(k):
    a = positive_combination(ck_beta(k), (0, 0, 1))
    assert ck_beta(k) @ a == (0, 0, 1)
    assert min(a) > 0


def test_positive_combination_c0_infeasible():
    with pytest.raises(Infeasible) as info:
        positive_combination(ck_beta(0), (0, 0, 1))
    assert verify_farkas(ck_beta(0), (0, 0, 1), info.value.certificate)


def test_positive_combination_square_sum():
    cols = IntMat.from_columns([(1, 0, 0), (0, 1, 0), (1, 1, 1)])
    assert positive_combination(cols, (2, 2, 1)) == (1, 1, 1)


def test_positive_combination_outside_span():
    cols = IntMat.from_columns([(1, 0, 0), (0, 1, 0)])
    with pytest.raises(Infeasible) as info:
        positive_combination(cols, (1, 1, 1))
    assert verify_farkas(cols, (1, 1, 1), info.value.certificate)


def test_verify_farkas_rejects_junk():
    assert not verify_farkas(ck_beta(0), (0, 0, 1), (0, 0, 0))
    assert not verify_farkas(ck_beta(1), (0, 0, 1), (1, 0, 0))


@settings(max_examples=60, deadline=None)
@given(matrices(2, 3), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_positive_combination_witness_or_certificate(a, t):
    try:
        w = positive_combination(a, t)
    except Infeasible as e:
        assert verify_farkas(a, t, e.certificate)
        # brute force: no strictly positive small rational combination exists
        for xs in product([Fraction(1, 2), 1, 2, 3], repeat=3):
            assert a @ xs != tuple(t)
    else:
        assert min(w) > 0
        assert a @ w == tuple(Fraction(x) for x in t)
