import math
import random
from itertools import combinations

import pytest

from toric_ch.cone import ConeSpec, make_ck, make_orthant, make_simplex_cone, make_square_cone, validate_good
from toric_ch.exact import IntMat, in_column_lattice, kernel_lattice_basis
from toric_ch.invariants import AbelianGroup, chern_data, fundamental_group
from toric_ch.oracle import random_good_cone, random_unimodular

# good, simply connected, kernel (1, -2, 1, -2): c = 2
RECTANGLE = ConeSpec(3, ((1, 0, 0), (0, 1, 0), (-1, 0, 2), (0, -1, 1)), "rectangle")


@pytest.mark.parametrize("k", range(1, 6))
def test_ck_simply_connected(k):
    assert fundamental_group(validate_good(make_ck(k))).is_trivial


def test_orthant_trivial():
    assert str(fundamental_group(validate_good(make_orthant(3)))) == "1"


@pytest.mark.parametrize("p,q", [(3, 1), (5, 2), (7, 3), (2, 1)])
def test_two_dim_lens(p, q):
    cone = validate_good(ConeSpec(2, ((0, 1), (p, -q))))
    g = fundamental_group(cone)
    assert g.invariant_factors == (p,)
    assert g.order == p and str(g) == f"Z/{p}"


def test_group_rendering():
    assert str(AbelianGroup((2, 6))) == "Z/2 x Z/6"
    assert AbelianGroup((), 1).order is None


@pytest.mark.parametrize("spec", [make_ck(0), make_ck(2), make_simplex_cone(2), make_square_cone()], ids=str)
def test_chern_vanishes(spec):
    data = chern_data(validate_good(spec))
    assert data.chern_divisibility == 0 and data.c1_vanishes
    assert data.grading_modulus == 0


def test_rectangle_c_two():
    cone = validate_good(RECTANGLE)
    data = chern_data(cone)
    assert fundamental_group(cone).is_trivial
    assert data.chern_divisibility == 2 and data.grading_modulus == 4
    (k,) = data.basis
    assert cone.beta @ k == (0, 0, 0)


def test_orthant_empty_kernel():
    data = chern_data(validate_good(make_orthant(3)))
    assert data.basis == () and data.chern_divisibility == 0


def _minor_gcd(beta: IntMat) -> int:
    g = 0
    for cols in combinations(range(beta.ncols), beta.nrows):
        g = math.gcd(g, IntMat.from_columns([beta.col(j) for j in cols]).det())
    return g


@pytest.mark.parametrize("seed", range(25))
def test_group_order_matches_minor_gcd(seed):
    rng = random.Random(seed)
    cone = random_good_cone(2 + seed % 3, rng)
    assert fundamental_group(cone).order == _minor_gcd(cone.beta)


HEXAGON = ConeSpec(3, ((1, 0, 1), (1, 1, 1), (0, 1, 1), (-1, 0, 1), (-1, -1, 1), (0, -1, 1)), "hexagon")
# same polygon directions, last coordinates changed: c = 2
SKEWED = ConeSpec(3, ((1, 0, 1), (1, 1, 1), (0, 1, 1), (-1, 0, 1), (-1, -1, 3), (0, -1, 3)), "skewed")


@pytest.mark.parametrize("seed", range(10))
def test_c_independent_of_basis(seed):
    rng = random.Random(seed)
    spec = HEXAGON if seed % 2 else SKEWED
    cone = validate_good(spec)
    basis = chern_data(cone).basis
    assert len(basis) == cone.d - 3
    u = random_unimodular(len(basis), rng)
    new = [tuple(sum(u[i, j] * basis[i][r] for i in range(len(basis))) for r in range(cone.d)) for j in range(len(basis))]
    g = 0
    for k in new:
        g = math.gcd(g, sum(k))
    assert g == chern_data(cone).chern_divisibility
    assert g == (0 if spec is HEXAGON else 2)


@pytest.mark.parametrize("seed", range(10))
def test_lift_colsum_differences(seed):
    rng = random.Random(seed)
    cone = validate_good(RECTANGLE) if seed % 2 else random_good_cone(3, rng)
    c = chern_data(cone).chern_divisibility
    x = tuple(rng.randint(-4, 4) for _ in range(cone.d))
    y = cone.beta @ x
    for k in kernel_lattice_basis(cone.beta):
        t = rng.randint(-3, 3)
        x2 = tuple(a + t * b for a, b in zip(x, k))
        assert cone.beta @ x2 == y
        diff = sum(x2) - sum(x)
        assert diff == 0 if c == 0 else diff % c == 0
    assert in_column_lattice(cone.beta, y)
