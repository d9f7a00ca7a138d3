import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_ch.cone import (
    BadFaceCount,
    ConeSpec,
    GoodnessError,
    InvalidCone,
    NotBasisExtendable,
    NotPrimitive,
    NotStronglyConvex,
    RedundantNormal,
    enumerate_edges,
    enumerate_faces,
    facet_is_exposed,
    make_ck,
    make_orthant,
    make_simplex_cone,
    make_square_cone,
    standard_cone,
    validate_good,
)
from toric_ch.exact import is_primitive
from toric_ch.oracle import random_unimodular


def pair(u, v):
    return sum(a * b for a, b in zip(u, v))


def test_make_ck_normals():
    assert make_ck(0).normals == ((1, 0, 1), (0, -1, 1), (0, 0, 1), (-1, -1, 1))
    assert make_ck(1).normals == ((1, 0, 1), (0, -1, 1), (0, 1, 1), (-1, 1, 1))
    assert (0, 2, 1) in make_ck(2).normals and (-1, 3, 1) in make_ck(2).normals
    with pytest.raises(ValueError):
        make_ck(-1)


def test_square_cone_normals():
    assert make_square_cone().normals == ((1, 0, 0), (0, -1, 1), (0, 1, 0), (-1, 0, 1))


def test_simplex_cone_normals():
    assert make_simplex_cone(1).normals == ((1, 0), (-1, 1))
    assert len(make_simplex_cone(2).normals) == 3


def test_standard_cone_of_segment():
    assert standard_cone([((1,), 0), ((-1,), 1)]).normals == ((1, 0), (-1, 1))


@pytest.mark.parametrize("k", range(9))
def test_ck_good_with_four_edges(k):
    cone = validate_good(make_ck(k))
    assert len(cone.edges) == 4
    assert [e.active for e in cone.edges] == [(0, 1), (0, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize(
    "spec",
    [make_ck(1), make_ck(4), make_square_cone(), make_orthant(3), make_orthant(4)]
    + [make_simplex_cone(n) for n in (1, 2, 3)],
    ids=lambda s: s.name,
)
def test_edge_sign_pattern(spec):
    cone = validate_good(spec)
    for e in cone.edges:
        assert is_primitive(e.generator)
        for j, nu in enumerate(spec.normals):
            if j in e.active:
                assert pair(e.generator, nu) == 0
            else:
                assert pair(e.generator, nu) > 0


def test_orthant_edges_are_coordinate_rays():
    cone = validate_good(make_orthant(3))
    gens = sorted(e.generator for e in cone.edges)
    assert gens == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_simplex_cone_edges(n):
    assert len(validate_good(make_simplex_cone(n)).edges) == n + 1


def test_face_counts():
    def by_codim(spec):
        faces = enumerate_faces(spec)
        return [sum(f.codim == c for f in faces) for c in range(1, spec.n + 1)]

    assert by_codim(make_ck(1)) == [4, 4]
    assert by_codim(make_orthant(3)) == [3, 3]
    assert by_codim(make_square_cone()) == [4, 4]
    assert by_codim(make_orthant(4)) == [4, 6, 4]


def test_faces_form_a_lattice():
    spec = make_orthant(4)
    faces = {f.active: f for f in enumerate_faces(spec)}
    for f in faces.values():
        for g in faces.values():
            union = f.active | g.active
            common = set(f.generators) & set(g.generators)
            if union in faces:
                assert common <= set(faces[union].generators)
            else:
                assert not common  # only the apex is on both


# --- failures --------------------------------------------------------------


def test_half_plane_not_strongly_convex():
    with pytest.raises(NotStronglyConvex):
        validate_good(ConeSpec(2, ((1, 0), (-1, 0))))


def test_not_primitive():
    with pytest.raises(NotPrimitive) as info:
        validate_good(ConeSpec(2, ((1, 0), (0, 2))))
    assert info.value.j == 1


def test_redundant_normal():
    with pytest.raises(RedundantNormal) as info:
        validate_good(ConeSpec(2, ((1, 0), (0, 1), (1, 1))))
    assert info.value.j == 2


def pyramid_cone():
    # standard cone over a square pyramid; the apex ray lies on four facets
    return standard_cone(
        [((0, 0, 1), 0), ((-1, 0, -1), 1), ((1, 0, -1), 1), ((0, -1, -1), 1), ((0, 1, -1), 1)]
    )


def test_non_simple_vertex():
    with pytest.raises(BadFaceCount) as info:
        validate_good(pyramid_cone())
    assert len(info.value.face.active) == 4


def test_not_basis_extendable():
    spec = ConeSpec(3, ((1, 0, 0), (0, 1, 0), (1, 1, 2)))
    assert validate_good(spec)  # codim-2 faces are fine here
    bad = ConeSpec(3, ((1, 0, 0), (1, 2, 0), (0, 0, 1)))
    with pytest.raises(NotBasisExtendable) as info:
        validate_good(bad)
    assert "basis" in info.value.clause


def test_goodness_errors_name_clause():
    for cls in (NotPrimitive, NotStronglyConvex, RedundantNormal, BadFaceCount, NotBasisExtendable):
        assert issubclass(cls, GoodnessError) and cls.clause


def test_malformed_specs():
    with pytest.raises(InvalidCone):
        ConeSpec(3, ((1, 0),))
    with pytest.raises(InvalidCone):
        ConeSpec(2, ((0, 0), (1, 0)))
    with pytest.raises(InvalidCone):
        ConeSpec(2, ((1, 0), (2, 0)))
    with pytest.raises(InvalidCone):
        ConeSpec(2, ((1.0, 0), (0, 1)))
    with pytest.raises(InvalidCone):
        ConeSpec(1, ((1,),))


def test_facet_exposed_direct():
    spec = ConeSpec(2, ((1, 0), (0, 1), (1, 1)))
    assert facet_is_exposed(spec, 0) and facet_is_exposed(spec, 1)
    assert not facet_is_exposed(spec, 2)


# --- unimodular invariance --------------------------------------------------

families = [make_ck(0), make_ck(1), make_ck(3), make_square_cone(), make_simplex_cone(2), make_orthant(3)]
not_good = [
    ConeSpec(3, ((1, 0, 0), (1, 2, 0), (0, 0, 1))),
    ConeSpec(3, ((1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1))),
]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(families + not_good))
def test_goodness_unimodular_invariant(seed, spec):
    u = random_unimodular(3, random.Random(seed))
    moved = spec.transformed(u)

    def outcome(s):
        try:
            return [e.active for e in validate_good(s).edges]
        except GoodnessError as e:
            return type(e)

    assert outcome(moved) == outcome(spec)


def test_pyramid_edges_skip_the_apex_ray():
    spec = pyramid_cone()
    assert len(enumerate_edges(spec)) == 4  # base vertices only
