"""Tests for centralizers, centers, and the factorization universal property.

The independent oracle throughout is full enumeration: for a finite ring,
list every element and keep those commuting with the relevant images, then
compare that set with the span of the computed subring basis.
"""

import itertools

import pytest

from centerlax.factorization import (
    FactorizationObject,
    Subring,
    center,
    centralizer,
    factorization_map,
    is_factorization_object,
    tensor_unit_row,
    universal_factor,
)
from centerlax.intlinalg import IntMatrix
from centerlax.rings import (
    CayleyTable,
    ground_ring,
    hom_compose,
    identity_hom,
    make_group_ring,
    make_hom,
    make_matrix_ring,
    make_product_ring,
    make_upper_triangular,
    monomial_hom,
    ring_tensor,
    scalar_hom,
    validate_ring,
)

# ----------------------------------------------------------------------
# oracles


def enumerate_centralizer(hom):
    """Brute force: all elements of the (finite) target commuting with all
    basis images of the hom."""
    target = hom.target
    images = [target.element(hom.matrix.row(i)) for i in range(hom.source.rank)]
    return {
        s.coeffs
        for s in target.elements()
        if all(s * a == a * s for a in images)
    }


def enumerate_span(sub):
    """All elements of a finite subring, from its basis and moduli."""
    ranges = [range(m) for m in sub.moduli]
    return {
        sub.ambient.reduce(sub.to_ambient(c)) for c in itertools.product(*ranges)
    }


def diagonal_inclusion(p):
    """(Z/p) + (Z/p) -> UT2(Z/p), (x, y) |-> x E11 + y E22."""
    rr = make_product_ring(ground_ring(p), ground_ring(p))
    ut = make_upper_triangular(2, p)
    return make_hom(rr, ut, [[1, 0, 0], [0, 0, 1]])


def diagonal_projection(p):
    """UT2(Z/p) -> (Z/p) + (Z/p), forgetting the strictly upper entry."""
    ut = make_upper_triangular(2, p)
    tt = make_product_ring(ground_ring(p), ground_ring(p))
    return make_hom(ut, tt, [[1, 0], [0, 0], [0, 1]])


# ----------------------------------------------------------------------
# centralizers


def test_centralizer_of_unit_map_into_matrices_is_everything():
    hom = scalar_hom(ground_ring(2), make_matrix_ring(2, 2))
    sub = centralizer(hom)
    assert sub.size() == 16
    assert sub.basis == IntMatrix.identity(4)
    assert enumerate_span(sub) == enumerate_centralizer(hom)


def test_centralizer_of_diagonal_inclusion_is_diagonal():
    hom = diagonal_inclusion(2)
    sub = centralizer(hom)
    assert sub.size() == 4
    # oracle: enumerate the 8 elements of UT2(Z/2)
    expected = enumerate_centralizer(hom)
    assert len(expected) == 4
    assert enumerate_span(sub) == expected
    # the diagonal matrices E11, E22
    assert [list(r) for r in sub.basis] == [[1, 0, 0], [0, 0, 1]]


def test_centralizer_into_commutative_target_is_whole_target():
    hom = monomial_hom(
        make_group_ring(CayleyTable.cyclic(2), 3),
        make_group_ring(CayleyTable.cyclic(4), 3),
        [0, 2],
    )
    sub = centralizer(hom)
    assert sub.size() == hom.target.size()


def test_centralizer_can_be_noncommutative():
    hom = scalar_hom(ground_ring(2), make_matrix_ring(2, 2))
    sub = centralizer(hom)
    assert not sub.as_ring.is_commutative()


# ----------------------------------------------------------------------
# centers


def test_center_of_commutative_ring_is_itself():
    ring = make_group_ring(CayleyTable.cyclic(4), 0)
    sub = center(ring)
    assert sub.basis == IntMatrix.identity(4)
    assert sub.as_ring == ring


def test_center_of_matrix_ring_is_scalars():
    ring = make_matrix_ring(2, 2)
    sub = center(ring)
    # oracle: enumerate all 16, both by brute force and by the scalar rule
    expected = enumerate_centralizer(identity_hom(ring))
    assert expected == {(0, 0, 0, 0), (1, 0, 0, 1)}
    assert enumerate_span(sub) == expected
    assert [list(r) for r in sub.basis] == [[1, 0, 0, 1]]


def conjugacy_class_sums(table):
    """Indicator vectors of the conjugacy classes, the classical center
    basis of a group ring."""
    n = table.order
    inverse = [next(b for b in range(n) if table.mul(a, b) == table.identity)
               for a in range(n)]
    seen = set()
    sums = []
    for a in range(n):
        if a in seen:
            continue
        cls = {table.mul(table.mul(g, a), inverse[g]) for g in range(n)}
        seen |= cls
        sums.append([int(k in cls) for k in range(n)])
    return sums


def test_center_of_integral_d6_group_ring_is_class_sums():
    table = CayleyTable.dihedral(6)
    ring = make_group_ring(table, 0)
    sub = center(ring)
    expected = sorted(conjugacy_class_sums(table))
    assert sorted([list(r) for r in sub.basis]) == expected
    # additive rank 3, all free
    assert sub.moduli == (0, 0, 0)
    names = table.element_names
    e = [int(k == names.index("e")) for k in range(6)]
    rot = [int(names[k] in ("r", "r2")) for k in range(6)]
    refl = [int(names[k].endswith("s")) for k in range(6)]
    assert [list(r) for r in sub.basis] == [e, rot, refl]


def test_center_is_commutative_on_its_basis():
    for ring in (make_matrix_ring(2, 3), make_group_ring(CayleyTable.dihedral(8), 2)):
        sub = center(ring)
        assert sub.as_ring.is_commutative()


def test_center_of_product_is_product_of_centers():
    a = make_matrix_ring(2, 2)
    b = make_group_ring(CayleyTable.cyclic(2), 2)
    prod = make_product_ring(a, b)
    sub = center(prod)
    za, zb = center(a), center(b)
    embedded = [list(r) + [0] * b.rank for r in za.basis] + [
        [0] * a.rank + list(r) for r in zb.basis
    ]
    expected = Subring(prod, embedded, "expected")
    assert sub.basis == expected.basis


def test_center_of_group_ring_mod_m_matches_class_sums():
    table = CayleyTable.dihedral(6)
    ring = make_group_ring(table, 4)
    sub = center(ring)
    assert sub.moduli == (4, 4, 4)
    assert sub.size() == 64
    assert enumerate_span(sub) == enumerate_centralizer(identity_hom(ring))


def test_centralizer_contains_center_of_target():
    hom = diagonal_inclusion(3)
    sub = centralizer(hom)
    zs = center(hom.target)
    for row in zs.basis:
        assert sub.contains(row)


# ----------------------------------------------------------------------
# the factorization category


def test_multiplication_map_of_identity_is_multiplication():
    ring = make_group_ring(CayleyTable.cyclic(2), 0)
    mu = factorization_map(identity_hom(ring))
    # mu(e_i (x) z_j) = e_i * z_j with Z(R) = R here
    tensor = ring_tensor(ring, center(ring).as_ring)
    assert mu.source == tensor
    for i in range(ring.rank):
        for j in range(ring.rank):
            vec = [0] * tensor.rank
            vec[i * ring.rank + j] = 1
            expected = ring.mul_vec(ring.basis_vector(i), ring.basis_vector(j))
            assert mu.apply_vec(vec) == expected


def test_multiplication_map_hits_matrix_units():
    hom = scalar_hom(ground_ring(2), make_matrix_ring(2, 2))
    mu = factorization_map(hom)
    sub = centralizer(hom)
    e12_ambient = (0, 1, 0, 0)
    j = list(sub.basis).index(e12_ambient)
    vec = tensor_unit_row(hom.source, sub.as_ring, i=None, p=j)
    assert mu.apply_vec(vec) == e12_ambient


def test_multiplication_map_is_unital():
    hom = diagonal_inclusion(2)
    mu = factorization_map(hom)
    assert mu.apply_vec(mu.source.unit) == hom.target.unit


def test_centralizer_factorization_is_a_factorization():
    hom = diagonal_inclusion(2)
    sub = centralizer(hom)
    mu = factorization_map(hom)
    ok, witness = is_factorization_object(sub.as_ring, mu, hom)
    assert ok and witness is None
    _ = FactorizationObject(sub.as_ring, mu)


def test_initial_factorization_through_ground_ring():
    hom = diagonal_inclusion(2)
    ground = ground_ring(2)
    tensor = ring_tensor(hom.source, ground)
    rows = [hom.matrix.row(i) for i in range(hom.source.rank)]
    g = make_hom(tensor, hom.target, rows)
    ok, _ = is_factorization_object(ground, g, hom)
    assert ok
    tau = universal_factor(ground, g, hom)
    sub = centralizer(hom)
    assert tau.apply_vec((1,)) == sub.coordinates(hom.target.unit)


def test_corrupted_factorization_names_witness():
    hom = diagonal_inclusion(2)
    ground = ground_ring(2)
    tensor = ring_tensor(hom.source, ground)
    rows = [list(hom.matrix.row(i)) for i in range(hom.source.rank)]
    rows[1] = [0, 1, 0]  # corrupt the image of the second generator
    from centerlax.rings import RingHom

    g = RingHom(tensor, hom.target, IntMatrix(rows))  # bypasses validation
    ok, witness = is_factorization_object(ground, g, hom)
    assert not ok and witness == 1
    with pytest.raises(ValueError, match="basis index 1"):
        universal_factor(ground, g, hom)


def test_universal_factor_on_centralizer_itself_is_identity():
    hom = diagonal_inclusion(2)
    sub = centralizer(hom)
    mu = factorization_map(hom)
    tau = universal_factor(sub.as_ring, mu, hom)
    assert tau.is_identity()


def test_universal_factor_scalar_into_matrix_centralizer():
    hom = scalar_hom(ground_ring(2), make_matrix_ring(2, 2))
    sub = centralizer(hom)
    scalars = ground_ring(2)
    tensor = ring_tensor(hom.source, scalars)
    g = make_hom(tensor, hom.target, [list(hom.target.unit)])
    tau = universal_factor(scalars, g, hom)
    assert sub.to_ambient(tau.apply_vec((1,))) == hom.target.unit


def test_subring_as_ring_is_valid():
    for hom in (diagonal_inclusion(2), diagonal_projection(3)):
        sub = centralizer(hom)
        assert validate_ring(sub.as_ring) == []
        assert sub.embedding.source == sub.as_ring


def test_subring_rejects_nondiagonal_relations():
    # the subgroup of Z/4 + Z/4 generated by (2, 1) has a hidden relation
    # 2*(2,1) = (0,2) against its Hermite basis {(2,1), (0,2)}
    ring = make_group_ring(
        CayleyTable.direct_product(CayleyTable.cyclic(1), CayleyTable.cyclic(2)), 4
    )
    with pytest.raises(ValueError, match="relations"):
        Subring(ring, [[2, 1]], "bad")


def test_composite_centralizer_contains_both_routes():
    f = diagonal_inclusion(2)
    g = diagonal_projection(2)
    gf = hom_compose(g, f)
    z_gf = centralizer(gf)
    z_g = centralizer(g)
    # Z(g) includes into Z(g o f)
    for row in z_g.basis:
        assert z_gf.contains(row)
