"""Tests for the exact integer linear algebra kernel.

Expected values for the worked examples were computed by independent
oracles kept in this file: a bounded lattice-enumeration canonicalizer for
Hermite forms, the gcd-of-minors formula for Smith invariant factors, and
full enumeration over finite moduli for kernels.
"""

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centerlax.intlinalg import (
    CongruenceSolver,
    IntMatrix,
    cokernel_invariants,
    det,
    hnf,
    hstack,
    kernel_mod,
    moduli_rows,
    snf,
    solve_mod,
    vstack,
    xgcd,
)

# ----------------------------------------------------------------------
# oracles


def lattice_points(rows, bound):
    """All integer combinations of the rows with coefficients in [-bound, bound]."""
    pts = set()
    n = len(rows[0])
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(rows)):
        v = tuple(sum(c * row[j] for c, row in zip(coeffs, rows)) for j in range(n))
        pts.add(v)
    return pts


def hnf_oracle_2x2(rows, bound=12):
    """Canonical basis of a rank-2 planar lattice by brute enumeration.

    Picks the vector with smallest positive leading coordinate, then the
    smallest positive second coordinate among vectors with zero leading
    coordinate, and reduces the first row's trailing entry into range.
    """
    pts = lattice_points(rows, bound)
    lead = min(v[0] for v in pts if v[0] > 0)
    second = min(v[1] for v in pts if v[0] == 0 and v[1] > 0)
    tail = min(v[1] % second for v in pts if v[0] == lead)
    return [[lead, tail], [0, second]]


def minors_gcd(rows, k):
    """gcd of all k x k minors, the classical invariant-factor oracle."""
    m, n = len(rows), len(rows[0])
    g = 0
    for ris in itertools.combinations(range(m), k):
        for cjs in itertools.combinations(range(n), k):
            sub = IntMatrix([[rows[i][j] for j in cjs] for i in ris])
            g = math.gcd(g, det(sub))
    return g


def in_rowspan_hnf(basis, vec):
    """Integer row-span membership against a matrix already in Hermite form."""
    residual = list(vec)
    for row in basis:
        col = next((j for j, x in enumerate(row) if x), None)
        if col is None:
            continue
        if residual[col] % row[col] == 0:
            q = residual[col] // row[col]
            for j in range(len(residual)):
                residual[j] -= q * row[j]
    return not any(residual)


def is_hermite_form(matrix):
    """The convention: positive pivots, reduced above, echelon, zero rows last."""
    last_col = -1
    seen_zero = False
    for row in matrix:
        col = next((j for j, x in enumerate(row) if x), None)
        if col is None:
            seen_zero = True
            continue
        if seen_zero or col <= last_col:
            return False
        pivot = row[col]
        if pivot <= 0:
            return False
        for other in matrix:
            if other is row:
                break
            if not 0 <= other[col] < pivot:
                return False
        last_col = col
    return True


# ----------------------------------------------------------------------
# Hermite form


def test_hnf_identity():
    m = IntMatrix.identity(3)
    res = hnf(m)
    assert res.form == m
    assert res.left_transform == m


def test_hnf_row_permutation():
    res = hnf(IntMatrix([[0, 1], [1, 0]]))
    assert res.form == IntMatrix.identity(2)


def test_hnf_2x2_matches_enumeration_oracle():
    rows = [[2, 4], [6, 8]]
    expected = hnf_oracle_2x2(rows)
    assert expected == [[2, 0], [0, 4]]  # frozen from the oracle
    res = hnf(IntMatrix(rows))
    assert [list(r) for r in res.form] == expected
    # invariant-factor cross-check: d1 = gcd of entries, d1*d2 = |det|
    assert minors_gcd(rows, 1) == 2
    assert minors_gcd(rows, 2) == 8


def test_hnf_transform_is_unimodular():
    m = IntMatrix([[2, 4], [6, 8]])
    res = hnf(m)
    assert abs(det(res.left_transform)) == 1
    assert res.left_transform @ m == res.form


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_hnf_properties(rows, cols, data):
    entries = data.draw(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    m = IntMatrix(entries)
    res = hnf(m)
    assert res.left_transform @ m == res.form
    assert abs(det(res.left_transform)) == 1
    assert is_hermite_form(res.form)
    # idempotence
    assert hnf(res.form).form == res.form


# ----------------------------------------------------------------------
# Smith form


def test_snf_zero_matrix():
    res = snf(IntMatrix.zeros(2, 3))
    assert res.form == IntMatrix.zeros(2, 3)
    assert res.invariant_factors == ()


def test_snf_diag_3_5():
    rows = [[3, 0], [0, 5]]
    d1 = minors_gcd(rows, 1)
    d2 = minors_gcd(rows, 2) // d1
    assert (d1, d2) == (1, 15)
    res = snf(IntMatrix(rows))
    assert res.invariant_factors == (1, 15)


def test_snf_2x2():
    rows = [[2, 4], [6, 8]]
    d1 = minors_gcd(rows, 1)
    d2 = minors_gcd(rows, 2) // d1
    assert (d1, d2) == (2, 4)
    res = snf(IntMatrix(rows))
    assert res.invariant_factors == (2, 4)
    assert res.form == IntMatrix([[2, 0], [0, 4]])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_properties(rows, cols, data):
    entries = data.draw(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    m = IntMatrix(entries)
    res = snf(m)
    assert res.left_transform @ m @ res.right_transform == res.form
    assert abs(det(res.left_transform)) == 1
    assert abs(det(res.right_transform)) == 1
    for i in range(res.form.rows):
        for j in range(res.form.cols):
            if i != j:
                assert res.form[i][j] == 0
    factors = res.invariant_factors
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
    # gcd-of-minors oracle for the first factor
    if factors:
        assert factors[0] == minors_gcd(entries, 1)


# ----------------------------------------------------------------------
# kernels and solving over mixed moduli


def test_kernel_identity_over_Z_is_empty():
    k = kernel_mod(IntMatrix.identity(3), (0, 0, 0), (0, 0, 0))
    assert k.rows == 0


def test_kernel_2_mod_4():
    # enumerate x in Z/4 with 2x = 0 mod 4: {0, 2}
    solutions = {x for x in range(4) if (2 * x) % 4 == 0}
    assert solutions == {0, 2}
    k = kernel_mod(IntMatrix([[2]]), (4,), (4,))
    assert [list(r) for r in k] == [[2]]


def test_kernel_rows_annihilate():
    rng = random.Random(7)
    for _ in range(30):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = IntMatrix(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        )
        target = tuple(rng.choice([0, 2, 3, 4, 6]) for _ in range(cols))
        source = tuple(rng.choice([0, 2, 3, 4, 6]) for _ in range(rows))
        k = kernel_mod(m, target, source)
        for row in k:
            image = [sum(row[i] * m[i][j] for i in range(rows)) for j in range(cols)]
            for x, mod in zip(image, target):
                assert x % mod == 0 if mod else x == 0


def test_kernel_matches_enumeration_over_finite_moduli():
    rng = random.Random(20240)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = IntMatrix(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        )
        target = tuple(rng.choice([2, 3, 4, 6]) for _ in range(cols))
        source = tuple(rng.choice([2, 3, 4, 6]) for _ in range(rows))
        k = kernel_mod(m, target, source)
        # independent oracle: enumerate the whole source group
        solutions = set()
        for x in itertools.product(*[range(s) for s in source]):
            image = [sum(x[i] * m[i][j] for i in range(rows)) for j in range(cols)]
            if all(v % mod == 0 for v, mod in zip(image, target)):
                solutions.add(x)
        # span of the kernel rows, enumerated by closure under addition
        span = {(0,) * rows}
        frontier = [(0,) * rows]
        gens = [tuple(r) for r in k]
        while frontier:
            base = frontier.pop()
            for g in gens:
                nxt = tuple((b + v) % s for b, v, s in zip(base, g, source))
                if nxt not in span:
                    span.add(nxt)
                    frontier.append(nxt)
        assert solutions <= span
        # when the system descends to the source quotient, spans agree exactly
        descends = all(
            all((s * m[i][j]) % (target[j] or 0) == 0 if target[j] else s * m[i][j] == 0
                for j in range(cols))
            for i, s in enumerate(source)
        )
        if descends:
            assert span == solutions


def test_kernel_bound_boxed_over_Z():
    rng = random.Random(99)
    for _ in range(15):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        m = IntMatrix(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        )
        k = kernel_mod(m, (0,) * cols, (0,) * rows)
        for x in itertools.product(range(-3, 4), repeat=rows):
            image = [sum(x[i] * m[i][j] for i in range(rows)) for j in range(cols)]
            if not any(image):
                assert in_rowspan_hnf([list(r) for r in k], x)


def test_solve_zero_rhs():
    res = solve_mod(IntMatrix([[3, 1], [0, 2]]), (0, 0), (0, 0))
    assert res.solution == (0, 0)


def test_solve_3_does_not_divide_1():
    res = solve_mod(IntMatrix([[3]]), (1,), (0,))
    assert res.solution is None


def test_solve_finds_witness():
    # x * [[2, 0], [0, 3]] = (4, 3) over Z
    res = solve_mod(IntMatrix([[2, 0], [0, 3]]), (4, 3), (0, 0))
    assert res.solution == (2, 1)


def test_solver_reuses_factorization():
    solver = CongruenceSolver(IntMatrix([[2], [3]]), (0,))
    assert solver.solve((1,)) is not None  # 2x + 3y = 1
    assert solver.solve((5,)) is not None
    x = solver.solve((1,))
    assert 2 * x[0] + 3 * x[1] == 1


def test_solve_mod_respects_moduli():
    # 2x = 2 mod 4 has solutions x in {1, 3}
    res = solve_mod(IntMatrix([[2]]), (2,), (4,))
    assert res.solution is not None
    assert (2 * res.solution[0] - 2) % 4 == 0


def test_cokernel_surjective_is_empty():
    assert cokernel_invariants(IntMatrix.identity(3), (0, 0, 0)) == ()


def test_cokernel_index_two():
    assert cokernel_invariants(IntMatrix([[2]]), (0,)) == (2,)


def test_cokernel_free_summand():
    # image of (1, 0) inside Z^2 leaves a free Z factor
    assert cokernel_invariants(IntMatrix([[1, 0]]), (0, 0)) == (0,)


def test_cokernel_invertible_square_over_moduli_is_empty():
    assert cokernel_invariants(IntMatrix.identity(2), (4, 6)) == ()


def test_cokernel_matches_group_size():
    rng = random.Random(5)
    for _ in range(25):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        m = IntMatrix(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        )
        target = tuple(rng.choice([2, 3, 4]) for _ in range(cols))
        inv = cokernel_invariants(m, target)
        assert 0 not in inv  # finite target group
        # oracle: size of the quotient by enumeration of the image subgroup
        image = {(0,) * cols}
        frontier = [(0,) * cols]
        gens = [tuple(r) for r in m] + [tuple(r) for r in moduli_rows(target)]
        while frontier:
            base = frontier.pop()
            for g in gens:
                nxt = tuple((b + v) % t for b, v, t in zip(base, g, target))
                if nxt not in image:
                    image.add(nxt)
                    frontier.append(nxt)
        quotient_size = math.prod(target) // len(image)
        assert math.prod(inv) == quotient_size


# ----------------------------------------------------------------------
# matrix plumbing


def test_matrix_shapes_and_stacking():
    a = IntMatrix([[1, 2]])
    b = IntMatrix([[3, 4]])
    assert vstack(a, b) == IntMatrix([[1, 2], [3, 4]])
    assert hstack(a, b) == IntMatrix([[1, 2, 3, 4]])
    with pytest.raises(ValueError):
        IntMatrix([], cols=None)
    empty = IntMatrix([], cols=3)
    assert empty.rows == 0 and empty.cols == 3


def test_matrix_is_immutable():
    m = IntMatrix([[1]])
    with pytest.raises(AttributeError):
        m.rows = 5


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        kernel_mod(IntMatrix([[1, 2]]), (0,), (0,))
    with pytest.raises(ValueError):
        solve_mod(IntMatrix([[1, 2]]), (1,), (0, 0))


def test_xgcd_invariants():
    for a in range(-8, 9):
        for b in range(-8, 9):
            g, x, y = xgcd(a, b)
            assert g == math.gcd(a, b)
            assert x * a + y * b == g
