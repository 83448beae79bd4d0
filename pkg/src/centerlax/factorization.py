"""Centralizers and centers of based rings, with their universal property.

The centralizer of a homomorphism f: R -> S is the subring of S commuting
with every image f(e_i); it is computed exactly as the kernel of the stacked
commutation system x * (right_mul(f(e_i)) - left_mul(f(e_i))) = 0 over the
moduli of S.  The center of R is the centralizer of the identity.

A Subring carries its canonical Hermite-form basis inside the ambient ring,
the induced structure constants on that basis, and the validated embedding
homomorphism.  Factorizations of f through a tensor R (x) C are checked and
factored through the centralizer by the universal map t |-> g(1 (x) t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .intlinalg import (
    CongruenceSolver,
    IntMatrix,
    Vector,
    hnf,
    hstack,
    kernel_mod,
    reduce_vector,
    vector_is_zero_mod,
)
from .rings import (
    BasedRing,
    RingElement,
    RingHom,
    format_combination,
    identity_hom,
    make_hom,
    ring_tensor,
)


class Subring:
    """A subring of a based ring in canonical form.

    ``basis`` rows are coefficient vectors in ambient coordinates, in Hermite
    normal form with rows that vanish in the ambient group dropped, so equal
    subrings have equal representations.  ``moduli[i]`` is the exact additive
    order of basis row i in the ambient group; construction verifies that
    these diagonal relations are the only ones, which makes expressing an
    ambient element in the basis unique and the induced structure constants
    canonical.
    """

    __slots__ = ("ambient", "basis", "moduli", "as_ring", "embedding", "_solver")

    def __init__(self, ambient: BasedRing, generator_rows: Sequence[Sequence[int]], name: str):
        rows = [list(ambient.reduce(row)) for row in generator_rows]
        rows.extend(_ambient_moduli_rows(ambient))
        if rows:
            reduced = hnf(IntMatrix(rows, cols=ambient.rank)).form
            kept = [
                row
                for row in reduced
                if not vector_is_zero_mod(row, ambient.moduli)
            ]
        else:
            kept = []
        basis = IntMatrix(kept, cols=ambient.rank)
        orders = tuple(_additive_order(row, ambient.moduli) for row in basis)
        _check_diagonal_relations(basis, orders, ambient)
        solver = CongruenceSolver(basis, ambient.moduli)

        def coords(vec):
            x = solver.solve(vec)
            return None if x is None else reduce_vector(x, orders)

        sc = []
        for i in range(basis.rows):
            row = []
            for j in range(basis.rows):
                product = ambient.mul_vec(basis.row(i), basis.row(j))
                x = coords(product)
                if x is None:
                    raise ValueError(
                        f"{name}: generators are not multiplicatively closed "
                        f"at basis pair ({i}, {j})"
                    )
                row.append(x)
            sc.append(row)
        unit = coords(ambient.unit)
        if unit is None:
            raise ValueError(f"{name}: ambient unit is not in the subring span")
        names = tuple(
            format_combination(row, ambient.basis_names) for row in basis
        )
        as_ring = BasedRing(name, names, orders, sc, unit)
        embedding = make_hom(as_ring, ambient, basis)

        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "moduli", orders)
        object.__setattr__(self, "as_ring", as_ring)
        object.__setattr__(self, "embedding", embedding)
        object.__setattr__(self, "_solver", solver)

    def __setattr__(self, name, value):
        raise AttributeError("Subring is immutable")

    @property
    def rank(self) -> int:
        return self.basis.rows

    def coordinates(self, ambient_vec: Sequence[int]) -> Vector | None:
        """Coefficients of an ambient vector in the subring basis, or None."""
        x = self._solver.solve(self.ambient.reduce(ambient_vec))
        return None if x is None else reduce_vector(x, self.moduli)

    def contains(self, ambient_vec: Sequence[int]) -> bool:
        return self.coordinates(ambient_vec) is not None

    def to_ambient(self, coeffs: Sequence[int]) -> Vector:
        return self.embedding.apply_vec(coeffs)

    def element(self, coeffs: Sequence[int]) -> RingElement:
        return self.as_ring.element(coeffs)

    def size(self) -> int | None:
        if any(m == 0 for m in self.moduli):
            return None
        return math.prod(self.moduli) if self.moduli else 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subring):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subring({self.as_ring.name!r}, rank={self.rank})"


def _ambient_moduli_rows(ambient: BasedRing) -> list[list[int]]:
    rows = []
    for i, m in enumerate(ambient.moduli):
        if m:
            row = [0] * ambient.rank
            row[i] = m
            rows.append(row)
    return rows


def _additive_order(row: Sequence[int], moduli: Sequence[int]) -> int:
    """Least k > 0 with k*row = 0 in the ambient group; 0 when infinite."""
    order = 1
    for x, m in zip(row, moduli):
        if m == 0:
            if x:
                return 0
        elif x % m:
            order = order * (m // math.gcd(m, x)) // math.gcd(
                order, m // math.gcd(m, x)
            )
    return order


def _check_diagonal_relations(
    basis: IntMatrix, orders: tuple[int, ...], ambient: BasedRing
) -> None:
    """Reject bases whose rows satisfy relations beyond their orders.

    The subring is presented on its basis rows with per-row moduli; that is
    only a faithful presentation when the relation lattice of the rows is
    exactly the diagonal one.  All centralizers over prime moduli or over Z
    satisfy this; a failure here means the ambient moduli mix in a way this
    presentation cannot express.
    """
    if basis.rows == 0:
        return
    relations = kernel_mod(basis, ambient.moduli, (0,) * basis.rows)
    expected_rows = sum(1 for o in orders if o)
    if relations.rows != expected_rows:
        raise ValueError(
            "subring basis admits relations beyond the per-row orders; "
            "this presentation is not supported"
        )
    for row in relations:
        support = [j for j, x in enumerate(row) if x]
        if len(support) != 1 or row[support[0]] != orders[support[0]]:
            raise ValueError(
                "subring basis admits non-diagonal relations; "
                "this presentation is not supported"
            )


_centralizer_cache: dict[RingHom, Subring] = {}


def centralizer(hom: RingHom, name: str | None = None) -> Subring:
    """The subring of target(hom) commuting with the image of hom.

    Solved exactly: stack the commutation matrices right_mul(a) - left_mul(a)
    for every basis image a = hom(e_i) and take the kernel over the target
    moduli.  Closure under multiplication and membership of the unit are then
    verified during subring construction, not assumed.
    """
    cached = _centralizer_cache.get(hom)
    if cached is not None:
        return cached
    target = hom.target
    blocks = []
    for i in range(hom.source.rank):
        image = hom.matrix.row(i)
        blocks.append(target.right_mul_matrix(image) - target.left_mul_matrix(image))
    if blocks:
        system = hstack(*blocks)
        stacked_moduli = target.moduli * hom.source.rank
    else:
        system = IntMatrix.zeros(target.rank, 0)
        stacked_moduli = ()
    rows = kernel_mod(system, stacked_moduli, target.moduli)
    if name is None:
        name = f"Z({hom.source.name}->{hom.target.name})"
    result = Subring(target, list(rows), name)
    _centralizer_cache[hom] = result
    return result


def center(ring: BasedRing) -> Subring:
    """The center, computed as the centralizer of the identity map."""
    return centralizer(identity_hom(ring), name=f"Z({ring.name})")


def factorization_map(hom: RingHom) -> RingHom:
    """The multiplication map R (x) Z(f) -> S, e_i (x) z_j |-> f(e_i) z_j.

    This is a ring homomorphism precisely because the z_j centralize the
    image of f; a validation failure here would signal an internal bug.
    """
    sub = centralizer(hom)
    source = ring_tensor(hom.source, sub.as_ring)
    target = hom.target
    rows = []
    for i in range(hom.source.rank):
        fi = hom.matrix.row(i)
        for j in range(sub.rank):
            rows.append(list(target.mul_vec(fi, sub.basis.row(j))))
    try:
        return make_hom(source, target, IntMatrix(rows, cols=target.rank))
    except ValueError as exc:  # mathematically impossible on correct inputs
        raise RuntimeError(
            "multiplication map out of the centralizer failed validation; "
            "this is an internal error"
        ) from exc


@dataclass(frozen=True)
class FactorizationObject:
    """A ring C with a hom g: A (x) C -> B factoring some f: A -> B."""

    ring: BasedRing
    hom: RingHom


def tensor_unit_row(
    left: BasedRing, right: BasedRing, i: int | None = None, p: int | None = None
) -> Vector:
    """Coefficients of e_i (x) c_p in the tensor basis.

    With ``i`` None the left slot holds the unit of ``left`` (giving
    1 (x) c_p); with ``p`` None the right slot holds the unit of ``right``.
    """
    lv = left.unit if i is None else left.basis_vector(i)
    rv = right.unit if p is None else right.basis_vector(p)
    return tuple(a * b for a in lv for b in rv)


def is_factorization_object(
    ring: BasedRing, hom: RingHom, f: RingHom
) -> tuple[bool, int | None]:
    """Does (ring, hom) factor f, i.e. hom(e_i (x) 1) = f(e_i) for all i?

    Returns (ok, witness) where the witness is the first failing basis index.
    """
    expected_source = ring_tensor(f.source, ring)
    if hom.source != expected_source:
        raise ValueError("hom source is not the tensor of f's source with the ring")
    if hom.target != f.target:
        raise ValueError("hom target does not match f's target")
    for i in range(f.source.rank):
        vec = tensor_unit_row(f.source, ring, i=i, p=None)
        if hom.apply_vec(vec) != f.matrix.row(i):
            return False, i
    return True, None


def universal_factor(ring: BasedRing, hom: RingHom, f: RingHom) -> RingHom:
    """The unique map into the centralizer through which (ring, hom) factors.

    Defined on generators by t |-> hom(1 (x) t), re-expressed in the
    centralizer basis.  Three postconditions are verified: the image lands in
    Z(f); composing with the multiplication map recovers hom on basis pairs;
    and re-deriving the map from that identity at r = 1 reproduces it, which
    is the uniqueness argument made executable.
    """
    ok, witness = is_factorization_object(ring, hom, f)
    if not ok:
        raise ValueError(
            f"not a factorization of f: triangle fails at basis index {witness}"
        )
    sub = centralizer(f)
    rows = []
    for p in range(ring.rank):
        image = hom.apply_vec(tensor_unit_row(f.source, ring, i=None, p=p))
        x = sub.coordinates(image)
        if x is None:
            raise RuntimeError(
                "factorization image escapes the centralizer; internal error"
            )
        rows.append(list(x))
    tau = make_hom(ring, sub.as_ring, IntMatrix(rows, cols=sub.rank))
    # postcondition: mu_f o (id (x) tau) = hom on basis pairs
    target = f.target
    for i in range(f.source.rank):
        fi = f.matrix.row(i)
        for p in range(ring.rank):
            via_tau = target.mul_vec(fi, sub.to_ambient(tau.matrix.row(p)))
            direct = hom.apply_vec(tensor_unit_row(f.source, ring, i=i, p=p))
            if via_tau != direct:
                raise RuntimeError(
                    f"universal factorization fails to commute at ({i}, {p}); "
                    "internal error"
                )
    # uniqueness: the value is forced at r = 1, so re-derivation must agree
    for p in range(ring.rank):
        forced = hom.apply_vec(tensor_unit_row(f.source, ring, i=None, p=p))
        if sub.coordinates(forced) != tau.matrix.row(p):
            raise RuntimeError("universal factorization is not unique; internal error")
    return tau
