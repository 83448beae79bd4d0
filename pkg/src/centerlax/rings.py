"""Based rings and validated ring homomorphisms.

A based ring is a ring whose additive group is Z^n modulo per-generator
moduli, with multiplication given by integer structure constants and a
distinguished unit vector.  Elements are coefficient row vectors; a
homomorphism is an integer matrix sending source basis vectors to target
coefficient vectors, checked to be additive, modulus-respecting,
multiplicative on basis pairs, and unital.

Constructors cover the standard families: group rings of explicit Cayley
tables, full and upper-triangular matrix rings, direct products, and tensor
products over the integers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .intlinalg import (
    IntMatrix,
    Moduli,
    Vector,
    check_moduli,
    kernel_mod,
    reduce_vector,
    solve_mod,
    vector_is_zero_mod,
)


def format_combination(coeffs: Sequence[int], names: Sequence[str]) -> str:
    """Render a coefficient vector as a readable linear combination."""
    terms = []
    for c, name in zip(coeffs, names):
        if c == 0:
            continue
        if c == 1:
            terms.append(name)
        elif c == -1:
            terms.append(f"-{name}")
        else:
            terms.append(f"{c}*{name}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


class BasedRing:
    """A finitely generated ring presented by structure constants.

    ``moduli[i]`` is the additive order of basis element i (0 for infinite),
    ``struct_consts[i][j]`` is the coefficient vector of e_i * e_j, and
    ``unit`` is the coefficient vector of 1.  Instances are immutable;
    equality and hashing ignore the display names and compare the
    presentation data.
    """

    __slots__ = ("name", "basis_names", "moduli", "struct_consts", "unit", "_hash")

    def __init__(
        self,
        name: str,
        basis_names: Sequence[str],
        moduli: Sequence[int],
        struct_consts: Sequence[Sequence[Sequence[int]]],
        unit: Sequence[int],
    ):
        n = len(basis_names)
        moduli = check_moduli(moduli, n)
        if len(struct_consts) != n or any(len(r) != n for r in struct_consts):
            raise ValueError("structure constants must form an n x n table")
        if any(len(v) != n for row in struct_consts for v in row):
            raise ValueError("structure constant vectors must have length n")
        sc = tuple(
            tuple(reduce_vector(struct_consts[i][j], moduli) for j in range(n))
            for i in range(n)
        )
        if len(unit) != n:
            raise ValueError(f"unit vector has length {len(unit)}, expected {n}")
        object.__setattr__(self, "name", str(name))
        object.__setattr__(self, "basis_names", tuple(str(s) for s in basis_names))
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "struct_consts", sc)
        object.__setattr__(self, "unit", reduce_vector(unit, moduli))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("BasedRing is immutable")

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def reduce(self, vec: Sequence[int]) -> Vector:
        if len(vec) != self.rank:
            raise ValueError(f"vector length {len(vec)} != rank {self.rank}")
        return reduce_vector(vec, self.moduli)

    def mul_vec(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        """Product of two coefficient vectors, reduced modulo the moduli."""
        n = self.rank
        acc = [0] * n
        sc = self.struct_consts
        for i, xi in enumerate(x):
            if not xi:
                continue
            sci = sc[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                v = sci[j]
                for k in range(n):
                    if v[k]:
                        acc[k] += c * v[k]
        return self.reduce(acc)

    def basis_vector(self, i: int) -> Vector:
        return tuple(int(k == i) for k in range(self.rank))

    def left_mul_matrix(self, vec: Sequence[int]) -> IntMatrix:
        """Matrix L with x*L = vec*x for row vectors x."""
        return IntMatrix(
            [self.mul_vec(vec, self.basis_vector(j)) for j in range(self.rank)],
            cols=self.rank,
        )

    def right_mul_matrix(self, vec: Sequence[int]) -> IntMatrix:
        """Matrix R with x*R = x*vec for row vectors x."""
        return IntMatrix(
            [self.mul_vec(self.basis_vector(j), vec) for j in range(self.rank)],
            cols=self.rank,
        )

    def element(self, coeffs: Sequence[int]) -> "RingElement":
        return RingElement(self, coeffs)

    def zero(self) -> "RingElement":
        return RingElement(self, (0,) * self.rank)

    def one(self) -> "RingElement":
        return RingElement(self, self.unit)

    def basis_element(self, i: int) -> "RingElement":
        return RingElement(self, self.basis_vector(i))

    def size(self) -> int | None:
        """Number of elements, or None when the additive group is infinite."""
        if any(m == 0 for m in self.moduli):
            return None
        return math.prod(self.moduli)

    def elements(self) -> Iterator["RingElement"]:
        """All elements of a finite ring, in lexicographic coefficient order."""
        if self.size() is None:
            raise ValueError(f"ring {self.name} is infinite")
        for coeffs in itertools.product(*[range(m) for m in self.moduli]):
            yield RingElement(self, coeffs)

    def is_commutative(self) -> bool:
        sc = self.struct_consts
        return all(
            sc[i][j] == sc[j][i] for i in range(self.rank) for j in range(i)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasedRing):
            return NotImplemented
        return (
            self.moduli == other.moduli
            and self.struct_consts == other.struct_consts
            and self.unit == other.unit
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.moduli, self.struct_consts, self.unit))
            )
        return self._hash

    def __repr__(self) -> str:
        return f"BasedRing({self.name!r}, rank={self.rank})"


class RingElement:
    """An element of a based ring: a coefficient vector over the basis."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: BasedRing, coeffs: Sequence[int]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", ring.reduce(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _check_parent(self, other: "RingElement") -> None:
        if self.ring != other.ring:
            raise ValueError("elements belong to different rings")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check_parent(other)
        return RingElement(
            self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check_parent(other)
        return RingElement(
            self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check_parent(other)
        return RingElement(self.ring, self.ring.mul_vec(self.coeffs, other.coeffs))

    def __rmul__(self, scalar: int) -> "RingElement":
        if not isinstance(scalar, int):
            return NotImplemented
        return RingElement(self.ring, [scalar * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == self.ring.unit

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return format_combination(self.coeffs, self.ring.basis_names)


def validate_ring(ring: BasedRing) -> list[str]:
    """Check the ring axioms on the basis; returns one entry per failure.

    An empty report means the presentation is a genuine associative unital
    ring.  Distributivity holds automatically because multiplication is the
    bilinear extension of the structure constants.
    """
    failures = []
    n = ring.rank
    sc = ring.struct_consts
    for i in range(n):
        for j in range(n):
            for m, who in ((ring.moduli[i], i), (ring.moduli[j], j)):
                if m and not vector_is_zero_mod(
                    [m * c for c in sc[i][j]], ring.moduli
                ):
                    failures.append(
                        f"product e_{i}*e_{j} not annihilated by modulus "
                        f"{m} of basis element {who}"
                    )
    for i in range(n):
        left = ring.mul_vec(ring.unit, ring.basis_vector(i))
        right = ring.mul_vec(ring.basis_vector(i), ring.unit)
        expected = ring.reduce(ring.basis_vector(i))
        if left != expected:
            failures.append(f"unit law fails on the left at basis element {i}")
        if right != expected:
            failures.append(f"unit law fails on the right at basis element {i}")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = ring.mul_vec(sc[i][j], ring.basis_vector(k))
                rhs = ring.mul_vec(ring.basis_vector(i), sc[j][k])
                if lhs != rhs:
                    failures.append(
                        f"associativity fails at basis triple ({i}, {j}, {k})"
                    )
    return failures


# ----------------------------------------------------------------------
# Cayley tables and ring constructors


@dataclass(frozen=True)
class CayleyTable:
    """A finite group given by its full multiplication table."""

    name: str
    element_names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = field(default=-1)

    def __post_init__(self):
        n = self.order
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("Cayley table must be square of the group order")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValueError("Cayley table entries must index group elements")
        for i in range(n):
            if sorted(self.table[i]) != list(range(n)):
                raise ValueError(f"row {i} of the Cayley table is not a permutation")
            if sorted(row[i] for row in self.table) != list(range(n)):
                raise ValueError(
                    f"column {i} of the Cayley table is not a permutation"
                )
        ident = self.identity
        if ident < 0:
            candidates = [
                e
                for e in range(n)
                if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))
            ]
            if not candidates:
                raise ValueError("Cayley table has no identity element")
            ident = candidates[0]
            object.__setattr__(self, "identity", ident)
        elif any(
            self.table[ident][x] != x or self.table[x][ident] != x for x in range(n)
        ):
            raise ValueError(f"element {ident} is not an identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError(
                            f"Cayley table is not associative at ({a}, {b}, {c})"
                        )

    @property
    def order(self) -> int:
        return len(self.element_names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @classmethod
    def cyclic(cls, n: int) -> "CayleyTable":
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        names = tuple(f"[{k}]" for k in range(n))
        table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return cls(f"C{n}", names, table, identity=0)

    @classmethod
    def dihedral(cls, order: int) -> "CayleyTable":
        """Dihedral group of the given (even) order, on rotations r^a s^b."""
        if order < 2 or order % 2:
            raise ValueError("dihedral group order must be even and >= 2")
        m = order // 2

        def name(a, b):
            rot = "" if a == 0 else ("r" if a == 1 else f"r{a}")
            ref = "s" if b else ""
            return (rot + ref) or "e"

        elems = [(a, b) for b in (0, 1) for a in range(m)]
        index = {e: i for i, e in enumerate(elems)}

        def mul(x, y):
            a, b = x
            c, d = y
            return ((a + (c if b == 0 else -c)) % m, (b + d) % 2)

        table = tuple(
            tuple(index[mul(x, y)] for y in elems) for x in elems
        )
        return cls(f"D{order}", tuple(name(*e) for e in elems), table, identity=0)

    @classmethod
    def direct_product(cls, g: "CayleyTable", h: "CayleyTable") -> "CayleyTable":
        pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
        index = {p: i for i, p in enumerate(pairs)}
        names = tuple(
            f"({g.element_names[a]},{h.element_names[b]})" for a, b in pairs
        )
        table = tuple(
            tuple(index[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs)
            for (a, b) in pairs
        )
        return cls(
            f"{g.name}x{h.name}",
            names,
            table,
            identity=index[(g.identity, h.identity)],
        )


def make_group_ring(group: CayleyTable, modulus: int = 0) -> BasedRing:
    """Group ring of a Cayley table with coefficients in Z or Z/m."""
    if modulus < 0:
        raise ValueError("modulus must be non-negative")
    n = group.order
    sc = [
        [
            tuple(int(k == group.mul(i, j)) for k in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    unit = tuple(int(k == group.identity) for k in range(n))
    coeff = "Z" if modulus == 0 else f"Z/{modulus}"
    return BasedRing(
        f"{coeff}[{group.name}]", group.element_names, (modulus,) * n, sc, unit
    )


def make_matrix_ring(n: int, modulus: int = 0) -> BasedRing:
    """Full matrix ring on the units E_ab with E_ab E_cd = [b == c] E_ad."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    return _matrix_units_ring(
        f"Mat{n}({'Z' if modulus == 0 else f'Z/{modulus}'})",
        [(a, b) for a in range(n) for b in range(n)],
        n,
        modulus,
    )


def make_upper_triangular(n: int, modulus: int = 0) -> BasedRing:
    """Upper triangular matrix ring on the units E_ab with a <= b."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    return _matrix_units_ring(
        f"UT{n}({'Z' if modulus == 0 else f'Z/{modulus}'})",
        [(a, b) for a in range(n) for b in range(a, n)],
        n,
        modulus,
    )


def _matrix_units_ring(
    name: str, cells: list[tuple[int, int]], n: int, modulus: int
) -> BasedRing:
    if modulus < 0:
        raise ValueError("modulus must be non-negative")
    index = {cell: i for i, cell in enumerate(cells)}
    k = len(cells)

    def product(cell1, cell2):
        a, b = cell1
        c, d = cell2
        if b != c:
            return (0,) * k
        return tuple(int(t == index[(a, d)]) for t in range(k))

    sc = [[product(c1, c2) for c2 in cells] for c1 in cells]
    unit = tuple(int(cells[t][0] == cells[t][1]) for t in range(k))
    names = tuple(f"E{a + 1}{b + 1}" for a, b in cells)
    return BasedRing(name, names, (modulus,) * k, sc, unit)


def ground_ring(modulus: int = 0) -> BasedRing:
    """The coefficient ring itself: Z, or Z/m, on a single generator."""
    name = "Z" if modulus == 0 else f"Z/{modulus}"
    return BasedRing(name, ("1",), (modulus,), (((1,),),), (1,))


def make_product_ring(left: BasedRing, right: BasedRing) -> BasedRing:
    """Direct product with componentwise multiplication and unit (1, 1)."""
    nl, nr = left.rank, right.rank
    n = nl + nr

    def embed_left(vec):
        return tuple(vec) + (0,) * nr

    def embed_right(vec):
        return (0,) * nl + tuple(vec)

    sc = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < nl and j < nl:
                row.append(embed_left(left.struct_consts[i][j]))
            elif i >= nl and j >= nl:
                row.append(embed_right(right.struct_consts[i - nl][j - nl]))
            else:
                row.append((0,) * n)
        sc.append(row)
    names = tuple(f"({s},0)" for s in left.basis_names) + tuple(
        f"(0,{s})" for s in right.basis_names
    )
    unit = tuple(left.unit) + tuple(right.unit)
    return BasedRing(
        f"{left.name}+{right.name}",
        names,
        left.moduli + right.moduli,
        sc,
        unit,
    )


def ring_tensor(left: BasedRing, right: BasedRing) -> BasedRing:
    """Tensor product over Z on the basis pairs e_i (x) f_p.

    The modulus of a pair is gcd of the factor moduli (with gcd(0, k) = k),
    which is exactly the order of the tensor of two cyclic groups; mixed
    characteristic collapses accordingly, down to the zero ring when the
    moduli are coprime.
    """
    nl, nr = left.rank, right.rank
    n = nl * nr

    def idx(i, p):
        return i * nr + p

    moduli = tuple(
        math.gcd(left.moduli[i], right.moduli[p])
        for i in range(nl)
        for p in range(nr)
    )
    sc = []
    for i in range(nl):
        for p in range(nr):
            row = []
            for j in range(nl):
                scl = left.struct_consts[i][j]
                for q in range(nr):
                    scr = right.struct_consts[p][q]
                    vec = [0] * n
                    for k in range(nl):
                        if scl[k]:
                            for r in range(nr):
                                if scr[r]:
                                    vec[idx(k, r)] = scl[k] * scr[r]
                    row.append(tuple(vec))
            sc.append(row)
    unit = tuple(
        left.unit[i] * right.unit[p] for i in range(nl) for p in range(nr)
    )
    names = tuple(
        f"{a}(x){b}" for a in left.basis_names for b in right.basis_names
    )
    return BasedRing(f"{left.name}(x){right.name}", names, moduli, sc, unit)


# ----------------------------------------------------------------------
# homomorphisms


class RingHom:
    """A ring homomorphism as a matrix of basis images (rows)."""

    __slots__ = ("source", "target", "matrix", "_hash")

    def __init__(self, source: BasedRing, target: BasedRing, matrix: IntMatrix):
        if matrix.rows != source.rank or matrix.cols != target.rank:
            raise ValueError(
                f"hom matrix is {matrix.rows}x{matrix.cols}, expected "
                f"{source.rank}x{target.rank}"
            )
        reduced = IntMatrix(
            [target.reduce(row) for row in matrix], cols=target.rank
        )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", reduced)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RingHom is immutable")

    def apply_vec(self, vec: Sequence[int]) -> Vector:
        if len(vec) != self.source.rank:
            raise ValueError("vector length does not match hom source")
        acc = [0] * self.target.rank
        for i, c in enumerate(vec):
            if c:
                row = self.matrix.row(i)
                for j in range(self.target.rank):
                    acc[j] += c * row[j]
        return self.target.reduce(acc)

    def __call__(self, elem: RingElement) -> RingElement:
        if elem.ring != self.source:
            raise ValueError("element does not belong to the hom source")
        return RingElement(self.target, self.apply_vec(elem.coeffs))

    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and self.matrix == IntMatrix.identity(self.source.rank)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.source, self.target, self.matrix))
            )
        return self._hash

    def __repr__(self) -> str:
        return f"RingHom({self.source.name} -> {self.target.name})"


def hom_violations(hom: RingHom) -> list[str]:
    """All ring-homomorphism axiom failures, each naming its witness."""
    failures = []
    src, tgt = hom.source, hom.target
    for i in range(src.rank):
        m = src.moduli[i]
        if m and not vector_is_zero_mod(
            [m * c for c in hom.matrix.row(i)], tgt.moduli
        ):
            failures.append(
                f"image of basis element {i} ({src.basis_names[i]}) is not "
                f"annihilated by its modulus {m}"
            )
    for i in range(src.rank):
        for j in range(src.rank):
            lhs = hom.apply_vec(src.struct_consts[i][j])
            rhs = tgt.mul_vec(hom.matrix.row(i), hom.matrix.row(j))
            if lhs != rhs:
                failures.append(
                    f"multiplicativity fails at basis pair "
                    f"({src.basis_names[i]}, {src.basis_names[j]}): "
                    f"F(e_i*e_j) = {format_combination(lhs, tgt.basis_names)} but "
                    f"F(e_i)F(e_j) = {format_combination(rhs, tgt.basis_names)}"
                )
    if hom.apply_vec(src.unit) != tgt.reduce(tgt.unit):
        failures.append("unit is not preserved")
    return failures


def make_hom(
    source: BasedRing, target: BasedRing, matrix: IntMatrix | Sequence[Sequence[int]]
) -> RingHom:
    """Build a homomorphism and reject it with a witness if an axiom fails."""
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix(matrix, cols=target.rank)
    hom = RingHom(source, target, matrix)
    failures = hom_violations(hom)
    if failures:
        raise ValueError(
            f"not a ring homomorphism {source.name} -> {target.name}: "
            + "; ".join(failures)
        )
    return hom


def identity_hom(ring: BasedRing) -> RingHom:
    return RingHom(ring, ring, IntMatrix.identity(ring.rank))


def monomial_hom(
    source: BasedRing, target: BasedRing, images: Sequence[int]
) -> RingHom:
    """The hom sending each source basis element to a target basis element.

    ``images[i]`` is the index of the target basis element that receives
    source basis element i; validation rejects assignments that are not
    multiplicative (the usual way to lift a map of group elements that is
    not a group homomorphism fails here).
    """
    if len(images) != source.rank:
        raise ValueError("one image index per source basis element is required")
    rows = [
        [int(j == images[i]) for j in range(target.rank)]
        for i in range(source.rank)
    ]
    return make_hom(source, target, rows)


def scalar_hom(ground: BasedRing, target: BasedRing) -> RingHom:
    """The unit map from a rank-1 coefficient ring, 1 |-> 1."""
    if ground.rank != 1:
        raise ValueError("scalar_hom needs a rank-1 source")
    return make_hom(ground, target, [list(target.unit)])


def hom_compose(second: RingHom, first: RingHom) -> RingHom:
    """The composite ``second after first``, revalidated."""
    if first.target != second.source:
        raise ValueError(
            f"cannot compose: {first!r} does not feed into {second!r}"
        )
    return make_hom(first.source, second.target, first.matrix @ second.matrix)


def hom_is_iso(hom: RingHom) -> bool:
    """Bijectivity of the underlying additive map, respecting moduli."""
    kernel = kernel_mod(hom.matrix, hom.target.moduli, hom.source.moduli)
    if kernel.rows:
        return False
    for j in range(hom.target.rank):
        b = hom.target.basis_vector(j)
        if solve_mod(hom.matrix, b, hom.target.moduli).solution is None:
            return False
    return True
