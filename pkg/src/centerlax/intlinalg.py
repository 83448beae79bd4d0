"""Exact integer linear algebra over Z and Z with per-coordinate moduli.

Everything runs on Python's arbitrary-precision integers; no floating point
appears anywhere.  A coordinate space is qualified by a tuple of non-negative
moduli, one per coordinate: 0 marks a free (characteristic-zero) coordinate,
m > 0 marks a Z/m coordinate.  Congruence systems over mixed moduli are
reduced to plain integer lattice problems by stacking modulus rows m*e_i
onto the matrix in question, so a single Hermite-form code path serves all
of them.

Conventions: matrices act on row vectors from the right (x |-> x*A), the
Hermite normal form is row-style with positive pivots, entries above each
pivot reduced into [0, pivot), and zero rows last.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Moduli = tuple[int, ...]
Vector = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


class IntMatrix:
    """Immutable dense matrix of exact integers, row-major.

    ``cols`` must be supplied explicitly when constructing a matrix with no
    rows, since the column count cannot be inferred from empty data.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("ragged rows in matrix data")
            if cols is not None and cols != width:
                raise ValueError(f"cols={cols} does not match row width {width}")
            cols = width
        elif cols is None:
            raise ValueError("cols is required for a matrix with no rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def row_vector(cls, vec: Sequence[int]) -> "IntMatrix":
        return cls([vec], cols=len(vec))

    def __getitem__(self, i: int) -> Vector:
        return self._data[i]

    def __iter__(self) -> Iterator[Vector]:
        return iter(self._data)

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        tcols = other.cols
        out = []
        for row in self._data:
            acc = [0] * tcols
            for k, a in enumerate(row):
                if a:
                    orow = other._data[k]
                    for j in range(tcols):
                        acc[j] += a * orow[j]
            out.append(acc)
        return IntMatrix(out, cols=tcols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix subtraction")
        return IntMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self._data, other._data)
            ],
            cols=self.cols,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.cols, self._data)))
        return self._hash

    def __repr__(self) -> str:
        if self.rows == 0:
            return f"IntMatrix([], cols={self.cols})"
        body = ", ".join(repr(list(row)) for row in self._data)
        return f"IntMatrix([{body}])"


def vstack(*matrices: IntMatrix) -> IntMatrix:
    if not matrices:
        raise ValueError("vstack needs at least one matrix")
    cols = matrices[0].cols
    if any(m.cols != cols for m in matrices):
        raise ValueError("column count mismatch in vstack")
    rows: list[Vector] = []
    for m in matrices:
        rows.extend(m)
    return IntMatrix(rows, cols=cols)


def hstack(*matrices: IntMatrix) -> IntMatrix:
    if not matrices:
        raise ValueError("hstack needs at least one matrix")
    nrows = matrices[0].rows
    if any(m.rows != nrows for m in matrices):
        raise ValueError("row count mismatch in hstack")
    cols = sum(m.cols for m in matrices)
    rows = []
    for i in range(nrows):
        row: list[int] = []
        for m in matrices:
            row.extend(m.row(i))
        rows.append(row)
    return IntMatrix(rows, cols=cols)


def apply_vector(vec: Sequence[int], matrix: IntMatrix) -> Vector:
    """Row vector times matrix, over Z."""
    if len(vec) != matrix.rows:
        raise ValueError(f"vector length {len(vec)} != matrix rows {matrix.rows}")
    acc = [0] * matrix.cols
    for k, a in enumerate(vec):
        if a:
            row = matrix.row(k)
            for j in range(matrix.cols):
                acc[j] += a * row[j]
    return tuple(acc)


def check_moduli(moduli: Sequence[int], length: int, what: str = "moduli") -> Moduli:
    moduli = tuple(int(m) for m in moduli)
    if len(moduli) != length:
        raise ValueError(f"{what} has length {len(moduli)}, expected {length}")
    if any(m < 0 for m in moduli):
        raise ValueError(f"{what} must be non-negative")
    return moduli


def reduce_vector(vec: Sequence[int], moduli: Sequence[int]) -> Vector:
    """Reduce each coordinate into [0, m) where its modulus m is positive."""
    return tuple(x % m if m else x for x, m in zip(vec, moduli))


def vector_is_zero_mod(vec: Sequence[int], moduli: Sequence[int]) -> bool:
    return all((x % m if m else x) == 0 for x, m in zip(vec, moduli))


def moduli_rows(moduli: Sequence[int]) -> list[list[int]]:
    """Relation rows m*e_i for the finite coordinates of a moduli vector."""
    n = len(moduli)
    rows = []
    for i, m in enumerate(moduli):
        if m:
            row = [0] * n
            row[i] = m
            rows.append(row)
    return rows


@dataclass(frozen=True)
class NormalFormResult:
    """A normal form together with the exact witnessing transforms.

    ``left_transform @ input (@ right_transform) == form`` always holds; the
    transforms are unimodular.  ``right_transform`` and ``invariant_factors``
    are populated by the Smith form only.
    """

    form: IntMatrix
    left_transform: IntMatrix
    right_transform: IntMatrix | None = None
    invariant_factors: tuple[int, ...] | None = None


def _negate_row(row: list[int]) -> None:
    for j in range(len(row)):
        row[j] = -row[j]


def _row_combine(ri: list[int], rk: list[int], a: int, b: int, c: int, d: int) -> None:
    """In place: (ri, rk) <- (a*ri + b*rk, c*ri + d*rk)."""
    for j in range(len(ri)):
        x, y = ri[j], rk[j]
        ri[j] = a * x + b * y
        rk[j] = c * x + d * y


def hnf(matrix: IntMatrix) -> NormalFormResult:
    """Row Hermite normal form H = U @ M with U unimodular.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), and zero rows come last, which makes the form unique for
    the row lattice of the input.
    """
    m, n = matrix.rows, matrix.cols
    H = [list(row) for row in matrix]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            if a != 0 and b % a == 0:
                q = b // a
                for j in range(n):
                    H[i][j] -= q * H[r][j]
                for j in range(m):
                    U[i][j] -= q * U[r][j]
                continue
            g, x, y = xgcd(a, b)
            a_g, b_g = a // g, b // g
            _row_combine(H[r], H[i], x, y, -b_g, a_g)
            _row_combine(U[r], U[i], x, y, -b_g, a_g)
        pivot = H[r][c]
        if pivot < 0:
            _negate_row(H[r])
            _negate_row(U[r])
            pivot = -pivot
        if pivot:
            for i in range(r):
                q = H[i][c] // pivot
                if q:
                    for j in range(n):
                        H[i][j] -= q * H[r][j]
                    for j in range(m):
                        U[i][j] -= q * U[r][j]
            r += 1
    form = IntMatrix(H, cols=n)
    left = IntMatrix(U, cols=m)
    if left @ matrix != form:
        raise AssertionError("HNF transform failed exact reconstruction")
    return NormalFormResult(form=form, left_transform=left)


def snf(matrix: IntMatrix) -> NormalFormResult:
    """Smith normal form D = U @ M @ V with a divisibility chain.

    The invariant factors are the nonzero diagonal entries in order; each
    divides the next.
    """
    m, n = matrix.rows, matrix.cols
    A = [list(row) for row in matrix]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_combine(jc: int, jk: int, a: int, b: int, c: int, d: int) -> None:
        for rows in (A, V):
            for row in rows:
                x, y = row[jc], row[jk]
                row[jc] = a * x + b * y
                row[jk] = c * x + d * y

    t = 0
    limit = min(m, n)
    while t < limit:
        pos = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j]:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            A[t], A[i0] = A[i0], A[t]
            U[t], U[i0] = U[i0], U[t]
        if j0 != t:
            col_combine(t, j0, 0, 1, 1, 0)
        while True:
            for i in range(m):
                if i == t or A[i][t] == 0:
                    continue
                a, b = A[t][t], A[i][t]
                if a != 0 and b % a == 0:
                    q = b // a
                    for j in range(n):
                        A[i][j] -= q * A[t][j]
                    for j in range(m):
                        U[i][j] -= q * U[t][j]
                else:
                    g, x, y = xgcd(a, b)
                    _row_combine(A[t], A[i], x, y, -(b // g), a // g)
                    _row_combine(U[t], U[i], x, y, -(b // g), a // g)
            row_dirty = False
            for j in range(n):
                if j == t or A[t][j] == 0:
                    continue
                a, b = A[t][t], A[t][j]
                if a != 0 and b % a == 0:
                    q = b // a
                    for rows in (A, V):
                        for row in rows:
                            row[j] -= q * row[t]
                else:
                    g, x, y = xgcd(a, b)
                    col_combine(t, j, x, y, -(b // g), a // g)
                    row_dirty = True
            if row_dirty or any(A[i][t] for i in range(m) if i != t):
                continue
            pivot = A[t][t]
            bad_row = None
            for i in range(t + 1, m):
                if any(A[i][j] % pivot for j in range(t + 1, n)):
                    bad_row = i
                    break
            if bad_row is None:
                break
            for j in range(n):
                A[t][j] += A[bad_row][j]
            for j in range(m):
                U[t][j] += U[bad_row][j]
        t += 1
    for k in range(limit):
        if A[k][k] < 0:
            _negate_row(A[k])
            _negate_row(U[k])
    form = IntMatrix(A, cols=n)
    left = IntMatrix(U, cols=m)
    right = IntMatrix(V, cols=n)
    if left @ matrix @ right != form:
        raise AssertionError("SNF transforms failed exact reconstruction")
    factors = tuple(A[k][k] for k in range(limit) if A[k][k])
    return NormalFormResult(
        form=form,
        left_transform=left,
        right_transform=right,
        invariant_factors=factors,
    )


def det(matrix: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = matrix.rows
    if n != matrix.cols:
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


class LatticeReducer:
    """Canonical coset representatives modulo the row span of a matrix.

    The rows are Hermite-reduced once; ``reduce`` then maps any integer
    vector to the unique representative of its coset whose entries at the
    pivot columns lie in [0, pivot).
    """

    def __init__(self, relation_rows: IntMatrix):
        self._cols = relation_rows.cols
        form = hnf(relation_rows).form
        self._rows = [row for row in form if any(row)]
        self._pivots = [
            (row, next(j for j, x in enumerate(row) if x)) for row in self._rows
        ]

    def reduce(self, vec: Sequence[int]) -> Vector:
        if len(vec) != self._cols:
            raise ValueError(f"vector length {len(vec)} != {self._cols}")
        out = list(vec)
        for row, col in self._pivots:
            q = out[col] // row[col]
            if q:
                for j in range(col, self._cols):
                    out[j] -= q * row[j]
        return tuple(out)

    def is_zero(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def are_equal(self, left: Sequence[int], right: Sequence[int]) -> bool:
        return self.reduce(left) == self.reduce(right)


class CongruenceSolver:
    """Repeated solving of x*A = b (mod target moduli) for a fixed system.

    The stacked matrix [A; diag(target moduli)] is Hermite-reduced once; each
    ``solve`` is then a single back-substitution.  Solutions are reported in
    the original x coordinates (the first ``A.rows`` entries).
    """

    def __init__(self, matrix: IntMatrix, target_moduli: Sequence[int]):
        target_moduli = check_moduli(target_moduli, matrix.cols, "target moduli")
        self.matrix = matrix
        self.target_moduli = target_moduli
        extra = moduli_rows(target_moduli)
        stacked = vstack(matrix, IntMatrix(extra, cols=matrix.cols))
        res = hnf(stacked)
        self._H = res.form
        self._U = res.left_transform
        self._pivots: list[tuple[int, int]] = []  # (row, col) per pivot
        for i in range(self._H.rows):
            row = self._H.row(i)
            col = next((j for j, x in enumerate(row) if x), None)
            if col is not None:
                self._pivots.append((i, col))

    def solve(self, b: Sequence[int]) -> Vector | None:
        """A particular x with x*A congruent to b, or None if there is none."""
        n = self._H.cols
        if len(b) != n:
            raise ValueError(f"right-hand side length {len(b)} != {n}")
        residual = list(b)
        weights = [0] * self._H.rows
        pivot_at = {col: row for row, col in self._pivots}
        for c in range(n):
            v = residual[c]
            if c in pivot_at:
                i = pivot_at[c]
                p = self._H[i][c]
                if v % p:
                    return None
                w = v // p
                if w:
                    weights[i] = w
                    hr = self._H.row(i)
                    for j in range(c, n):
                        residual[j] -= w * hr[j]
            elif v:
                return None
        z = apply_vector(weights, self._U)
        return z[: self.matrix.rows]


def kernel_mod(
    matrix: IntMatrix,
    target_moduli: Sequence[int],
    source_moduli: Sequence[int],
) -> IntMatrix:
    """Canonical generators of {x : x*A = 0 (mod target moduli)}.

    Solutions live in the source coordinate space viewed modulo
    ``source_moduli``.  The integer solutions form a lattice; the output is
    its Hermite-form basis with rows that vanish modulo the source moduli
    dropped, so the rows listed are honest generators of the solution
    subgroup.  (Whenever x*A = 0 descends to the source quotient at all, the
    source modulus vectors are themselves solutions, so nothing is lost by
    the dropping.)
    """
    target_moduli = check_moduli(target_moduli, matrix.cols, "target moduli")
    source_moduli = check_moduli(source_moduli, matrix.rows, "source moduli")
    m = matrix.rows
    stacked = vstack(matrix, IntMatrix(moduli_rows(target_moduli), cols=matrix.cols))
    res = hnf(stacked)
    gens: list[list[int]] = []
    for i in range(res.form.rows):
        if not any(res.form.row(i)):
            gens.append(list(res.left_transform.row(i)[:m]))
    if not gens:
        return IntMatrix([], cols=m)
    reduced = hnf(IntMatrix(gens, cols=m)).form
    kept = [row for row in reduced if not vector_is_zero_mod(row, source_moduli)]
    return IntMatrix(kept, cols=m)


@dataclass(frozen=True)
class SolveResult:
    """A particular solution (or None) together with the homogeneous kernel."""

    solution: Vector | None
    kernel: IntMatrix


def solve_mod(
    matrix: IntMatrix,
    b: Sequence[int],
    target_moduli: Sequence[int],
) -> SolveResult:
    """Solve x*A = b (mod target moduli) over integer x.

    The kernel is reported over a free source (no source moduli), i.e. it is
    the integer lattice of homogeneous solutions.
    """
    solver = CongruenceSolver(matrix, target_moduli)
    particular = solver.solve(b)
    kernel = kernel_mod(matrix, target_moduli, (0,) * matrix.rows)
    return SolveResult(solution=particular, kernel=kernel)


def cokernel_invariants(
    matrix: IntMatrix, target_moduli: Sequence[int]
) -> tuple[int, ...]:
    """Invariant factors of (target group) / (row image of A).

    Factors equal to 1 are omitted; a trailing 0 is reported once per free
    summand.  An empty result means the map is surjective.
    """
    target_moduli = check_moduli(target_moduli, matrix.cols, "target moduli")
    stacked = vstack(matrix, IntMatrix(moduli_rows(target_moduli), cols=matrix.cols))
    res = snf(stacked)
    diag = res.invariant_factors or ()
    free_rank = matrix.cols - len(diag)
    torsion = tuple(d for d in diag if d != 1)
    return torsion + (0,) * free_rank
