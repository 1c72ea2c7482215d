"""Exact integer lattice machinery: HNF, SNF, indices, relation search.

Matrices are lists of lists of Python ints (rows); no floating point enters
the normal-form code.  The relation search between unit logarithms is the
one numerical piece: a bounded box search whose every hit is re-verified at
full precision.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import inf, prod

import gmpy2

Matrix = list[list[int]]

INFINITE = inf

DEFAULT_BOUND = 12
DEFAULT_TOL = 1e-6


class NoRelationWithinBound(ArithmeticError):
    """Box search exhausted without an integer relation inside tolerance."""


def _copy(M) -> Matrix:
    return [[int(x) for x in row] for row in M]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B) -> Matrix:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def determinant(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = _copy(M)
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
        prev = A[k][k]
    return sign * A[-1][-1]


def is_unimodular(U) -> bool:
    return abs(determinant(U)) == 1


def hermite_normal_form(M) -> tuple[Matrix, Matrix]:
    """Row-style HNF: returns (H, U) with H = U*M, U unimodular.

    H keeps the shape of M: pivots positive, entries above a pivot reduced
    into [0, pivot), zero rows at the bottom.
    """
    H = _copy(M)
    n = len(H)
    m = len(H[0]) if n else 0
    U = identity_matrix(n)
    row = 0
    for col in range(m):
        # euclidean elimination below the working row
        while True:
            nonzero = [i for i in range(row, n) if H[i][col]]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: abs(H[i][col]))
            if piv != row:
                H[row], H[piv] = H[piv], H[row]
                U[row], U[piv] = U[piv], U[row]
            if len(nonzero) == 1:
                break
            a = H[row][col]
            for i in range(row + 1, n):
                if H[i][col]:
                    q = H[i][col] // a
                    for j in range(m):
                        H[i][j] -= q * H[row][j]
                    for j in range(n):
                        U[i][j] -= q * U[row][j]
        if row < n and H[row][col]:
            if H[row][col] < 0:
                H[row] = [-x for x in H[row]]
                U[row] = [-x for x in U[row]]
            a = H[row][col]
            for i in range(row):
                q = H[i][col] // a
                if q:
                    for j in range(m):
                        H[i][j] -= q * H[row][j]
                    for j in range(n):
                        U[i][j] -= q * U[row][j]
            row += 1
        if row == n:
            break
    # reduce remaining upper entries against later pivots
    return H, U


def hnf_rows(M) -> list[list[int]]:
    """Canonical lattice presentation: nonzero HNF rows."""
    H, _ = hermite_normal_form(M)
    return [row for row in H if any(row)]


def rank(M) -> int:
    return len(hnf_rows(M)) if M else 0


def smith_normal_form(M) -> tuple[list[int], Matrix, Matrix]:
    """(D, U, V) with U*M*V diagonal, d1 | d2 | ..., U, V unimodular.
    D has length min(rows, cols) and includes 1s and trailing 0s."""
    A = _copy(M)
    n = len(A)
    m = len(A[0]) if n else 0
    U = identity_matrix(n)
    V = identity_matrix(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        for j in range(m):
            A[dst][j] += c * A[src][j]
        for j in range(n):
            U[dst][j] += c * U[src][j]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    size = min(n, m)
    while t < size:
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        # clear the row and column at t; restart if a remainder pops up
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if A[t][t] < 0:
            negate_row(t)
        # divisibility fix-up: A[t][t] must divide the rest of the block
        fixed = False
        for i in range(t + 1, n):
            if fixed:
                break
            for j in range(t + 1, m):
                if A[i][j] % A[t][t]:
                    add_row(t, i, 1)
                    fixed = True
                    break
        if fixed:
            continue
        t += 1

    D = [A[i][i] for i in range(size)]
    return D, U, V


def sublattice_index(generators, ambient_rank: int):
    """Index in Z^ambient_rank of the lattice the rows generate; INFINITE
    when the rows do not span full rank.  Product of the nonzero SNF
    divisors."""
    gens = _copy(generators)
    for row in gens:
        if len(row) != ambient_rank:
            raise ValueError("generator length != ambient rank")
    if not gens:
        return INFINITE if ambient_rank > 0 else 1
    D, _, _ = smith_normal_form(gens)
    nonzero = [d for d in D if d]
    if len(nonzero) < ambient_rank:
        return INFINITE
    return prod(nonzero)


# ---------------------------------------------------------------------------
# numerical side: unit log vectors and relation search


@dataclass(frozen=True)
class UnitLogVector:
    """High-precision log vector of a unit; a single canonical embedding log
    in the production pipeline, but any fixed number of coordinates works."""

    label: str
    coordinates: tuple
    precision: int  # decimal digits the coordinates are good to

    def __post_init__(self):
        coords = tuple(self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        for c in coords:
            if not gmpy2.is_finite(gmpy2.mpfr(c)):
                raise ValueError(f"non-finite log coordinate in {self.label!r}")

    @classmethod
    def single(cls, label, value, precision):
        return cls(label, (value,), precision)


@dataclass
class RelationSearchResult:
    rows: Matrix
    hnf: Matrix = field(default_factory=list)
    residuals: list = field(default_factory=list)

    def __post_init__(self):
        if not self.hnf:
            self.hnf = hnf_rows(self.rows) if self.rows else []


def _combo_residual(coeffs, basis_vecs, target_vec):
    """max-norm of sum(a_i * basis_i) - target at full precision (gmpy2)."""
    dim = len(target_vec)
    worst = gmpy2.mpfr(0)
    for k in range(dim):
        acc = gmpy2.mpfr(0)
        for a, vec in zip(coeffs, basis_vecs):
            if a:
                acc += a * vec[k]
        acc -= target_vec[k]
        worst = max(worst, abs(acc))
    return worst


def find_integer_relations(targets, basis, bound=DEFAULT_BOUND, tol=DEFAULT_TOL) -> RelationSearchResult:
    """For each target log vector, the exponent row (a_1..a_k) with
    |sum a_i basis_i - target| < tol, found by box search over
    [-bound, bound]^k (k = len(basis)).

    The search runs in double precision; every hit is re-verified at the
    working precision of the inputs before being reported.  Raises
    NoRelationWithinBound when a target has no row inside the box.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    basis_hp = [[gmpy2.mpfr(c) for c in v.coordinates] for v in basis]
    guard = max(v.precision for v in list(targets) + list(basis)) - 30
    if tol <= 10.0 ** (-guard):
        raise ValueError("tolerance is below the accumulated precision loss")

    basis_lp = [[float(c) for c in row] for row in basis_hp]
    rows = []
    residuals = []
    for t in targets:
        t_hp = [gmpy2.mpfr(c) for c in t.coordinates]
        t_lp = [float(c) for c in t_hp]
        dim = len(t_lp)
        hit = None
        for combo in itertools.product(range(-bound, bound + 1), repeat=len(basis)):
            ok = True
            for k in range(dim):
                acc = -t_lp[k]
                for a, vec in zip(combo, basis_lp):
                    acc += a * vec[k]
                if abs(acc) >= tol:
                    ok = False
                    break
            if ok:
                res = _combo_residual(combo, basis_hp, t_hp)
                if res < tol:
                    hit = (list(combo), res)
                    break
        if hit is None:
            raise NoRelationWithinBound(
                f"no relation for {t.label!r} with |exponents| <= {bound} at tol {tol}"
            )
        rows.append(hit[0])
        residuals.append(hit[1])
    return RelationSearchResult(rows=rows, residuals=residuals)


def reduce_to_basis(logs, tol=DEFAULT_TOL, bound=DEFAULT_BOUND, rank: int = 3):
    """Select `rank` numerically independent logs (greedy, in order) and
    express every other log as an integer combination of the selected ones.

    Returns (basis_indices, dependencies) with dependencies a list of
    (index, coefficient row over the selected basis).
    """
    if len(logs) < rank:
        raise ValueError(f"need at least {rank} logs")
    basis_idx: list[int] = []
    deps: list[tuple[int, list[int]]] = []
    for i, lg in enumerate(logs):
        expressed = None
        if basis_idx:
            try:
                res = find_integer_relations([lg], [logs[j] for j in basis_idx], bound, tol)
                expressed = res.rows[0]
            except NoRelationWithinBound:
                expressed = None
        if expressed is not None:
            deps.append((i, expressed))
        elif len(basis_idx) < rank:
            basis_idx.append(i)
        else:
            raise ArithmeticError(
                f"log {lg.label!r} independent of the chosen rank-{rank} basis"
            )
    if len(basis_idx) < rank:
        raise ArithmeticError(f"fewer than {rank} independent logs at tolerance {tol}")
    # rows found against a partial basis keep their alignment (the basis only
    # ever grows by appending); pad them to full rank
    deps = [(i, row + [0] * (rank - len(row))) for i, row in deps]
    return basis_idx, deps
