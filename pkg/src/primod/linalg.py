"""Hermite and Smith normal forms, kernels, and membership solving over a Euclidean domain.

Matrices are immutable row-major tuples of ring elements.  All algorithms are
classical elementary-operation reductions with the pivot chosen by minimal
Euclidean norm (absolute value / degree); arbitrary-precision arithmetic makes
coefficient growth harmless at the sizes this package handles.

Conventions:

* HNF is the row-echelon canonical form ``T @ A = H`` with unimodular ``T``,
  pivots normalized (positive / monic) and entries above a pivot reduced into
  the canonical residue range ``[0, pivot)`` resp. ``deg < deg(pivot)``.
* SNF is ``U @ A @ V = S`` with ``S`` diagonal, normalized, each entry
  dividing the next.  Inverses of ``U`` and ``V`` are tracked alongside, which
  both certifies unimodularity and lets callers pull coordinates back.
* Empty matrices (0 rows or 0 columns) are legal everywhere; their normal
  forms are empty and their transforms are identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .rings import BaseRing, Element


@dataclass(frozen=True)
class Mat:
    ring: BaseRing
    rows: tuple[tuple[Element, ...], ...]
    cols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.cols:
                raise InputError(
                    f"ragged matrix: row of length {len(row)}, expected {self.cols}"
                )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for row in self.rows for x in row)

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.nrows:
            raise InputError("matrix dimension mismatch in product")
        ring = self.ring
        out = []
        for row in self.rows:
            new_row = []
            for j in range(other.cols):
                acc = ring.zero()
                for k, a in enumerate(row):
                    if not ring.is_zero(a):
                        acc = ring.add(acc, ring.mul(a, other.rows[k][j]))
                new_row.append(acc)
            out.append(tuple(new_row))
        return Mat(ring, tuple(out), other.cols)

    def stack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise InputError("matrix width mismatch in stack")
        return Mat(self.ring, self.rows + other.rows, self.cols)

    def transpose(self) -> "Mat":
        return Mat(
            self.ring,
            tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.cols)),
            self.nrows,
        )

    def scale(self, c: Element) -> "Mat":
        ring = self.ring
        return Mat(ring, tuple(tuple(ring.mul(c, x) for x in row) for row in self.rows), self.cols)

    def to_json(self):
        return [[self.ring.ser_element(x) for x in row] for row in self.rows]

    def __repr__(self):
        body = "; ".join(
            " ".join(self.ring.format_element(x) for x in row) for row in self.rows
        )
        return f"Mat({self.nrows}x{self.cols}: {body})"


def mat(ring: BaseRing, rows, cols: int | None = None) -> Mat:
    """Build a Mat from nested iterables; cols is required when rows is empty."""
    tup = tuple(tuple(row) for row in rows)
    if cols is None:
        if not tup:
            raise InputError("cannot infer width of an empty matrix")
        cols = len(tup[0])
    return Mat(ring, tup, cols)


def identity(ring: BaseRing, n: int) -> Mat:
    return Mat(
        ring,
        tuple(
            tuple(ring.one() if i == j else ring.zero() for j in range(n)) for i in range(n)
        ),
        n,
    )


def zeros(ring: BaseRing, r: int, c: int) -> Mat:
    return Mat(ring, tuple(tuple(ring.zero() for _ in range(c)) for _ in range(r)), c)


def det(A: Mat) -> Element:
    """Determinant by cofactor expansion; intended for the small sizes used here."""
    if A.nrows != A.cols:
        raise InputError("determinant of a non-square matrix")
    ring = A.ring
    n = A.nrows
    if n == 0:
        return ring.one()
    rows = [list(r) for r in A.rows]

    def expand(rs: list[list[Element]]) -> Element:
        k = len(rs)
        if k == 1:
            return rs[0][0]
        acc = ring.zero()
        for j in range(k):
            a = rs[0][j]
            if ring.is_zero(a):
                continue
            minor = [r[:j] + r[j + 1 :] for r in rs[1:]]
            term = ring.mul(a, expand(minor))
            acc = ring.add(acc, term) if j % 2 == 0 else ring.sub(acc, term)
        return acc

    return expand(rows)


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HNFResult:
    H: Mat
    T: Mat

    def pivots(self) -> tuple[tuple[int, int], ...]:
        return hnf_pivots(self.H)


def hnf_pivots(H: Mat) -> tuple[tuple[int, int], ...]:
    """(row, col) of each pivot, in row order, assuming H is in echelon form."""
    ring = H.ring
    out = []
    for i, row in enumerate(H.rows):
        for j, x in enumerate(row):
            if not ring.is_zero(x):
                out.append((i, j))
                break
    return tuple(out)


def hermite_normal_form(A: Mat) -> HNFResult:
    ring = A.ring
    r, c = A.nrows, A.cols
    M = [list(row) for row in A.rows]
    T = [[ring.one() if i == j else ring.zero() for j in range(r)] for i in range(r)]

    def row_sub(i: int, q: Element, j: int):
        # row i -= q * row j
        M[i] = [ring.sub(M[i][k], ring.mul(q, M[j][k])) for k in range(c)]
        T[i] = [ring.sub(T[i][k], ring.mul(q, T[j][k])) for k in range(r)]

    pivot_row = 0
    for col in range(c):
        if pivot_row >= r:
            break
        # Euclid on the column entries at or below pivot_row.
        while True:
            best = None
            for i in range(pivot_row, r):
                if not ring.is_zero(M[i][col]):
                    if best is None or ring.norm(M[i][col]) < ring.norm(M[best][col]):
                        best = i
            if best is None:
                break
            if best != pivot_row:
                M[pivot_row], M[best] = M[best], M[pivot_row]
                T[pivot_row], T[best] = T[best], T[pivot_row]
            dirty = False
            for i in range(pivot_row + 1, r):
                if not ring.is_zero(M[i][col]):
                    q, rem = ring.divmod(M[i][col], M[pivot_row][col])
                    row_sub(i, q, pivot_row)
                    if not ring.is_zero(rem):
                        dirty = True
            if not dirty:
                break
        if ring.is_zero(M[pivot_row][col]):
            continue
        # Normalize the pivot and reduce the entries above it.
        u = ring.unit_part(M[pivot_row][col])
        if not ring.is_zero(ring.sub(u, ring.one())):
            w = ring.inv_unit(u)
            M[pivot_row] = [ring.mul(w, x) for x in M[pivot_row]]
            T[pivot_row] = [ring.mul(w, x) for x in T[pivot_row]]
        for i in range(pivot_row):
            q, _ = ring.divmod(M[i][col], M[pivot_row][col])
            if not ring.is_zero(q):
                row_sub(i, q, pivot_row)
        pivot_row += 1

    H = Mat(ring, tuple(tuple(row) for row in M), c)
    Tm = Mat(ring, tuple(tuple(row) for row in T), r)
    return HNFResult(H=H, T=Tm)


def strip_zero_rows(A: Mat) -> Mat:
    ring = A.ring
    kept = tuple(row for row in A.rows if any(not ring.is_zero(x) for x in row))
    return Mat(ring, kept, A.cols)


def residue_reduce(H: Mat, v: tuple[Element, ...]) -> tuple[Element, ...]:
    """Canonical coset representative of v modulo the row lattice of echelon H."""
    ring = H.ring
    vec = list(v)
    for i, j in hnf_pivots(H):
        q, rem = ring.divmod(vec[j], H.rows[i][j])
        if not ring.is_zero(q):
            for k in range(j, H.cols):
                vec[k] = ring.sub(vec[k], ring.mul(q, H.rows[i][k]))
            vec[j] = rem
    return tuple(vec)


def solve_membership(A: Mat, b: tuple[Element, ...]) -> tuple[Element, ...] | None:
    """A coefficient row v with v @ A = b, or None when b is outside the row lattice."""
    if len(b) != A.cols:
        raise InputError("vector length does not match matrix width")
    ring = A.ring
    res = hermite_normal_form(A)
    H, T = res.H, res.T
    vec = list(b)
    coeffs = [ring.zero()] * H.nrows
    pivots = dict()
    for i, j in hnf_pivots(H):
        pivots[j] = i
    for j in range(A.cols):
        if ring.is_zero(vec[j]):
            continue
        i = pivots.get(j)
        if i is None:
            return None
        q, rem = ring.divmod(vec[j], H.rows[i][j])
        if not ring.is_zero(rem):
            return None
        coeffs[i] = q
        for k in range(j, A.cols):
            vec[k] = ring.sub(vec[k], ring.mul(q, H.rows[i][k]))
    if any(not ring.is_zero(x) for x in vec):
        return None
    # b = coeffs @ H = coeffs @ (T @ A) = (coeffs @ T) @ A
    out = [ring.zero()] * A.nrows
    for i, ci in enumerate(coeffs):
        if ring.is_zero(ci):
            continue
        for k in range(A.nrows):
            out[k] = ring.add(out[k], ring.mul(ci, T.rows[i][k]))
    return tuple(out)


def kernel(A: Mat) -> Mat:
    """Rows generating {v : v @ A = 0}; complete because the HNF transform is unimodular."""
    ring = A.ring
    res = hermite_normal_form(A)
    out = []
    for i, row in enumerate(res.H.rows):
        if all(ring.is_zero(x) for x in row):
            out.append(res.T.rows[i])
    return Mat(ring, tuple(out), A.nrows)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    U: Mat
    S: Mat
    V: Mat
    u_inv: Mat
    v_inv: Mat

    def diagonal(self) -> tuple[Element, ...]:
        n = min(self.S.nrows, self.S.cols)
        return tuple(self.S.rows[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        ring = self.S.ring
        return sum(1 for d in self.diagonal() if not ring.is_zero(d))


def smith_normal_form(A: Mat) -> SNFResult:
    ring = A.ring
    r, c = A.nrows, A.cols
    M = [list(row) for row in A.rows]
    U = [[ring.one() if i == j else ring.zero() for j in range(r)] for i in range(r)]
    Ui = [row[:] for row in U]
    V = [[ring.one() if i == j else ring.zero() for j in range(c)] for i in range(c)]
    Vi = [row[:] for row in V]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        # inverse of a swap is the same swap, applied on the other side
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_sub(i, q, j):
        # row i -= q * row j;  inverse adds it back on the inverse matrix
        M[i] = [ring.sub(M[i][k], ring.mul(q, M[j][k])) for k in range(c)]
        U[i] = [ring.sub(U[i][k], ring.mul(q, U[j][k])) for k in range(r)]
        for row in Ui:
            row[j] = ring.add(row[j], ring.mul(q, row[i]))

    def col_sub(i, q, j):
        # col i -= q * col j
        for row in M:
            row[i] = ring.sub(row[i], ring.mul(q, row[j]))
        for row in V:
            row[i] = ring.sub(row[i], ring.mul(q, row[j]))
        Vi[j] = [ring.add(Vi[j][k], ring.mul(q, Vi[i][k])) for k in range(c)]

    def scale_row(i, u):
        w = ring.inv_unit(u)
        M[i] = [ring.mul(w, x) for x in M[i]]
        U[i] = [ring.mul(w, x) for x in U[i]]
        for row in Ui:
            row[i] = ring.mul(u, row[i])

    def find_min_entry(s):
        best = None
        for i in range(s, r):
            for j in range(s, c):
                if not ring.is_zero(M[i][j]):
                    if best is None or ring.norm(M[i][j]) < ring.norm(M[best[0]][best[1]]):
                        best = (i, j)
        return best

    for s in range(min(r, c)):
        while True:
            pos = find_min_entry(s)
            if pos is None:
                break
            if pos != (s, s):
                if pos[0] != s:
                    swap_rows(s, pos[0])
                if pos[1] != s:
                    swap_cols(s, pos[1])
            # one clearing pass over the pivot cross
            dirty = False
            for i in range(s + 1, r):
                if not ring.is_zero(M[i][s]):
                    q, rem = ring.divmod(M[i][s], M[s][s])
                    row_sub(i, q, s)
                    if not ring.is_zero(rem):
                        dirty = True
            for j in range(s + 1, c):
                if not ring.is_zero(M[s][j]):
                    q, rem = ring.divmod(M[s][j], M[s][s])
                    col_sub(j, q, s)
                    if not ring.is_zero(rem):
                        dirty = True
            if dirty:
                continue
            cross_clear = all(ring.is_zero(M[i][s]) for i in range(s + 1, r)) and all(
                ring.is_zero(M[s][j]) for j in range(s + 1, c)
            )
            if not cross_clear:
                continue
            # pivot must divide the remaining block for the divisibility chain
            offender = None
            for i in range(s + 1, r):
                for j in range(s + 1, c):
                    if not ring.divides(M[s][s], M[i][j]):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(s, ring.neg(ring.one()), offender)  # row s += row offender
        if not ring.is_zero(M[s][s]):
            u = ring.unit_part(M[s][s])
            if not ring.is_zero(ring.sub(u, ring.one())):
                scale_row(s, u)

    result = SNFResult(
        U=Mat(ring, tuple(tuple(row) for row in U), r),
        S=Mat(ring, tuple(tuple(row) for row in M), c),
        V=Mat(ring, tuple(tuple(row) for row in V), c),
        u_inv=Mat(ring, tuple(tuple(row) for row in Ui), r),
        v_inv=Mat(ring, tuple(tuple(row) for row in Vi), c),
    )
    _verify_snf(A, result)
    return result


def _verify_snf(A: Mat, res: SNFResult):
    """Postcondition check; normal-form bugs must fail loudly, not propagate."""
    ring = A.ring
    if res.U.mul(A).mul(res.V).rows != res.S.rows:
        raise RuntimeError("SNF postcondition failed: U @ A @ V != S")
    if res.U.mul(res.u_inv).rows != identity(ring, A.nrows).rows:
        raise RuntimeError("SNF postcondition failed: U not unimodular")
    if res.V.mul(res.v_inv).rows != identity(ring, A.cols).rows:
        raise RuntimeError("SNF postcondition failed: V not unimodular")
    diag = res.diagonal()
    for i, d in enumerate(diag):
        if ring.normalize(d) != d:
            raise RuntimeError("SNF postcondition failed: diagonal not normalized")
        if i + 1 < len(diag) and not ring.divides(d, diag[i + 1]):
            raise RuntimeError("SNF postcondition failed: divisibility chain broken")
    for i, row in enumerate(res.S.rows):
        for j, x in enumerate(row):
            if i != j and not ring.is_zero(x):
                raise RuntimeError("SNF postcondition failed: S not diagonal")
