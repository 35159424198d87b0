"""Exact integer linear algebra: Smith and Hermite normal forms, integer
kernels, saturation, and a sparse unit-pivot reducer for boundary matrices.

Everything works over Python ints (arbitrary precision); there is no
modular arithmetic anywhere.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CertificateError

# running counts of verified certificates and boundary checks
TALLY: Counter = Counter()


class IntMatrix:
    """Dense integer matrix with shape tracking (rows x cols)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[int]] = (), rows: int | None = None, cols: int | None = None):
        self.data = [list(map(int, r)) for r in data]
        self.rows = len(self.data) if rows is None else rows
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if not self.data and self.rows:
            self.data = [[0] * cols for _ in range(self.rows)]
        for r in self.data:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], m, n)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.data == other.data
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum(a * c[k] for k, a in nz) for c in ot] if other.cols else [])
        return IntMatrix(out, self.rows, other.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([list(c) for c in zip(*self.data)] if self.rows else [], self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


@dataclass
class SmithForm:
    """U @ A @ V == D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    invariant_factors: list[int]
    A: IntMatrix
    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def verify(self) -> bool:
        if self.U @ self.A @ self.V != self.D:
            raise CertificateError("U*A*V != D")
        for i in range(self.D.rows):
            for j in range(self.D.cols):
                if i != j and self.D.data[i][j]:
                    raise CertificateError("D is not diagonal")
        f = self.invariant_factors
        if any(x <= 0 for x in f) or any(f[k + 1] % f[k] for k in range(len(f) - 1)):
            raise CertificateError("invariant factors fail the divisibility chain")
        if abs(_det(self.U.data)) != 1 or abs(_det(self.V.data)) != 1:
            raise CertificateError("transformation is not unimodular")
        TALLY["snf_certificates"] += 1
        return True


def _det(M: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
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
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            Ai = A[i]
            Ak = A[k]
            for j in range(k + 1, n):
                Ai[j] = (Ai[j] * akk - aik * Ak[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def determinant(M: Sequence[Sequence[int]]) -> int:
    return _det([list(r) for r in M])


def smith_normal_form(A: IntMatrix | Sequence[Sequence[int]], with_certificate: bool = True) -> SmithForm:
    """Smith normal form by smallest-magnitude pivoting."""
    if not isinstance(A, IntMatrix):
        A = IntMatrix(A)
    m, n = A.rows, A.cols
    D = [list(r) for r in A.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if with_certificate else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if with_certificate else None

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rd, rs = D[dst], D[src]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            ud, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in D:
            if r[src]:
                r[dst] += q * r[src]
        if V is not None:
            for r in V:
                if r[src]:
                    r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        clean = False
            if not clean:
                # bring the smallest remainder in row/col t to the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    factors = [D[k][k] for k in range(min(m, n)) if D[k][k]]
    Dm = IntMatrix(D, m, n)
    if with_certificate:
        return SmithForm(factors, A, IntMatrix(U, m, m), IntMatrix(V, n, n), Dm)
    return SmithForm(factors, A, None, None, Dm)


# -- Hermite normal form and lattice helpers -------------------------------

@dataclass
class HermiteForm:
    """U @ A == H (all rows, zero rows last) with U unimodular."""

    A: IntMatrix
    U: IntMatrix
    H: IntMatrix
    rank: int

    @property
    def basis(self) -> list[list[int]]:
        return self.H.data[: self.rank]

    def verify(self) -> bool:
        if self.U @ self.A != self.H:
            raise CertificateError("U*A != H")
        if abs(_det(self.U.data)) != 1:
            raise CertificateError("HNF transformation is not unimodular")
        lead = -1
        for r, row in enumerate(self.H.data):
            nz = [j for j, x in enumerate(row) if x]
            if r >= self.rank:
                if nz:
                    raise CertificateError("nonzero row below rank")
                continue
            p = nz[0]
            if p <= lead or row[p] <= 0:
                raise CertificateError("pivots not strictly increasing/positive")
            for rr in range(r):
                if not 0 <= self.H.data[rr][p] < row[p]:
                    raise CertificateError("entry above pivot not reduced")
            lead = p
        TALLY["hnf_certificates"] += 1
        return True


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None,
                        with_certificate: bool = True) -> HermiteForm:
    """Row-style HNF of the lattice generated by ``rows``."""
    A = [list(map(int, r)) for r in rows]
    k = len(A)
    N = len(A[0]) if A else (ncols or 0)
    U = [[int(i == j) for j in range(k)] for i in range(k)] if with_certificate else None
    H = [list(r) for r in A]
    r = 0
    for col in range(N):
        if r == k:
            break
        found = False
        while True:
            nz = [i for i in range(r, k) if H[i][col]]
            if not nz:
                break
            found = True
            i0 = min(nz, key=lambda i: abs(H[i][col]))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                if U is not None:
                    U[r], U[i0] = U[i0], U[r]
            p = H[r][col]
            done = True
            for i in range(r + 1, k):
                x = H[i][col]
                if x:
                    q = x // p
                    Hi, Hr = H[i], H[r]
                    for j in range(col, N):
                        if Hr[j]:
                            Hi[j] -= q * Hr[j]
                    if U is not None:
                        Ui, Ur = U[i], U[r]
                        for j in range(k):
                            if Ur[j]:
                                Ui[j] -= q * Ur[j]
                    if Hi[col]:
                        done = False
            if done:
                break
        if not found:
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
        p = H[r][col]
        for i in range(r):
            q = H[i][col] // p
            if q:
                Hi, Hr = H[i], H[r]
                for j in range(col, N):
                    if Hr[j]:
                        Hi[j] -= q * Hr[j]
                if U is not None:
                    Ui, Ur = U[i], U[r]
                    for j in range(k):
                        if Ur[j]:
                            Ui[j] -= q * Ur[j]
        r += 1
    Um = IntMatrix(U, k, k) if U is not None else None
    return HermiteForm(IntMatrix(A, k, N), Um, IntMatrix(H, k, N), r)


def lattice_basis(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    rows = [list(r) for r in rows]
    if not rows:
        return []
    return [list(r) for r in hermite_normal_form(rows, ncols, with_certificate=False).basis]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q (fraction-free elimination)."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return 0
    N = len(A[0])
    rk = 0
    for col in range(N):
        piv = None
        for i in range(rk, len(A)):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        p = A[rk][col]
        Ar = A[rk]
        for i in range(rk + 1, len(A)):
            x = A[i][col]
            if x:
                Ai = A[i]
                A[i] = [p * Ai[j] - x * Ar[j] for j in range(N)]
                g = 0
                for v in A[i]:
                    if v:
                        g = _gcd(g, v)
                if g > 1:
                    A[i] = [v // g for v in A[i]]
        rk += 1
        if rk == len(A):
            break
    return rk


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x in Z^ncols : rows . x = 0} (a saturated lattice)."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    At = [list(c) for c in zip(*rows)]  # ncols x m
    hf = hermite_normal_form(At, len(rows))
    return [list(hf.U.data[i]) for i in range(hf.rank, ncols)]


def saturation(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """HNF basis of span_Q(rows) intersected with Z^ncols."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    K = integer_kernel(rows, ncols)
    if not K:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    return lattice_basis(integer_kernel(K, ncols), ncols)


def coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with sum c_k basis_k == v for an HNF basis, or None."""
    v = list(v)
    out = []
    for row in basis:
        p = next(j for j, x in enumerate(row) if x)
        a = row[p]
        if v[p] % a:
            return None
        c = v[p] // a
        out.append(c)
        if c:
            for j in range(p, len(v)):
                if row[j]:
                    v[j] -= c * row[j]
    if any(v):
        return None
    return out


def contains(super_basis, sub_basis) -> bool:
    return all(coordinates(super_basis, v) is not None for v in sub_basis)


def lattice_index(super_basis, sub_basis) -> int | None:
    """[super : sub] for sub inside super; None (infinite) if ranks differ.

    Raises ValueError if sub is not contained in super.
    """
    coords = []
    for v in sub_basis:
        c = coordinates(super_basis, v)
        if c is None:
            raise ValueError("sublattice is not contained in the superlattice")
        coords.append(c)
    if len(sub_basis) != len(super_basis) or rank(coords) != len(super_basis):
        return None
    if not coords:
        return 1
    hf = hermite_normal_form(coords)
    hf.verify()
    idx = 1
    for i in range(hf.rank):
        idx *= hf.H.data[i][i]
    return abs(idx)


# -- sparse reduction -------------------------------------------------------

@dataclass
class ReductionResult:
    rank: int
    factors: list[int]           # nonunit invariant factors (> 1)
    unit_pivots: int
    residual_shape: tuple[int, int]
    certificates: list = None


def sparse_invariant_factors(cols: dict[int, dict[int, int]], verify: bool = True) -> ReductionResult:
    """Invariant factors of a sparse integer matrix given column-wise.

    Unit entries are eliminated first (Markowitz-style choice of the
    shortest row); whatever remains is handed to the dense SNF, whose
    certificate is re-verified when ``verify`` is set.  ``cols`` is
    consumed.
    """
    rows: dict[int, set] = {}
    for j, col in cols.items():
        for i in col:
            rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda c: len(cols[c])):
            col = cols.get(j)
            if col is None:
                continue
            if not col:
                del cols[j]
                continue
            best = None
            bl = None
            for i, v in col.items():
                if v == 1 or v == -1:
                    ln = len(rows[i])
                    if best is None or ln < bl:
                        best, bl = i, ln
                        if ln == 1:
                            break
            if best is None:
                continue
            i = best
            a = col[i]
            for k in list(rows[i]):
                if k == j:
                    continue
                ck = cols[k]
                f = ck[i] * a
                for r, v in col.items():
                    nv = ck.get(r, 0) - f * v
                    if nv:
                        if r not in ck:
                            rows[r].add(k)
                        ck[r] = nv
                    elif r in ck:
                        del ck[r]
                        rows[r].discard(k)
            for r in col:
                rows[r].discard(j)
            del cols[j]
            del rows[i]
            units += 1
            progress = True
    rest = {j: c for j, c in cols.items() if c}
    if not rest:
        return ReductionResult(units, [], units, (0, 0), [])
    rset = sorted({i for c in rest.values() for i in c})
    ridx = {i: k for k, i in enumerate(rset)}
    cidx = sorted(rest)
    dense = [[0] * len(cidx) for _ in rset]
    for cj, j in enumerate(cidx):
        for i, v in rest[j].items():
            dense[ridx[i]][cj] = v
    snf = smith_normal_form(dense, with_certificate=verify)
    if verify:
        snf.verify()
    f = snf.invariant_factors
    return ReductionResult(
        units + len(f),
        [x for x in f if x != 1],
        units,
        (len(rset), len(cidx)),
        [snf] if verify else [],
    )
