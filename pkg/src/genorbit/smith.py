"""Smith normal form with transformation witnesses, and a minor-gcd oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Sequence

from .matrix import ExactMatrix, MatrixError, _bareiss, identity, join_matrices, split_matrix
from .rings import Integers, PrincipalIdeal, Product, RingElement, RingHandle, Residue

MINOR_GUARD = 8


@dataclass(frozen=True)
class SmithDecomposition:
    """B · A · C = S with B, C invertible and S diagonal in chain order.

    ``B_inv`` and ``C_inv`` are the exact inverses of ``B`` and ``C``.
    ``diag_chain_order`` is g_1 | g_2 | ... ; ``diag_paper_order`` is the
    same list reversed (each entry divisible by the next).
    """

    source: ExactMatrix
    B: ExactMatrix
    C: ExactMatrix
    S: ExactMatrix
    B_inv: ExactMatrix
    C_inv: ExactMatrix

    @property
    def owner(self) -> RingHandle:
        return self.S.owner

    @property
    def diag_chain_order(self) -> list[RingElement]:
        k = min(self.S.shape)
        return [self.S.entry(i, i) for i in range(k)]

    @property
    def diag_paper_order(self) -> list[RingElement]:
        return self.diag_chain_order[::-1]

    @property
    def invariant_factors(self) -> list:
        """Diagonal payloads in chain order."""
        k = min(self.S.shape)
        return [self.S[i, i] for i in range(k)]


def _smith_norm(R: RingHandle):
    if isinstance(R, Residue):
        n = R.n
        return lambda a: math.gcd(a, n)
    return R.norm


class _Work:
    """Mutable state of one elimination run over a non-product ring."""

    def __init__(self, A: ExactMatrix):
        R = A.owner
        self.R = R
        self.m, self.n = A.shape
        self.A = [list(r) for r in A.rows]
        self.B = [list(r) for r in identity(R, self.m).rows]
        self.Bi = [list(r) for r in identity(R, self.m).rows]
        self.C = [list(r) for r in identity(R, self.n).rows]
        self.Ci = [list(r) for r in identity(R, self.n).rows]

    # row transform on rows (p, q): new_p = s*p + t*q, new_q = x*p + y*q, det 1
    def rows2(self, p, q, s, t, x, y):
        R = self.R
        for M in (self.A, self.B):
            rp, rq = M[p], M[q]
            M[p] = [R.add(R.mul(s, a), R.mul(t, b)) for a, b in zip(rp, rq)]
            M[q] = [R.add(R.mul(x, a), R.mul(y, b)) for a, b in zip(rp, rq)]
        # Bi <- Bi * G^-1 with G^-1 = [[y, -t], [-x, s]]
        nt, nx = R.neg(t), R.neg(x)
        for row in self.Bi:
            a, b = row[p], row[q]
            row[p] = R.add(R.mul(a, y), R.mul(b, nx))
            row[q] = R.add(R.mul(a, nt), R.mul(b, s))

    # column transform on cols (p, q): new_p = s*p + t*q, new_q = x*p + y*q, det 1
    def cols2(self, p, q, s, t, x, y):
        R = self.R
        for M in (self.A, self.C):
            for row in M:
                a, b = row[p], row[q]
                row[p] = R.add(R.mul(s, a), R.mul(t, b))
                row[q] = R.add(R.mul(x, a), R.mul(y, b))
        nt, nx = R.neg(t), R.neg(x)
        Ci = self.Ci
        rp, rq = Ci[p], Ci[q]
        Ci[p] = [R.add(R.mul(y, a), R.mul(nx, b)) for a, b in zip(rp, rq)]
        Ci[q] = [R.add(R.mul(nt, a), R.mul(s, b)) for a, b in zip(rp, rq)]

    def add_row(self, i, j, r):
        """row_i += r * row_j."""
        R = self.R
        for M in (self.A, self.B):
            M[i] = [R.add(a, R.mul(r, b)) for a, b in zip(M[i], M[j])]
        nr = R.neg(r)
        for row in self.Bi:
            row[j] = R.add(row[j], R.mul(row[i], nr))

    def add_col(self, i, j, r):
        """col_j += r * col_i."""
        R = self.R
        for M in (self.A, self.C):
            for row in M:
                row[j] = R.add(row[j], R.mul(r, row[i]))
        nr = R.neg(r)
        Ci = self.Ci
        Ci[i] = [R.add(a, R.mul(nr, b)) for a, b in zip(Ci[i], Ci[j])]

    def swap_rows(self, p, q):
        if p == q:
            return
        for M in (self.A, self.B):
            M[p], M[q] = M[q], M[p]
        for row in self.Bi:
            row[p], row[q] = row[q], row[p]

    def swap_cols(self, p, q):
        if p == q:
            return
        for M in (self.A, self.C):
            for row in M:
                row[p], row[q] = row[q], row[p]
        self.Ci[p], self.Ci[q] = self.Ci[q], self.Ci[p]

    def scale_row(self, p, u):
        R = self.R
        ui = R.inverse(u)
        for M in (self.A, self.B):
            M[p] = [R.mul(u, a) for a in M[p]]
        for row in self.Bi:
            row[p] = R.mul(row[p], ui)

    def run(self):
        R = self.R
        z = R.zero()
        norm = _smith_norm(R)
        A = self.A
        for t in range(min(self.m, self.n)):
            best = None
            for i in range(t, self.m):
                for j in range(t, self.n):
                    a = A[i][j]
                    if a != z:
                        key = (norm(a), i, j)
                        if best is None or key < best:
                            best = key
            if best is None:
                break
            _, pi, pj = best
            self.swap_rows(t, pi)
            self.swap_cols(t, pj)
            while True:
                self._clear(t)
                bad = None
                p = A[t][t]
                for i in range(t + 1, self.m):
                    for j in range(t + 1, self.n):
                        if not R.divides(p, A[i][j]):
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self.add_row(t, bad, R.one())
            c, u = R.canonical_associate(A[t][t])
            if u != R.one():
                self.scale_row(t, R.inverse(u))

    def _clear(self, t):
        R = self.R
        z = R.zero()
        A = self.A
        while True:
            for i in range(t + 1, self.m):
                b = A[i][t]
                if b == z:
                    continue
                a = A[t][t]
                if R.divides(a, b):
                    self.add_row(i, t, R.neg(R.exact_div(b, a)))
                else:
                    _, s, tt, x, y = R.gcdex_matrix(a, b)
                    self.rows2(t, i, s, tt, x, y)
            for j in range(t + 1, self.n):
                b = A[t][j]
                if b == z:
                    continue
                a = A[t][t]
                if R.divides(a, b):
                    self.add_col(t, j, R.neg(R.exact_div(b, a)))
                else:
                    _, s, tt, x, y = R.gcdex_matrix(a, b)
                    self.cols2(t, j, s, tt, x, y)
            if all(A[i][t] == z for i in range(t + 1, self.m)) and all(
                    A[t][j] == z for j in range(t + 1, self.n)):
                return


def smith_normal_form(A: ExactMatrix) -> SmithDecomposition:
    R = A.owner
    if isinstance(R, Product):
        parts = [smith_normal_form(P) for P in split_matrix(A)]
        return SmithDecomposition(
            A,
            join_matrices(R, [p.B for p in parts]),
            join_matrices(R, [p.C for p in parts]),
            join_matrices(R, [p.S for p in parts]),
            join_matrices(R, [p.B_inv for p in parts]),
            join_matrices(R, [p.C_inv for p in parts]),
        )
    w = _Work(A)
    w.run()
    m, n = A.shape
    return SmithDecomposition(
        A,
        ExactMatrix(R, w.B, m),
        ExactMatrix(R, w.C, n),
        ExactMatrix(R, w.A, n),
        ExactMatrix(R, w.Bi, m),
        ExactMatrix(R, w.Ci, n),
    )


def chain_holds(R: RingHandle, factors: Sequence[Any]) -> bool:
    """True iff each factor divides the next (chain order)."""
    return all(R.divides(a, b) for a, b in zip(factors, factors[1:]))


# ---------------------------------------------------------------------------
# minor-gcd oracle


def _minor_gcds(R: RingHandle, rows: list[list]) -> list:
    """D_1, ..., D_k over Z or F_p[x], with early exit once a size reaches 1."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    k = min(m, n)
    if k > MINOR_GUARD:
        raise MatrixError(f"minor enumeration guard exceeded: min(m, n) = {k} > {MINOR_GUARD}")
    out = []
    one = R.one()
    for size in range(1, k + 1):
        g = R.zero()
        for ri in itertools.combinations(range(m), size):
            for ci in itertools.combinations(range(n), size):
                d = _bareiss(R, [[rows[i][j] for j in ci] for i in ri])
                g = R.gcdex(g, d)[0]
                if g == one:
                    break
            if g == one:
                break
        out.append(g)
    return out


def determinantal_divisors(A: ExactMatrix) -> list[PrincipalIdeal]:
    """Ideals generated by the i x i minors, i = 1..min(m, n)."""
    R = A.owner
    if isinstance(R, Product):
        raise MatrixError("determinantal_divisors over a product ring: split first")
    if isinstance(R, Residue):
        Z = Integers()
        return [PrincipalIdeal.of(R, math.gcd(d, R.n) % R.n) for d in _minor_gcds(Z, [list(r) for r in A.rows])]
    return [PrincipalIdeal.of(R, d) for d in _minor_gcds(R, [list(r) for r in A.rows])]


def minor_gcd_invariants(A: ExactMatrix) -> list[PrincipalIdeal]:
    """Invariant factors D_i / D_(i-1) in chain order, from minors alone."""
    R = A.owner
    if isinstance(R, Product):
        raise MatrixError("minor_gcd_invariants over a product ring: split first")
    base = Integers() if isinstance(R, Residue) else R
    D = _minor_gcds(base, [list(r) for r in A.rows])
    factors = []
    prev = base.one()
    for d in D:
        factors.append(base.zero() if d == base.zero() else base.exact_div(d, prev))
        prev = d
    if isinstance(R, Residue):
        return [PrincipalIdeal.of(R, math.gcd(f, R.n) % R.n) for f in factors]
    return [PrincipalIdeal.of(R, f) for f in factors]


# ---------------------------------------------------------------------------
# linear systems


def solve_linear(A: ExactMatrix, b: Sequence[Any], snf: SmithDecomposition | None = None):
    """Return a payload column x with A x = b, or None when no solution exists."""
    R = A.owner
    if len(b) != A.nrows:
        raise MatrixError("right-hand side length does not match the row count")
    if isinstance(R, Product):
        parts = split_matrix(A)
        sols = []
        for c, P in enumerate(parts):
            x = solve_linear(P, [v[c] for v in b])
            if x is None:
                return None
            sols.append(x)
        return [tuple(s[i] for s in sols) for i in range(A.ncols)]
    if snf is None:
        snf = smith_normal_form(A)
    m, n = A.shape
    z = R.zero()
    Bb = [z] * m
    for i, row in enumerate(snf.B.rows):
        acc = z
        for a, v in zip(row, b):
            acc = R.add(acc, R.mul(a, v))
        Bb[i] = acc
    y = [z] * n
    k = min(m, n)
    for i in range(m):
        s = snf.S[i, i] if i < k else z
        if not R.divides(s, Bb[i]):
            return None
        if i < k:
            y[i] = R.exact_div(Bb[i], s)
    x = []
    for row in snf.C.rows:
        acc = z
        for a, v in zip(row, y):
            acc = R.add(acc, R.mul(a, v))
        x.append(acc)
    return x


def solve_many(A: ExactMatrix, rhs: Sequence[Sequence[Any]]) -> list:
    """solve_linear for several right-hand sides sharing one Smith form."""
    R = A.owner
    if isinstance(R, Product):
        parts = split_matrix(A)
        per = []
        for c, P in enumerate(parts):
            per.append(solve_many(P, [[v[c] for v in b] for b in rhs]))
        out = []
        for t in range(len(rhs)):
            if any(p[t] is None for p in per):
                out.append(None)
            else:
                out.append([tuple(p[t][i] for p in per) for i in range(A.ncols)])
        return out
    snf = smith_normal_form(A)
    return [solve_linear(A, b, snf) for b in rhs]
