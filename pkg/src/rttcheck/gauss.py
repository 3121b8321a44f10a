"""Gauss decomposition over a noncommutative ring via quasi-determinants.

A square matrix L with entries in a noncommutative ring factors as
L = F K E with F lower unitriangular, K diagonal, E upper unitriangular,
whenever the successive Schur complements have invertible corners.  The
diagonal entries are quasi-determinants of leading principal minors, and
the E / F entries are ratios of quasi-determinants of bordered minors.

Entries are duck-typed: anything with +, -, * and .inv() works (exact
rational functions, matrices over them, or noncommutative series).  Two
independent routes are provided and compared in tests, never collapsed:
the sequential Schur-complement elimination (fast, used by default) and
bordered quasi-determinants via complementary-minor expansion (slow, kept
as oracle), with ((X^{-1})_ji)^{-1} as a third route where that inverse
entry exists.
"""

from __future__ import annotations


class EntryNotInvertible(Exception):
    """A pivot required by the elimination has no inverse."""


def _inv(x, where: str):
    try:
        return x.inv()
    except (ZeroDivisionError, ValueError) as exc:
        raise EntryNotInvertible("%s: %s" % (where, exc)) from exc


class GaussTriple:
    """Factors L = F K E: F lower and E upper unitriangular, K diagonal.

    f and e are full n x n grids (identity off the strict triangle); k is
    the list of diagonal elements.  All off-diagonal entries of every
    intermediate Schur complement are retained in `schur` for tests.
    """

    __slots__ = ("n", "f", "k", "e", "one", "zero", "schur")

    def __init__(self, n, f, k, e, one, zero, schur=None):
        self.n = n
        self.f = f
        self.k = k
        self.e = e
        self.one = one
        self.zero = zero
        self.schur = schur

    def recompose(self):
        """The product F K E as an n x n grid."""
        n = self.n
        fk = [[self.f[i][t] * self.k[t] for t in range(n)] for i in range(n)]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.zero
                for t in range(n):
                    # F is lower, E is upper: only t <= min(i, j) contributes
                    if t <= i and t <= j:
                        acc = acc + fk[i][t] * self.e[t][j]
                row.append(acc)
            out.append(row)
        return out

    def to_dict(self, render=str) -> dict:
        return {
            "n": self.n,
            "f": [[render(x) for x in row] for row in self.f],
            "k": [render(x) for x in self.k],
            "e": [[render(x) for x in row] for row in self.e],
        }


def gauss_decompose(L, one, zero) -> GaussTriple:
    """Sequential Schur-complement elimination of an n x n grid L.

    Step t pivots on the (t, t) entry of the current complement A:
    k_t = A_tt, e_tj = k_t^{-1} A_tj, f_it = A_it k_t^{-1}, and the next
    complement is A_ij - A_it k_t^{-1} A_tj.
    """
    n = len(L)
    A = [list(row) for row in L]
    e = [[one if i == j else zero for j in range(n)] for i in range(n)]
    f = [[one if i == j else zero for j in range(n)] for i in range(n)]
    k = [zero] * n
    stages = []
    for t in range(n):
        stages.append([row[t:] for row in A[t:]])
        kt = A[t][t]
        kinv = _inv(kt, "pivot %d" % (t + 1,))
        k[t] = kt
        for j in range(t + 1, n):
            e[t][j] = kinv * A[t][j]
        for i in range(t + 1, n):
            f[i][t] = A[i][t] * kinv
        for i in range(t + 1, n):
            corr = A[i][t] * kinv
            for j in range(t + 1, n):
                A[i][j] = A[i][j] - corr * A[t][j]
    return GaussTriple(n, f, k, e, one, zero, schur=stages)


def nc_inverse(X, one, zero):
    """Two-sided inverse of an n x n grid over a noncommutative ring.

    Gauss-Jordan with left row operations; raises EntryNotInvertible if a
    pivot (after downward search) has no inverse.
    """
    n = len(X)
    A = [list(row) + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(X)]
    for t in range(n):
        piv = None
        for i in range(t, n):
            try:
                piv = (i, A[i][t].inv())
                break
            except (ZeroDivisionError, ValueError):
                continue
        if piv is None:
            raise EntryNotInvertible("column %d has no invertible pivot"
                                     % (t + 1,))
        i, pinv = piv
        A[t], A[i] = A[i], A[t]
        A[t] = [pinv * x for x in A[t]]
        for i in range(n):
            if i == t:
                continue
            c = A[i][t]
            A[i] = [A[i][j] - c * A[t][j] for j in range(2 * n)]
    return [row[n:] for row in A]


def quasi_det(X, i, j, one, zero):
    """Quasi-determinant |X|_ij by complementary-minor expansion, 1-based.

    |X|_ij = x_ij - row_i(X^{ij}) (X^{ij})^{-1} col_j(X^{ij}) where X^{ij}
    drops row i and column j.  Total whenever the complementary minor is
    invertible; never inverts the boxed entry itself.
    """
    m = len(X)
    if m == 1:
        return X[0][0]
    rows = [t for t in range(m) if t != i - 1]
    cols = [t for t in range(m) if t != j - 1]
    minor = [[X[a][b] for b in cols] for a in rows]
    minv = nc_inverse(minor, one, zero)
    acc = X[i - 1][j - 1]
    for a in range(m - 1):
        for b in range(m - 1):
            acc = acc - X[i - 1][cols[a]] * minv[a][b] * X[rows[b]][j - 1]
    return acc


def quasi_det_via_inverse(X, i, j, one, zero):
    """Oracle route |X|_ij = ((X^{-1})_ji)^{-1}; needs that entry invertible."""
    inv = nc_inverse(X, one, zero)
    return _inv(inv[j - 1][i - 1], "inverse entry (%d, %d)" % (j, i))


def _submatrix(L, rows, cols):
    return [[L[i - 1][j - 1] for j in cols] for i in rows]


def boxed_k(L, i, one, zero):
    """k_i as the quasi-determinant of the leading i x i minor at (i, i)."""
    idx = list(range(1, i + 1))
    return quasi_det(_submatrix(L, idx, idx), i, i, one, zero)


def boxed_e(L, i, j, one, zero):
    """e_ij (i < j) from bordered minors: k_i^{-1} |rows 1..i, cols 1..i-1, j|."""
    rows = list(range(1, i + 1))
    cols = list(range(1, i)) + [j]
    minor = quasi_det(_submatrix(L, rows, cols), i, i, one, zero)
    return _inv(boxed_k(L, i, one, zero), "k_%d" % i) * minor


def boxed_f(L, j, i, one, zero):
    """f_ji (i < j) from bordered minors: |rows 1..i-1, j, cols 1..i| k_i^{-1}."""
    rows = list(range(1, i)) + [j]
    cols = list(range(1, i + 1))
    minor = quasi_det(_submatrix(L, rows, cols), i, i, one, zero)
    return minor * _inv(boxed_k(L, i, one, zero), "k_%d" % i)


def verify_refactor(L, triple: GaussTriple, eq=None):
    """Does F K E recompose to L entrywise?  Returns first mismatch or None."""
    same = eq if eq is not None else (lambda x, y: x == y)
    got = triple.recompose()
    for i in range(triple.n):
        for j in range(triple.n):
            if not same(got[i][j], L[i][j]):
                return (i + 1, j + 1)
    return None
