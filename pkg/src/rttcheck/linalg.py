"""Dense exact matrices over the scalar field.

Sizes here are tiny (n <= 4 on one site, n**3 <= 64 on three sites), so a
dense list-of-rows layout with zero-skipping products is plenty.  Entries
are field fractions; a Matrix can also serve as a noncommutative ring
element itself (block entries in Gauss decompositions), which is why it
implements the same +, -, *, inv protocol as scalars.
"""

from __future__ import annotations

from .coeff import Frac, ZERO, ONE


class Matrix:
    __slots__ = ("n", "m", "rows")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.m:
                raise ValueError("ragged rows")

    @staticmethod
    def zeros(n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return Matrix([[ZERO] * m for _ in range(n)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        out = Matrix.zeros(n)
        for i in range(n):
            out.rows[i][i] = ONE
        return out

    @staticmethod
    def unit(n: int, i: int, j: int, c: Frac = ONE) -> "Matrix":
        """c * E_ij with 1-based indices."""
        out = Matrix.zeros(n)
        out.rows[i - 1][j - 1] = c
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, val):
        i, j = ij
        self.rows[i][j] = val

    def __bool__(self):
        return any(any(x for x in r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.n != other.n or self.m != other.m:
            return False
        return all(a == b for ra, rb in zip(self.rows, other.rows)
                   for a, b in zip(ra, rb))

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.m != other.n:
                raise ValueError("shape mismatch")
            out = Matrix.zeros(self.n, other.m)
            orows = other.rows
            for i, ra in enumerate(self.rows):
                ri = out.rows[i]
                for k, aik in enumerate(ra):
                    if not aik:
                        continue
                    for j, bkj in enumerate(orows[k]):
                        if bkj:
                            ri[j] = ri[j] + aik * bkj
            return out
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * x if x else ZERO for x in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.n)]
                       for j in range(self.m)])

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(x) for x in r] for r in self.rows])

    def inv(self) -> "Matrix":
        """Gauss-Jordan inverse; raises ValueError when singular."""
        if self.n != self.m:
            raise ValueError("inverse of a non-square matrix")
        n = self.n
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)]
               for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ValueError("singular matrix")
            if piv != col:
                aug[col], aug[piv] = aug[piv], aug[col]
            inv_p = aug[col][col].inv()
            aug[col] = [x * inv_p if x else ZERO for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y if y else x
                              for x, y in zip(aug[r], aug[col])]
        return Matrix([r[n:] for r in aug])

    def kron(self, other: "Matrix") -> "Matrix":
        out = Matrix.zeros(self.n * other.n, self.m * other.m)
        for i, ra in enumerate(self.rows):
            for j, aij in enumerate(ra):
                if not aij:
                    continue
                for k, rb in enumerate(other.rows):
                    for l, bkl in enumerate(rb):
                        if bkl:
                            out.rows[i * other.n + k][j * other.m + l] = aij * bkl
        return out

    def entries(self):
        """Sorted nonzero entries as (i, j, value), 0-based."""
        return [(i, j, x) for i, r in enumerate(self.rows)
                for j, x in enumerate(r) if x]

    def map_entries_str(self):
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.n}x{self.m})"


def site_operator(mat: Matrix, site: int, sites: int, dim: int) -> Matrix:
    """mat acting on tensor slot `site` (1-based) of dim**sites."""
    out = None
    for k in range(1, sites + 1):
        f = mat if k == site else Matrix.identity(dim)
        out = f if out is None else out.kron(f)
    return out


def place_two_site(R2: Matrix, n: int, sites: int, si: int, sj: int) -> Matrix:
    """Embed a two-site operator into slots (si, sj) of n**sites.

    Slots are 1-based and may come in either order; place_two_site(R, n, 2,
    2, 1) is R_21.  Free slots carry the identity.
    """
    if si == sj or not (1 <= si <= sites and 1 <= sj <= sites):
        raise ValueError("need two distinct slots in range")
    dim = n ** sites
    rest = [k for k in range(1, sites + 1) if k not in (si, sj)]
    out = Matrix.zeros(dim)

    def fuse(assign: dict) -> int:
        idx = 0
        for k in range(1, sites + 1):
            idx = idx * n + assign[k]
        return idx

    for p in range(n):
        for q in range(n):
            for p2 in range(n):
                for q2 in range(n):
                    val = R2.rows[p * n + q][p2 * n + q2]
                    if not val:
                        continue
                    for free in range(n ** len(rest)):
                        f = free
                        assign_r = {}
                        assign_c = {}
                        for k in reversed(rest):
                            assign_r[k] = assign_c[k] = f % n
                            f //= n
                        assign_r[si], assign_r[sj] = p, q
                        assign_c[si], assign_c[sj] = p2, q2
                        out.rows[fuse(assign_r)][fuse(assign_c)] = val
    return out
