"""Free associative algebra on mode generators with matrix series.

Generators are the series modes of an n x n generating matrix, one family
per sign: the + family pairs mode -m with z**m (m >= 0) and the - family
mode m with z**-m, so a letter's mode is always the negated z-exponent.
Mode-0 letters above the diagonal (+ family) or below it (- family) are
identically zero and rejected at construction; diagonal mode-0 letters
carry adjoinable inverses that cancel eagerly against their mates during
multiplication.

NCPoly is the free unital algebra over the exact coefficient field on
these letters; words are stored as tuples of interned small integers.
SeriesNC is a one-sided truncated power series with NCPoly coefficients
(the entry type of MatrixSeries), supporting order-by-order inversion.
MatrixSeries houses the generating matrices, their inverses via block
back-substitution, and kernel-weighted two-variable products.
"""

from __future__ import annotations

import itertools

from . import coeff, formal
from .coeff import Frac, ONE, ZERO

PLUS = "+"
MINUS = "-"
SIGNS = (PLUS, MINUS)


class NotInvertibleAtOrderZero(ValueError):
    """The constant term of a series has no usable inverse."""


# -- interned generators ------------------------------------------------

_GENS: list = []            # gid -> GenId
_BY_KEY: dict = {}          # (sign, row, col, mode, inv) -> gid


class GenId:
    """One interned mode letter; identity equals interning key equality."""

    __slots__ = ("sign", "row", "col", "mode", "inv", "gid", "key")

    def __init__(self, sign, row, col, mode, inv, gid):
        self.sign = sign
        self.row = row
        self.col = col
        self.mode = mode
        self.inv = inv
        self.gid = gid
        self.key = (sign, row, col, mode, inv)

    def __repr__(self):
        base = "l%s(%d,%d)[%d]" % (self.sign, self.row, self.col, self.mode)
        return base + "^-1" if self.inv else base


def gen(sign: str, row: int, col: int, mode: int, inv: bool = False) -> int:
    """Intern a letter, enforcing sign, mode and triangularity rules."""
    if sign not in SIGNS:
        raise ValueError("sign must be + or -")
    if row < 1 or col < 1:
        raise ValueError("indices are 1-based")
    if sign == PLUS and mode > 0:
        raise ValueError("+ letters carry modes <= 0")
    if sign == MINUS and mode < 0:
        raise ValueError("- letters carry modes >= 0")
    if mode == 0:
        if sign == PLUS and row < col:
            raise ValueError("upper mode-0 letter of the + family is zero")
        if sign == MINUS and row > col:
            raise ValueError("lower mode-0 letter of the - family is zero")
    if inv and not (row == col and mode == 0):
        raise ValueError("inverses exist only for diagonal mode-0 letters")
    key = (sign, row, col, mode, inv)
    gid = _BY_KEY.get(key)
    if gid is None:
        gid = len(_GENS)
        _GENS.append(GenId(sign, row, col, mode, inv, gid))
        _BY_KEY[key] = gid
    return gid


def gen_info(gid: int) -> GenId:
    return _GENS[gid]


def letter(sign: str, row: int, col: int, zexp: int):
    """gid of the coefficient of z**zexp, or None if identically zero."""
    try:
        return gen(sign, row, col, -zexp)
    except ValueError:
        return None


def _mates(x: int, y: int) -> bool:
    a, b = _GENS[x], _GENS[y]
    return (a.mode == 0 and b.mode == 0 and a.row == b.row
            and a.col == b.col and a.row == a.col
            and a.sign == b.sign and a.inv != b.inv)


def _concat(wa: tuple, wb: tuple) -> tuple:
    # each side is already reduced; only the junction can cancel
    i, j = len(wa), 0
    while i > 0 and j < len(wb) and _mates(wa[i - 1], wb[j]):
        i -= 1
        j += 1
    return wa[:i] + wb[j:]


def word_str(word: tuple) -> str:
    return "*".join(repr(_GENS[g]) for g in word) if word else "1"


def word_key(word: tuple):
    return tuple(_GENS[g].key for g in word)


def word_mode(word: tuple) -> int:
    """Signed total mode of a word."""
    return sum(_GENS[g].mode for g in word)


def word_degree(word: tuple) -> int:
    """Mode-degree filtration weight: sum of |mode| over letters."""
    return sum(abs(_GENS[g].mode) for g in word)


# -- noncommutative polynomials -----------------------------------------

class NCPoly:
    """Finitely supported map from reduced words to field coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly()

    @staticmethod
    def scalar(c) -> "NCPoly":
        c = c if isinstance(c, Frac) else Frac.from_int(c)
        return NCPoly({(): c} if c else {})

    @staticmethod
    def one() -> "NCPoly":
        return NCPoly.scalar(1)

    @staticmethod
    def from_gen(gid: int, c: Frac = ONE) -> "NCPoly":
        return NCPoly({(gid,): c} if c else {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            acc = c if acc is None else acc + c
            if acc:
                out[w] = acc
            elif w in out:
                del out[w]
        return NCPoly(out)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Frac, int)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = _concat(wa, wb)
                c = ca * cb
                acc = out.get(w)
                acc = c if acc is None else acc + c
                if acc:
                    out[w] = acc
                elif w in out:
                    del out[w]
        return NCPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (Frac, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NCPoly":
        c = c if isinstance(c, Frac) else Frac.from_int(c)
        if not c:
            return NCPoly()
        return NCPoly({w: x * c for w, x in self.terms.items()})

    def inv(self) -> "NCPoly":
        """Inverse of a single invertible word; ValueError otherwise."""
        if len(self.terms) != 1:
            raise ValueError("only monomials can be inverted")
        (word, c), = self.terms.items()
        rev = []
        for g in reversed(word):
            info = _GENS[g]
            if not (info.row == info.col and info.mode == 0):
                raise ValueError("letter %r has no inverse" % (info,))
            rev.append(gen(info.sign, info.row, info.col, 0, not info.inv))
        return NCPoly({tuple(rev): c.inv()})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self - other).is_zero

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def max_degree(self) -> int:
        return max((word_degree(w) for w in self.terms), default=0)

    def specialize(self, point):
        """Map coefficients through a SpecPoint; words left intact."""
        out = {}
        for w, c in self.terms.items():
            val = c.specialize(point)
            if val:
                out[w] = val
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*%s" % (c, word_str(w))
                          for w, c in self.items())


# -- one-sided truncated series over NCPoly ------------------------------

class SeriesNC:
    """Map z-exponent -> NCPoly on a one-sided window.

    sign + lives on [0, order] and is exactly zero below; sign - mirrors
    on [-order, 0].  Coefficients beyond the window are truncated away;
    ring operations stay exact on the window.
    """

    __slots__ = ("sign", "order", "coeffs")

    def __init__(self, sign: str, order: int, coeffs: dict | None = None):
        self.sign = sign
        self.order = order
        self.coeffs = {}
        for e, p in (coeffs or {}).items():
            self._check_exp(e)
            if p:
                self.coeffs[e] = p

    def _check_exp(self, e: int):
        if self.sign == PLUS and not 0 <= e <= self.order:
            raise ValueError("exponent %d outside + window" % e)
        if self.sign == MINUS and not -self.order <= e <= 0:
            raise ValueError("exponent %d outside - window" % e)

    def window(self):
        return ((0, self.order) if self.sign == PLUS
                else (-self.order, 0))

    def get(self, e: int) -> NCPoly:
        return self.coeffs.get(e, NCPoly.zero())

    def _like(self, coeffs: dict) -> "SeriesNC":
        return SeriesNC(self.sign, self.order, coeffs)

    def _compat(self, other: "SeriesNC"):
        if self.sign != other.sign or self.order != other.order:
            raise ValueError("series windows disagree")

    def __add__(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for e, p in other.coeffs.items():
            q = out.get(e)
            q = p if q is None else q + p
            if q:
                out[e] = q
            elif e in out:
                del out[e]
        return self._like(out)

    def __neg__(self):
        return self._like({e: -p for e, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Frac, int, NCPoly)):
            return self.scale(other)
        self._compat(other)
        lo, hi = self.window()
        out: dict = {}
        for ea, pa in self.coeffs.items():
            for eb, pb in other.coeffs.items():
                e = ea + eb
                if not lo <= e <= hi:
                    continue
                p = pa * pb
                q = out.get(e)
                q = p if q is None else q + p
                if q:
                    out[e] = q
                elif e in out:
                    del out[e]
        return self._like(out)

    def __rmul__(self, other):
        if isinstance(other, (Frac, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "SeriesNC":
        if isinstance(c, (Frac, int)):
            c = NCPoly.scalar(c)
        return self._like({e: c * p for e, p in self.coeffs.items()})

    def scale_arg(self, c: Frac) -> "SeriesNC":
        """Substitute z -> c*z for an invertible scalar c."""
        cinv = c.inv()
        return self._like({
            e: p * (c ** e if e >= 0 else cinv ** -e)
            for e, p in self.coeffs.items()})

    def inv(self) -> "SeriesNC":
        """Order-by-order inverse; needs an invertible constant term."""
        c0 = self.coeffs.get(0)
        if c0 is None:
            raise NotInvertibleAtOrderZero("constant term vanishes")
        try:
            c0i = c0.inv()
        except ValueError as exc:
            raise NotInvertibleAtOrderZero(str(exc)) from exc
        sgn = 1 if self.sign == PLUS else -1
        out = {0: c0i}
        for d in range(1, self.order + 1):
            acc = NCPoly.zero()
            for t in range(1, d + 1):
                p = self.coeffs.get(sgn * t)
                if p is not None:
                    acc = acc + p * out[sgn * (d - t)]
            out[sgn * d] = -(c0i * acc)
        return self._like(out)

    def __eq__(self, other):
        if not isinstance(other, SeriesNC):
            return NotImplemented
        if self.sign != other.sign or self.order != other.order:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.get(e) == other.get(e) for e in keys)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        lo, hi = self.window()
        rows = ["z^%d: %r" % (e, self.coeffs[e])
                for e in range(lo, hi + 1) if e in self.coeffs]
        return "SeriesNC(%s)" % ("; ".join(rows) or "0")


def series_one(sign: str, order: int) -> SeriesNC:
    return SeriesNC(sign, order, {0: NCPoly.one()})


def series_zero(sign: str, order: int) -> SeriesNC:
    return SeriesNC(sign, order)


# -- matrix series -------------------------------------------------------

class MatrixSeries:
    """n x n grid of SeriesNC sharing one sign and truncation order."""

    __slots__ = ("n", "sign", "order", "grid")

    def __init__(self, n: int, sign: str, order: int, grid=None):
        self.n = n
        self.sign = sign
        self.order = order
        if grid is None:
            grid = [[series_zero(sign, order) for _ in range(n)]
                    for _ in range(n)]
        self.grid = grid

    @staticmethod
    def identity(n: int, sign: str, order: int) -> "MatrixSeries":
        M = MatrixSeries(n, sign, order)
        for i in range(n):
            M.grid[i][i] = series_one(sign, order)
        return M

    def entry(self, i: int, j: int) -> SeriesNC:
        """1-based entry access."""
        return self.grid[i - 1][j - 1]

    def coeff(self, i: int, j: int, e: int) -> NCPoly:
        return self.entry(i, j).get(e)

    def mul(self, other: "MatrixSeries") -> "MatrixSeries":
        if (self.n, self.sign, self.order) != (other.n, other.sign,
                                               other.order):
            raise ValueError("matrix series shapes disagree")
        n = self.n
        out = MatrixSeries(n, self.sign, self.order)
        for i in range(n):
            for j in range(n):
                acc = series_zero(self.sign, self.order)
                for t in range(n):
                    acc = acc + self.grid[i][t] * other.grid[t][j]
                out.grid[i][j] = acc
        return out

    def __eq__(self, other):
        if not isinstance(other, MatrixSeries):
            return NotImplemented
        return (self.n == other.n and self.sign == other.sign
                and self.order == other.order
                and all(self.grid[i][j] == other.grid[i][j]
                        for i in range(self.n) for j in range(self.n)))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def to_dict(self) -> dict:
        """JSON-ready dump: entries keyed "i,j", exponents as strings."""
        ent = {}
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                ser = self.entry(i, j)
                dump = {str(e): [[word_str(w), str(c)]
                                 for w, c in ser.coeffs[e].items()]
                        for e in sorted(ser.coeffs)}
                if dump:
                    ent["%d,%d" % (i, j)] = dump
        return {"n": self.n, "sign": self.sign, "order": self.order,
                "entries": ent}


def build_L(sign: str, n: int, order: int) -> MatrixSeries:
    """Generic generating matrix; mode-0 triangularity built in."""
    M = MatrixSeries(n, sign, order)
    lo, hi = (0, order) if sign == PLUS else (-order, 0)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            coeffs = {}
            for e in range(lo, hi + 1):
                g = letter(sign, i, j, e)
                if g is not None:
                    coeffs[e] = NCPoly.from_gen(g)
            M.grid[i - 1][j - 1] = SeriesNC(sign, order, coeffs)
    return M


def _triangular_kind(A):
    """lower / upper / diag for an NCPoly matrix, None if neither."""
    n = len(A)
    up = any(A[i][j] for i in range(n) for j in range(i + 1, n))
    low = any(A[i][j] for i in range(n) for j in range(i))
    if up and low:
        return None
    return "upper" if up else ("lower" if low else "diag")


def _invert_mode0(A):
    """Inverse of a triangular NCPoly matrix with invertible diagonal."""
    n = len(A)
    kind = _triangular_kind(A)
    if kind is None:
        raise NotInvertibleAtOrderZero("constant term is not triangular")
    try:
        dinv = [A[i][i].inv() for i in range(n)]
    except ValueError as exc:
        raise NotInvertibleAtOrderZero(str(exc)) from exc
    B = [[NCPoly.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        B[i][i] = dinv[i]
    if kind == "lower":
        # forward substitution: B_ij = -d_i^{-1} sum_{j<=t<i} A_it B_tj
        for i in range(n):
            for j in range(i - 1, -1, -1):
                acc = NCPoly.zero()
                for t in range(j, i):
                    acc = acc + A[i][t] * B[t][j]
                B[i][j] = -(dinv[i] * acc)
    elif kind == "upper":
        for i in range(n - 1, -1, -1):
            for j in range(i + 1, n):
                acc = NCPoly.zero()
                for t in range(i + 1, j + 1):
                    acc = acc + A[i][t] * B[t][j]
                B[i][j] = -(dinv[i] * acc)
    return B


def invert_matrix_series(L: MatrixSeries) -> MatrixSeries:
    """Two-sided inverse up to truncation by block back-substitution.

    With L = A_0 + A_rest (A_rest strictly inside the window), the inverse
    is sum_j (-A_0^{-1} A_rest)^j A_0^{-1}, a finite sum at fixed order.
    """
    n, sign, order = L.n, L.sign, L.order
    sgn = 1 if sign == PLUS else -1
    A0 = [[L.grid[i][j].get(0) for j in range(n)] for i in range(n)]
    B0 = _invert_mode0(A0)
    # M_d = -A_0^{-1} * sum_{t=1..d} A_t M_{d-t}, M_0 = A_0^{-1}
    mats = {0: B0}
    for d in range(1, order + 1):
        acc = [[NCPoly.zero() for _ in range(n)] for _ in range(n)]
        for t in range(1, d + 1):
            prev = mats[d - t]
            for i in range(n):
                for j in range(n):
                    s = acc[i][j]
                    for m in range(n):
                        at = L.grid[i][m].get(sgn * t)
                        if at:
                            s = s + at * prev[m][j]
                    acc[i][j] = s
        mats[d] = [[NCPoly.zero() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s = NCPoly.zero()
                for m in range(n):
                    if acc[m][j]:
                        s = s + B0[i][m] * acc[m][j]
                mats[d][i][j] = -s
    out = MatrixSeries(n, sign, order)
    for i in range(n):
        for j in range(n):
            coeffs = {sgn * d: mats[d][i][j] for d in range(order + 1)
                      if mats[d][i][j]}
            out.grid[i][j] = SeriesNC(sign, order, coeffs)
    return out


# -- kernel-weighted two-variable products --------------------------------

class TwoVarSeries:
    """n x n grid of maps (z-exp, w-exp) -> NCPoly inside a square box."""

    __slots__ = ("n", "box", "entries")

    def __init__(self, n: int, box: int):
        self.n = n
        self.box = box
        self.entries = [[{} for _ in range(n)] for _ in range(n)]

    def get(self, i: int, j: int, ez: int, ew: int) -> NCPoly:
        return self.entries[i - 1][j - 1].get((ez, ew), NCPoly.zero())

    def add_to(self, i: int, j: int, ez: int, ew: int, p: NCPoly):
        if abs(ez) > self.box or abs(ew) > self.box or not p:
            return
        ent = self.entries[i - 1][j - 1]
        q = ent.get((ez, ew))
        q = p if q is None else q + p
        if q:
            ent[(ez, ew)] = q
        elif (ez, ew) in ent:
            del ent[(ez, ew)]


def kernel_multiply(f: Frac, direction: str, A: MatrixSeries,
                    B: MatrixSeries, box: int) -> TwoVarSeries:
    """f(z, w) * A(z) * B(w) truncated to the square box |exp| <= box.

    The kernel must be homogeneous of degree 0 in (z, w); it is expanded
    in the given direction far enough that the one-sided windows of A and
    B make every box coefficient a finite, complete sum.
    """
    korder = 2 * max(A.order, B.order, box) + 2
    ker = formal.expand(f, direction, korder)
    klo, khi = ker.window()
    n = A.n
    out = TwoVarSeries(n, box)
    pairs = [(k, ker.get(k)) for k in range(klo, khi + 1)]
    pairs = [(k, c) for k, c in pairs if c]
    for i in range(n):
        for j in range(n):
            for t in range(n):
                za = A.grid[i][t].coeffs
                wb = B.grid[t][j].coeffs
                if not za or not wb:
                    continue
                for (ea, pa), (eb, pb) in itertools.product(
                        za.items(), wb.items()):
                    prod = None
                    for k, c in pairs:
                        ez, ew = ea + k, eb - k
                        if abs(ez) > box or abs(ew) > box:
                            continue
                        if prod is None:
                            prod = pa * pb
                        out.add_to(i + 1, j + 1, ez, ew, prod.scale(c))
    return out
