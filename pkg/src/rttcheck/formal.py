"""Truncated Laurent windows and formal delta support.

A Series is a window of exactly-known coefficients of a formal Laurent
expansion in one spectral variable.  Both one-sided expansions of rational
functions (around 0 and around infinity) and two-sided objects built from
them (currents, delta windows) fit; every operation tracks how far the
result stays exact, so a check that reads a coefficient outside the window
is a bug, not a silent truncation.

The expansion difference iota_+(f) - iota_-(f) of a rational function is
supported on formal delta functions at the poles; DeltaDecomposition makes
that structure explicit and is verified coefficient-by-coefficient.
"""

from __future__ import annotations

from . import coeff
from .coeff import Frac, ZERO, ONE

NEG_INF = -(1 << 40)
POS_INF = 1 << 40


class PoleAtExpansionPoint(Exception):
    """The function has a pole exactly at the expansion point."""


class HigherOrderPole(Exception):
    """Delta decomposition needs simple poles."""


class Series:
    """Coefficients exactly known for exponents in [lo, hi].

    zero_below / zero_above additionally assert that every coefficient
    outside the window on that side vanishes (one-sided expansions).
    Coefficient values live in any ring with +, -, * and truthiness.
    """

    __slots__ = ("coeffs", "lo", "hi", "zero_below", "zero_above", "zero")

    def __init__(self, coeffs, lo, hi, zero=ZERO,
                 zero_below=False, zero_above=False):
        self.coeffs = {e: c for e, c in coeffs.items() if c}
        self.lo = lo
        self.hi = hi
        self.zero_below = zero_below
        self.zero_above = zero_above
        self.zero = zero

    def get(self, e):
        if e < self.lo and not self.zero_below:
            raise KeyError(f"exponent {e} below exact window [{self.lo}, {self.hi}]")
        if e > self.hi and not self.zero_above:
            raise KeyError(f"exponent {e} above exact window [{self.lo}, {self.hi}]")
        return self.coeffs.get(e, self.zero)

    def items(self):
        return sorted(self.coeffs.items())

    def window(self):
        return (self.lo, self.hi)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        lo = "-inf" if self.lo <= NEG_INF else self.lo
        hi = "+inf" if self.hi >= POS_INF else self.hi
        return f"Series[{lo}..{hi}]({len(self.coeffs)} coeffs)"

    # -- linear structure ---------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        zb = self.zero_below and other.zero_below
        za = self.zero_above and other.zero_above
        lo = min(self.lo, other.lo) if zb else max(self.lo, other.lo)
        hi = max(self.hi, other.hi) if za else min(self.hi, other.hi)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        out = {e: c for e, c in out.items() if lo <= e <= hi and c}
        return Series(out, lo, hi, self.zero, zb, za)

    def __neg__(self):
        return Series({e: -c for e, c in self.coeffs.items()},
                      self.lo, self.hi, self.zero,
                      self.zero_below, self.zero_above)

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        """Multiply every coefficient by a scalar on the left."""
        return Series({e: c * x for e, x in self.coeffs.items()},
                      self.lo, self.hi, self.zero,
                      self.zero_below, self.zero_above)

    def shift(self, k: int):
        """Multiply by var**k."""
        lo = self.lo + k if self.lo > NEG_INF else self.lo
        hi = self.hi + k if self.hi < POS_INF else self.hi
        return Series({e + k: c for e, c in self.coeffs.items()},
                      lo, hi, self.zero, self.zero_below, self.zero_above)

    def scale_arg(self, mu: Frac):
        """Substitute var -> mu * var."""
        out = {}
        for e, c in self.coeffs.items():
            out[e] = c * mu ** e if e >= 0 else c * mu.inv() ** (-e)
        return Series(out, self.lo, self.hi, self.zero,
                      self.zero_below, self.zero_above)

    def valuation(self):
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def top(self):
        if not self.coeffs:
            return None
        return max(self.coeffs)

    def mul(self, other: "Series"):
        """Convolution; both factors must be one-sided the same way."""
        if self.zero_below and other.zero_below:
            va = min(self.coeffs, default=self.lo)
            vb = min(other.coeffs, default=other.lo)
            hi = min(self.hi + vb, other.hi + va)
            out = {}
            for ea, ca in self.coeffs.items():
                for eb, cb in other.coeffs.items():
                    e = ea + eb
                    if e > hi:
                        continue
                    p = ca * cb
                    out[e] = out[e] + p if e in out else p
            return Series(out, va + vb, hi, self.zero, zero_below=True)
        if self.zero_above and other.zero_above:
            ta = max(self.coeffs, default=self.hi)
            tb = max(other.coeffs, default=other.hi)
            lo = max(self.lo + tb, other.lo + ta)
            out = {}
            for ea, ca in self.coeffs.items():
                for eb, cb in other.coeffs.items():
                    e = ea + eb
                    if e < lo:
                        continue
                    p = ca * cb
                    out[e] = out[e] + p if e in out else p
            return Series(out, lo, ta + tb, self.zero, zero_above=True)
        raise ValueError("can only convolve series one-sided in the same direction")

    def truncate(self, lo: int, hi: int):
        keep = {e: c for e, c in self.coeffs.items() if lo <= e <= hi}
        return Series(keep, max(lo, self.lo), min(hi, self.hi), self.zero,
                      self.zero_below and lo <= self.lo,
                      self.zero_above and hi >= self.hi)


def series_eq(s1: Series, s2: Series):
    """Compare on the overlap window; (True, None) or (False, exponent)."""
    lo = max(s1.lo, s2.lo)
    hi = min(s1.hi, s2.hi)
    for e in range(lo, hi + 1):
        if s1.get(e) != s2.get(e):
            return False, e
    return True, None


# -- rational expansion ------------------------------------------------


def _split_by_var(p, vi: int):
    """Polynomial -> {exponent in var vi: var-free Frac coefficient}."""
    out: dict = {}
    for mono, c in p.terms():
        e = mono[vi]
        rest = mono[:vi] + (0,) + mono[vi + 1:]
        d = out.setdefault(e, {})
        d[rest] = d.get(rest, 0) + c
    return {e: Frac(coeff._RING.from_dict(d)) for e, d in out.items()}


def _inv_series_at_zero(fac_coeffs: dict, order: int) -> Series:
    """Inverse of a polynomial with nonzero constant term, at var = 0."""
    q0 = fac_coeffs.get(0, ZERO)
    if not q0:
        raise PoleAtExpansionPoint("factor vanishes at the expansion point")
    inv0 = q0.inv()
    deg = max(fac_coeffs)
    out = {0: inv0}
    for e in range(1, order + 1):
        acc = ZERO
        for j in range(1, min(e, deg) + 1):
            qj = fac_coeffs.get(j)
            if qj is not None and (e - j) in out:
                acc = acc + qj * out[e - j]
        if acc:
            out[e] = -inv0 * acc
    return Series(out, 0, order, zero_below=True)


def expand_at_zero(f: Frac, vi: int, order: int) -> Series:
    """Laurent window of f around var = 0, exact up to exponent `order`."""
    if not f:
        return Series({}, NEG_INF, order, zero_below=True)
    num = _split_by_var(f.num, vi)
    vnum = min(num)
    factors = []
    shift = vnum
    for fid, mult in f.den:
        fac = _split_by_var(coeff.factor_poly(fid), vi)
        vfac = min(fac)
        if vfac:
            fac = {e - vfac: c for e, c in fac.items()}
            shift -= vfac * mult
        factors.append((fac, mult))
    inner = order - shift
    if inner < 0:
        return Series({}, shift, order, zero_below=True)
    if vnum:
        num = {e - vnum: c for e, c in num.items()}
    acc = Series(num, 0, inner, zero_below=True).truncate(0, inner)
    for fac, mult in factors:
        if max(fac) == 0:
            acc = acc.scale(fac[0].inv() ** mult)
        else:
            inv = _inv_series_at_zero(fac, inner)
            for _ in range(mult):
                acc = acc.mul(inv)
    if f.dc != 1:
        acc = acc.scale(Frac.from_rational(1, f.dc))
    return acc.shift(shift).truncate(NEG_INF, order)


def _reverse_in_var(f: Frac, vi: int):
    """Return (g, k) with f(var -> 1/var) = g * var**k, g regular at 0."""
    def rev(p):
        d = p.degree(vi)
        out = {}
        for mono, c in p.terms():
            m = list(mono)
            m[vi] = d - m[vi]
            out[tuple(m)] = c
        return coeff._RING.from_dict(out), d

    num, dn = rev(f.num)
    shift = -dn
    g = Frac(num)
    for fid, mult in f.den:
        fp, df = rev(coeff.factor_poly(fid))
        shift += df * mult
        fg = Frac(fp)
        g = g * fg.inv() ** mult
    if f.dc != 1:
        g = g * Frac.from_rational(1, f.dc)
    return g, shift


def expand_at_inf(f: Frac, vi: int, order: int) -> Series:
    """Laurent window of f around var = infinity, exact down to -order."""
    if not f:
        return Series({}, -order, POS_INF, zero_above=True)
    g, k = _reverse_in_var(f, vi)
    # f(var) = g(1/var) * var**-k, so coefficient e of g lands at -k - e
    s = expand_at_zero(g, vi, order - k)
    out = {-k - e: c for e, c in s.coeffs.items() if -k - e >= -order}
    return Series(out, -order, POS_INF, zero_above=True)


RATIO_Z_OVER_W = "z/w"
RATIO_W_OVER_Z = "w/z"


def _homog_ratio(f: Frac):
    """Rewrite a (z, w)-homogeneous degree-0 fraction as g(z) with w = 1."""
    zi, wi = 5, 6

    def collapse(p):
        deg = None
        out = {}
        for mono, c in p.terms():
            d = mono[zi] + mono[wi]
            if deg is None:
                deg = d
            elif d != deg:
                raise ValueError("kernel is not homogeneous in z, w")
            m = list(mono)
            m[wi] = 0
            out[tuple(m)] = c
        return coeff._RING.from_dict(out), (deg or 0)

    num, dn = collapse(f.num)
    total = dn
    g = Frac(num)
    for fid, mult in f.den:
        fp, df = collapse(coeff.factor_poly(fid))
        total -= df * mult
        g = g * Frac(fp).inv() ** mult
    if total != 0:
        raise ValueError("ratio function has nonzero homogeneous degree")
    if f.dc != 1:
        g = g * Frac.from_rational(1, f.dc)
    return g


def expand(f: Frac, direction: str, order: int) -> Series:
    """Expand a degree-0 homogeneous f(z, w) in powers of z/w.

    direction z/w expands for |z| << |w|, direction w/z for |w| << |z|;
    exponent e always refers to (z/w)**e.
    """
    g = _homog_ratio(f)
    if direction == RATIO_Z_OVER_W:
        return expand_at_zero(g, 5, order)
    if direction == RATIO_W_OVER_Z:
        return expand_at_inf(g, 5, order)
    raise ValueError(f"unknown direction {direction!r}")


def delta_truncated(order: int) -> Series:
    """Window of the formal delta sum_n x**n."""
    return Series({e: ONE for e in range(-order, order + 1)}, -order, order)


class DeltaDecomposition:
    """iota_+(f) - iota_-(f) written as sum_i c_i * delta(x / pole_i)."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = list(terms)

    def window(self, order: int) -> Series:
        out = {}
        for pole, c in self.terms:
            for e in range(-order, order + 1):
                val = c * (pole ** (-e) if e <= 0 else pole.inv() ** e)
                out[e] = out[e] + val if e in out else val
        return Series(out, -order, order)

    def __repr__(self):
        body = ", ".join(f"({p}) * delta(x/({pole}))" for pole, p in self.terms)
        return f"DeltaDecomposition[{body or '0'}]"


def expansion_difference(f: Frac, order: int):
    """Classify iota_+(f) - iota_-(f) on the window [-order, order].

    Returns (kind, decomposition, diff_window) with kind one of
    "zero", "delta", "mismatch".  f is a degree-0 homogeneous function of
    (z, w) viewed as a function of x = z/w.
    """
    g = coeff.reduced(_homog_ratio(f))
    s0 = expand_at_zero(g, 5, order)
    si = expand_at_inf(g, 5, order)
    diff = Series(dict(s0.coeffs), -order, order) - \
        Series(dict(si.coeffs), -order, order)
    if not diff:
        return "zero", DeltaDecomposition([]), diff

    terms = []
    for fid, mult in g.den:
        fac = _split_by_var(coeff.factor_poly(fid), 5)
        vfac = min(fac)
        if vfac:
            fac = {e - vfac: c for e, c in fac.items()}
        deg = max(fac)
        if deg == 0:
            continue
        if deg > 1:
            raise HigherOrderPole(f"nonlinear factor in the ratio variable: "
                                  f"{coeff.factor_poly(fid)}")
        if mult > 1:
            raise HigherOrderPole(f"pole of order {mult} in the ratio variable")
        c0, c1 = fac.get(0, ZERO), fac[1]
        if not c0:
            raise PoleAtExpansionPoint("pole at the expansion point itself")
        pole = -c0 / c1
        # residue: drop this factor, evaluate the rest at x = pole, divide by c1
        rest = Frac(g.num, tuple((i, m) for i, m in g.den if i != fid), g.dc)
        res = coeff.subs_var(rest, 5, pole) / c1
        terms.append((pole, -res / pole))
    deco = DeltaDecomposition(terms)
    ok, _ = series_eq(diff, deco.window(order))
    return ("delta" if ok else "mismatch"), deco, diff
