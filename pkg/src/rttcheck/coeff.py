"""Exact scalars for the two-parameter deformation.

Everything downstream computes over the rational function field

    Q(u, v, kr, ks, a, z, w)

where r = u**2 and s = v**2 (so that half powers r**(1/2), s**(1/2) exist),
kr and ks are the central half-power symbols r**(c/2) and s**(c/2), `a` is an
evaluation parameter and z, w are spectral variables.  Polynomials are sympy
sparse ring elements over ZZ with grlex order u > v > kr > ks > a > z > w.

Fractions are kept lazily normalized: the denominator is stored as a product
of interned factors, so sums and products cancel common kernels by exponent
bookkeeping instead of multivariate gcd.  Full gcd runs only in canon().
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

_RING, U, V, KR, KS, A, Z, W = ring("u v kr ks a z w", ZZ, grlex)
GENS = (U, V, KR, KS, A, Z, W)
VAR_NAMES = ("u", "v", "kr", "ks", "a", "z", "w")
_NVARS = 7

_ZERO_P = _RING.zero
_ONE_P = _RING.one

# interned denominator factors: primitive, positive leading coeff, non-constant
_FACTOR_IDS: dict = {}
_FACTOR_POLYS: list = []
_FACTOR_POWS: list = []  # lazy power caches, one list per factor


def _intern_factor(p):
    """Intern a primitive positive-lead poly, return its id."""
    key = tuple(sorted(p.terms()))
    fid = _FACTOR_IDS.get(key)
    if fid is None:
        fid = len(_FACTOR_POLYS)
        _FACTOR_IDS[key] = fid
        _FACTOR_POLYS.append(p)
        _FACTOR_POWS.append([_ONE_P, p])
    return fid


def factor_poly(fid: int):
    return _FACTOR_POLYS[fid]


def _factor_pow(fid: int, e: int):
    cache = _FACTOR_POWS[fid]
    while len(cache) <= e:
        cache.append(cache[-1] * cache[1])
    return cache[e]


def _den_expand(den: tuple, dc: int):
    p = _ONE_P * dc
    for fid, e in den:
        p = p * _factor_pow(fid, e)
    return p


class Frac:
    """num / (dc * prod factor^e), dc a positive int, factors interned."""

    __slots__ = ("num", "den", "dc")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, num, den: tuple = (), dc: int = 1):
        if not num:
            den, dc = (), 1
        self.num = num
        self.den = den
        self.dc = dc

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Frac":
        return Frac(_ONE_P * n)

    @staticmethod
    def from_rational(p: int, q: int) -> "Frac":
        if q == 0:
            raise ZeroDivisionError("rational with zero denominator")
        if q < 0:
            p, q = -p, -q
        g = _igcd(abs(p), q)
        if g > 1:
            p //= g
            q //= g
        return Frac(_ONE_P * p, (), q)

    # -- predicates ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    @property
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return not self.den and self.dc == 1 and self.num == _ONE_P

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den and self.dc == other.dc:
            return _reduced(self.num + other.num, dict(self.den), self.dc)
        da, db = dict(self.den), dict(other.den)
        lcm = dict(da)
        for fid, e in db.items():
            if lcm.get(fid, 0) < e:
                lcm[fid] = e
        g = _igcd(self.dc, other.dc)
        dclcm = self.dc // g * other.dc
        na = self.num * (dclcm // self.dc)
        for fid, e in lcm.items():
            ea = e - da.get(fid, 0)
            if ea:
                na = na * _factor_pow(fid, ea)
        nb = other.num * (dclcm // other.dc)
        for fid, e in lcm.items():
            eb = e - db.get(fid, 0)
            if eb:
                nb = nb * _factor_pow(fid, eb)
        return _reduced(na + nb, lcm, dclcm)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den, self.dc)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        den = dict(self.den)
        for fid, e in other.den:
            den[fid] = den.get(fid, 0) + e
        return _reduced(self.num * other.num, den, self.dc * other.dc)

    __rmul__ = __mul__

    def inv(self) -> "Frac":
        if not self.num:
            raise ZeroDivisionError("inverting zero")
        num = _ONE_P * self.dc
        for fid, e in self.den:
            num = num * _factor_pow(fid, e)
        c, prim = self.num.primitive()
        dc = int(c)
        if prim.LC < 0:
            prim = -prim
            num = -num
        if prim.is_ground:
            dc *= int(prim.coeff(1))
            den: dict = {}
        else:
            den = {_intern_factor(prim): 1}
        return _reduced(num, den, dc)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num is other.num and self.den == other.den and self.dc == other.dc:
            return True
        return not (self - other).num

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    # -- normal forms ---------------------------------------------------

    def canon(self):
        """Fully cancelled (num, den) polynomial pair, den positive lead."""
        num = self.num
        den = _den_expand(self.den, self.dc)
        if not num:
            return _ZERO_P, _ONE_P
        g = num.gcd(den)
        if not g.is_ground or g.LC != 1:
            num = num.quo(g)
            den = den.quo(g)
        if den.LC < 0:
            num, den = -num, -den
        return num, den

    def __str__(self) -> str:
        num, den = self.canon()
        return f"{num} / {den}"

    __repr__ = __str__

    def sort_key(self):
        return str(self)

    # -- evaluation -----------------------------------------------------

    def specialize(self, point: "SpecPoint"):
        """Value at a concrete point: Fraction, or int mod point.prime."""
        nv = _eval_poly(self.num, point)
        dv = _eval_poly(_ONE_P * self.dc, point)
        for fid, e in self.den:
            fv = _eval_poly(_factor_pow(fid, e), point)
            if point.prime is None:
                dv = dv * fv
            else:
                dv = dv * fv % point.prime
        if point.prime is None:
            if dv == 0:
                raise ZeroDivisionError("SpecPoint hits a denominator zero")
            return nv / dv
        if dv % point.prime == 0:
            raise ZeroDivisionError("SpecPoint hits a denominator zero")
        return nv * pow(dv, -1, point.prime) % point.prime


def _coerce(x):
    if isinstance(x, Frac):
        return x
    if isinstance(x, int):
        return Frac(_ONE_P * x) if x else ZERO
    return NotImplemented


def _reduced(num, den: dict, dc: int) -> Frac:
    """Cancel monomial factor content and the integer constant, then freeze."""
    if not num:
        return ZERO
    if den or dc != 1:
        # split monomial factors out of the denominator
        mono_vec = None
        for fid, e in den.items():
            fp = _FACTOR_POLYS[fid]
            if len(fp) == 1:
                (m, c), = fp.terms()  # c == 1: factors are primitive
                if mono_vec is None:
                    mono_vec = [0] * _NVARS
                for i, mi in enumerate(m):
                    mono_vec[i] += mi * e
        if mono_vec is not None and any(mono_vec):
            cont = None
            for m in num.monoms():
                if cont is None:
                    cont = [min(a, b) for a, b in zip(m, mono_vec)]
                else:
                    cont = [min(a, b) for a, b in zip(cont, m)]
                if not any(cont):
                    cont = None
                    break
            if cont:
                shift = {}
                for mono, c in num.terms():
                    shift[tuple(x - y for x, y in zip(mono, cont))] = c
                num = _RING.from_dict(shift)
                left = [a - b for a, b in zip(mono_vec, cont)]
                den = {f: e for f, e in den.items()
                       if len(_FACTOR_POLYS[f]) > 1}
                if any(left):
                    den[_intern_factor(_RING.from_dict(
                        {tuple(left): ZZ(1)}))] = 1
        if dc != 1:
            c, prim = num.primitive()
            g = _igcd(int(c), dc)
            if g > 1:
                num = num.quo_ground(ZZ(g))
                dc //= g
        den_t = tuple(sorted((f, e) for f, e in den.items() if e))
    else:
        den_t = ()
    return Frac(num, den_t, dc)


def reduced(f: Frac) -> Frac:
    """Equal fraction, fully cancelled, denominator split into irreducibles."""
    num, den = f.canon()
    if not num:
        return ZERO
    if den.is_ground:
        dc = int(den.coeff(1))
        if dc < 0:
            num, dc = -num, -dc
        return Frac(num, (), dc)
    const, facs = den.factor_list()
    dc = int(const)
    out: dict = {}
    for fac, mult in facs:
        if fac.LC < 0:
            fac = -fac
            if mult % 2:
                dc = -dc
        fid = _intern_factor(fac)
        out[fid] = out.get(fid, 0) + mult
    if dc < 0:
        num, dc = -num, -dc
    return Frac(num, tuple(sorted(out.items())), dc)


def _eval_poly(p, point: "SpecPoint"):
    vals = point.values
    prime = point.prime
    if prime is None:
        acc = Fraction(0)
        for mono, c in p.terms():
            t = Fraction(int(c))
            for i, e in enumerate(mono):
                if e:
                    t *= vals[i] ** e
            acc += t
        return acc
    acc = 0
    for mono, c in p.terms():
        t = int(c) % prime
        for i, e in enumerate(mono):
            if e:
                t = t * pow(vals[i], e, prime) % prime
        acc = (acc + t) % prime
    return acc


ZERO = Frac(_ZERO_P)
ONE = Frac(_ONE_P)

u = Frac(U)
v = Frac(V)
kr = Frac(KR)
ks = Frac(KS)
a = Frac(A)
z = Frac(Z)
w = Frac(W)

r = u * u
s = v * v


def gen(name: str) -> Frac:
    return {"u": u, "v": v, "kr": kr, "ks": ks, "a": a, "z": z, "w": w}[name]


def half_power(x: Frac, k: int) -> Frac:
    """x**(k/2) for x a signless monomial in r = u**2 and s = v**2.

    Raises ValueError when the half power does not live in the field.
    """
    num, den = x.canon()
    if len(num) != 1 or len(den) != 1:
        raise ValueError(f"not a monomial: {x}")
    (mn, cn), = num.terms()
    (md, cd), = den.terms()
    if cn != 1 or cd != 1:
        raise ValueError(f"monomial has nontrivial coefficient: {x}")
    exps = [n - d for n, d in zip(mn, md)]
    if any(exps[2:]):
        raise ValueError(f"not a monomial in r, s: {x}")
    if (exps[0] * k) % 2 or (exps[1] * k) % 2:
        raise ValueError(f"half power leaves the field: {x}**({k}/2)")
    eu, ev = exps[0] * k // 2, exps[1] * k // 2
    out = ONE
    out = out * (u ** eu if eu >= 0 else u.inv() ** (-eu))
    out = out * (v ** ev if ev >= 0 else v.inv() ** (-ev))
    return out


def subs_var(f: Frac, var_index: int, val: Frac) -> Frac:
    """Substitute one generator by an arbitrary field element."""
    if not f.num:
        return ZERO

    def sub_poly(p) -> Frac:
        pows = {0: ONE}
        acc = ZERO
        for mono, c in p.terms():
            e = mono[var_index]
            if e not in pows:
                pows[e] = val ** e
            rest = _RING.from_dict(
                {mono[:var_index] + (0,) + mono[var_index + 1:]: c})
            acc = acc + Frac(rest) * pows[e]
        return acc

    out = sub_poly(f.num)
    for fid, e in f.den:
        fv = sub_poly(_FACTOR_POLYS[fid])
        if not fv.num:
            raise ZeroDivisionError("substitution lands on a pole")
        out = out * fv.inv() ** e
    if f.dc != 1:
        out = out * Frac.from_rational(1, f.dc)
    return out


class SpecPoint:
    """Concrete values for (u, v, kr, ks, a, z, w); prime=None means Q."""

    __slots__ = ("values", "prime")

    def __init__(self, values, prime=None):
        if len(values) != _NVARS:
            raise ValueError("need 7 values")
        if prime is None:
            self.values = tuple(Fraction(x) for x in values)
        else:
            self.values = tuple(int(x) % prime for x in values)
        self.prime = prime
        if any(self.values[i] == 0 for i in range(_NVARS)):
            raise ValueError("SpecPoint coordinates must be nonzero")
        if self.values[0] == self.values[1]:
            raise ValueError("u = v degenerates the deformation")

    def as_dict(self):
        return dict(zip(VAR_NAMES, self.values))

    def __repr__(self):
        tag = "Q" if self.prime is None else f"GF({self.prime})"
        return f"SpecPoint({dict(zip(VAR_NAMES, self.values))}, {tag})"


# 62-bit prime used for probabilistic identity testing
DEFAULT_PRIME = (1 << 62) - 57


def random_spec_point(rng, prime=DEFAULT_PRIME) -> SpecPoint:
    """Sample a nondegenerate point; retries until u != v and all nonzero."""
    for _ in range(64):
        if prime is None:
            vals = [Fraction(rng.randint(2, 97), rng.randint(1, 7))
                    for _ in range(_NVARS)]
        else:
            vals = [rng.randrange(2, prime) for _ in range(_NVARS)]
        try:
            return SpecPoint(vals, prime)
        except ValueError:
            continue
    raise RuntimeError("could not sample a nondegenerate SpecPoint")
