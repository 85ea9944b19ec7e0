"""Exact coefficient arithmetic.

Three coefficient kinds share the variable universe ``VARS``:

* :class:`LaurentPoly` -- sparse Laurent polynomials with rational coefficients,
* :class:`RatFunc` -- rational functions, stored as a gcd-reduced pair of
  integer polynomials (backed by FLINT multivariate polynomials),
* :class:`TruncSeries` -- power series truncated by total degree in groups of
  variables, Laurent in ``u``.

The :class:`Backend` classes decide which of these (or plain
:class:`fractions.Fraction` values at an :class:`EvalPoint`) the symmetric
function engine computes with.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import flint

VARS = ("q", "t", "u", "T", "p")
NVARS = len(VARS)
VAR_INDEX = {v: i for i, v in enumerate(VARS)}
ZERO_EXP = (0,) * NVARS

_CTX = flint.fmpz_mpoly_ctx.get(VARS, "lex")
_GENS = _CTX.gens()


class InvalidInput(ValueError):
    """Raised when an operation's precondition is violated by its arguments."""


class DegeneratePoint(ArithmeticError):
    """An evaluation point hit a pole or a forbidden degeneracy."""


def _exp(**powers: int) -> tuple:
    e = [0] * NVARS
    for name, k in powers.items():
        e[VAR_INDEX[name]] = k
    return tuple(e)


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _coerce_rational(c) -> Rational:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"not a rational number: {c!r}")


def _monomial_str(exp: tuple) -> str:
    parts = []
    for name, k in zip(VARS, exp):
        if k == 1:
            parts.append(name)
        elif k != 0:
            parts.append(f"{name}^{k}" if k > 0 else f"{name}^({k})")
    return "*".join(parts)


def _terms_str(items: Iterable[tuple[tuple, Rational]]) -> str:
    out = []
    for exp, c in items:
        mono = _monomial_str(exp)
        c = Fraction(c)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    if not out:
        return "0"
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


class LaurentPoly:
    """Sparse Laurent polynomial in ``VARS`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Rational] | None = None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != NVARS:
                    raise InvalidInput(f"exponent vector {exp} has wrong length")
                c = _coerce_rational(c)
                if c != 0:
                    clean[tuple(exp)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({ZERO_EXP: c})

    @classmethod
    def monomial(cls, coeff=1, **powers: int) -> "LaurentPoly":
        return cls({_exp(**powers): coeff})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls.monomial(1, **{name: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.const(other)

    def __add__(self, other):
        if isinstance(other, (RatFunc, TruncSeries)):
            return NotImplemented
        other = self._lift(other)
        res = dict(self._terms)
        for e, c in other._terms.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return LaurentPoly._raw(res)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (RatFunc, TruncSeries)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (RatFunc, TruncSeries)):
            return NotImplemented
        if not isinstance(other, LaurentPoly):
            c = _coerce_rational(other)
            if c == 0:
                return LaurentPoly()
            return LaurentPoly._raw({e: v * c for e, v in self._terms.items()})
        res: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                v = res.get(e, 0) + c1 * c2
                if v:
                    res[e] = v
                else:
                    res.pop(e, None)
        return LaurentPoly._raw(res)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise InvalidInput("negative powers only for monomials")
            (e, c), = self._terms.items()
            return LaurentPoly({tuple(-x * -k for x in e): Fraction(1) / Fraction(c) ** -k})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if isinstance(other, TruncSeries):
            return NotImplemented
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def substitute_powers(self, k: int) -> "LaurentPoly":
        """Replace every variable ``v`` by ``v**k``."""
        if k < 1:
            raise InvalidInput("power substitution needs k >= 1")
        return LaurentPoly._raw({tuple(x * k for x in e): c for e, c in self._terms.items()})

    def invert_qt(self) -> "LaurentPoly":
        return LaurentPoly._raw(
            {(-e[0], -e[1]) + e[2:]: c for e, c in self._terms.items()})

    def map_exponents(self, f) -> "LaurentPoly":
        res: dict = {}
        for e, c in self._terms.items():
            e2 = tuple(f(e))
            v = res.get(e2, 0) + c
            if v:
                res[e2] = v
            else:
                res.pop(e2, None)
        return LaurentPoly._raw(res)

    def filter(self, pred) -> "LaurentPoly":
        return LaurentPoly._raw({e: c for e, c in self._terms.items() if pred(e)})

    def color_part(self, r: int, i: int) -> "LaurentPoly":
        """Monomials ``q^a t^b`` with ``b - a = i (mod r)``; ``u``, ``T``, ``p`` are color 0."""
        i %= r
        return self.filter(lambda e: (e[1] - e[0]) % r == i)

    def evaluate(self, values: Mapping[str, Rational]) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for name, k in zip(VARS, e):
                if k:
                    if name not in values:
                        raise InvalidInput(f"variable {name} is not assigned")
                    term *= Fraction(values[name]) ** k
            total += term
        return total

    def degree(self, name: str) -> tuple[int, int]:
        """(min, max) exponent of ``name``; (0, 0) for the zero polynomial."""
        idx = VAR_INDEX[name]
        if not self._terms:
            return (0, 0)
        ks = [e[idx] for e in self._terms]
        return (min(ks), max(ks))

    def sorted_terms(self) -> list:
        return sorted(self._terms.items())

    def canonical(self) -> str:
        return _terms_str(self.sorted_terms())

    def __repr__(self):
        return f"LaurentPoly({self.canonical()})"

    __str__ = canonical

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({tuple(e): Fraction(c) for e, c in data})

    def divide_one_minus(self, name: str) -> "LaurentPoly":
        """Exact quotient by ``1 - name``; raises if the division leaves a remainder."""
        idx = VAR_INDEX[name]
        slices: dict = {}
        for e, c in self._terms.items():
            key = e[:idx] + e[idx + 1:]
            slices.setdefault(key, {})[e[idx]] = c
        res: dict = {}
        for key, coeffs in slices.items():
            acc = 0
            lo, hi = min(coeffs), max(coeffs)
            for k in range(lo, hi + 1):
                acc += coeffs.get(k, 0)
                if k < hi and acc:
                    res[key[:idx] + (k,) + key[idx:]] = acc
            if acc != 0:
                raise ArithmeticError(f"not divisible by (1 - {name})")
        return LaurentPoly._raw(res)


# ---------------------------------------------------------------------------
# rational functions


def _poly_from_exps(terms: Mapping[tuple, int]):
    return _CTX.from_dict(dict(terms)) if terms else _CTX.from_dict({ZERO_EXP: 0})


_ZERO_POLY = _CTX.from_dict({ZERO_EXP: 0})
_ONE_POLY = _CTX.from_dict({ZERO_EXP: 1})


def _laurent_to_pair(lp: LaurentPoly):
    """Return integer polynomials (num, den) with lp = num/den."""
    if lp.is_zero():
        return _ZERO_POLY, _ONE_POLY
    mins = [min(e[i] for e in lp._terms) for i in range(NVARS)]
    shift = [min(m, 0) for m in mins]
    dens = 1
    for c in lp._terms.values():
        if isinstance(c, Fraction):
            dens = dens * c.denominator // gcd(dens, c.denominator)
    num = {}
    for e, c in lp._terms.items():
        num[tuple(x - s for x, s in zip(e, shift))] = int(c * dens)
    den = {tuple(-s for s in shift): dens}
    return _CTX.from_dict(num), _CTX.from_dict(den)


class RatFunc:
    """Rational function in ``VARS`` over Q, kept in lowest terms.

    Equality is decided by cross-multiplication, which does not depend on the
    normal form.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0, _den=None):
        if _den is not None:
            self._set(value, _den)
            return
        if isinstance(value, RatFunc):
            self.num, self.den, self._hash = value.num, value.den, value._hash
            return
        if isinstance(value, LaurentPoly):
            n, d = _laurent_to_pair(value)
        else:
            c = Fraction(_coerce_rational(value))
            n = _CTX.from_dict({ZERO_EXP: c.numerator})
            d = _CTX.from_dict({ZERO_EXP: c.denominator})
        self._set(n, d)

    def _set(self, n, d):
        if d.is_zero():
            raise InvalidInput("zero denominator")
        if n.is_zero():
            self.num, self.den, self._hash = _ZERO_POLY, _ONE_POLY, None
            return
        g = n.gcd(d)
        if not g.is_one():
            n = n / g
            d = d / g
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        self.num, self.den, self._hash = n, d, None

    @classmethod
    def _from_polys(cls, n, d) -> "RatFunc":
        obj = cls.__new__(cls)
        obj._set(n, d)
        return obj

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls(LaurentPoly.var(name))

    @classmethod
    def monomial(cls, coeff=1, **powers) -> "RatFunc":
        return cls(LaurentPoly.monomial(coeff, **powers))

    @classmethod
    def from_pair(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        return cls(num) / cls(den)

    @staticmethod
    def _lift(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc(other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            return NotImplemented
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc._from_polys(self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        d1 = self.den / g
        d2 = o.den / g
        return RatFunc._from_polys(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        obj = RatFunc.__new__(RatFunc)
        obj.num, obj.den, obj._hash = -self.num, self.den, None
        return obj

    def __sub__(self, other):
        if isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return NotImplemented
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return RatFunc(0)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n = (self.num / g1) * (o.num / g2)
        d = (self.den / g2) * (o.den / g1)
        obj = RatFunc.__new__(RatFunc)
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        obj.num, obj.den, obj._hash = n, d, None
        return obj

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc._from_polys(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        obj = RatFunc.__new__(RatFunc)
        obj.num, obj.den, obj._hash = self.num ** k, self.den ** k, None
        return obj

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return NotImplemented
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def _compose(self, images):
        return RatFunc._from_polys(self.num.compose(*images), self.den.compose(*images))

    def substitute_powers(self, k: int) -> "RatFunc":
        """Replace every variable ``v`` by ``v**k``."""
        if k < 1:
            raise InvalidInput("power substitution needs k >= 1")
        if k == 1:
            return self
        return _subst_powers_cached(self, k)

    def invert_qt(self) -> "RatFunc":
        """Apply ``(q, t) -> (1/q, 1/t)``."""
        return RatFunc.from_pair(self.numerator_laurent().invert_qt(),
                                 self.denominator_laurent().invert_qt())

    def substitute(self, **values) -> "RatFunc":
        """Substitute variables by rational functions (or numbers)."""
        n_l, d_l = self.numerator_laurent(), self.denominator_laurent()
        return _subst_laurent(n_l, values) / _subst_laurent(d_l, values)

    def numerator_laurent(self) -> LaurentPoly:
        return LaurentPoly({tuple(int(x) for x in e): int(c) for e, c in self.num.to_dict().items()})

    def denominator_laurent(self) -> LaurentPoly:
        return LaurentPoly({tuple(int(x) for x in e): int(c) for e, c in self.den.to_dict().items()})

    def is_laurent(self) -> bool:
        """True when the denominator is a single monomial."""
        return len(self.den) == 1

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise InvalidInput("rational function is not a Laurent polynomial")
        (e, c), = self.den.to_dict().items()
        inv = LaurentPoly({tuple(-int(x) for x in e): Fraction(1, int(c))})
        return self.numerator_laurent() * inv

    def evaluate(self, values: Mapping[str, Rational]) -> Fraction:
        d = _eval_poly(self.den, values)
        if d == 0:
            raise DegeneratePoint(f"denominator {self.den} vanishes at {dict(values)}")
        return _eval_poly(self.num, values) / d

    def uses(self, name: str) -> bool:
        idx = VAR_INDEX[name]
        return self.num.degrees()[idx] > 0 or self.den.degrees()[idx] > 0

    def canonical(self) -> str:
        n = self.numerator_laurent().canonical()
        if self.den.is_one():
            return n
        return f"({n})/({self.denominator_laurent().canonical()})"

    __str__ = canonical

    def __repr__(self):
        return f"RatFunc({self.canonical()})"

    def to_json(self) -> dict:
        return {"num": self.numerator_laurent().to_json(),
                "den": self.denominator_laurent().to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFunc":
        return cls.from_pair(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


@lru_cache(maxsize=200_000)
def _subst_powers_cached(x: RatFunc, k: int) -> RatFunc:
    images = [g ** k for g in _GENS]
    return x._compose(images)


def _subst_laurent(lp: LaurentPoly, values: Mapping[str, object]) -> RatFunc:
    gens = {name: values.get(name, RatFunc.var(name)) for name in VARS}
    gens = {k: RatFunc._lift(v) for k, v in gens.items()}
    total = RatFunc(0)
    for e, c in lp.items():
        term = RatFunc(c)
        for name, k in zip(VARS, e):
            if k:
                term = term * gens[name] ** k
        total = total + term
    return total


def _eval_poly(poly, values: Mapping[str, Rational]) -> Fraction:
    total = Fraction(0)
    cache: dict = {}
    for e, c in poly.to_dict().items():
        term = Fraction(int(c))
        for name, k in zip(VARS, e):
            k = int(k)
            if k:
                key = (name, k)
                if key not in cache:
                    if name not in values:
                        raise InvalidInput(f"variable {name} is not assigned")
                    cache[key] = Fraction(values[name]) ** k
                term *= cache[key]
        total += term
    return total


def ratfunc_equal(a: RatFunc, b: RatFunc) -> bool:
    """Cross-multiplication test ``a.num * b.den == b.num * a.den``."""
    a, b = RatFunc._lift(a), RatFunc._lift(b)
    if a.den.is_zero() or b.den.is_zero():
        raise InvalidInput("zero denominator")
    return (a.num * b.den - b.num * a.den).is_zero()


def substitute_powers(x, k: int):
    if k < 1:
        raise InvalidInput("power substitution needs k >= 1")
    if isinstance(x, (RatFunc, LaurentPoly, TruncSeries)):
        return x.substitute_powers(k)
    return x


# ---------------------------------------------------------------------------
# truncated series


class TruncSeries:
    """Power series truncated by total degree within groups of variables.

    ``caps`` maps a tuple of variable names to the largest total degree kept
    in those variables; e.g. ``{("q", "t"): 10, ("T",): 2}``.  Variables not
    named in a cap are unbounded and must appear only polynomially (``u`` may
    carry negative exponents).  Capped variables never carry negative
    exponents.
    """

    __slots__ = ("caps", "_terms", "_groups")

    def __init__(self, caps: Mapping[Sequence[str], int], terms: Mapping[tuple, Rational] | None = None):
        self.caps = {tuple(k): int(v) for k, v in caps.items()}
        self._groups = tuple((tuple(VAR_INDEX[n] for n in k), v) for k, v in self.caps.items())
        self._terms = {}
        if terms:
            for e, c in terms.items():
                c = _coerce_rational(c)
                if c != 0 and self._keep(e):
                    self._terms[tuple(e)] = c

    def _keep(self, e) -> bool:
        for idx, cap in self._groups:
            d = 0
            for i in idx:
                if e[i] < 0:
                    raise InvalidInput("negative exponent in a capped variable")
                d += e[i]
            if d > cap:
                return False
        return True

    def _degs(self, e) -> tuple:
        return tuple(sum(e[i] for i in idx) for idx, _ in self._groups)

    def _new(self, terms: dict) -> "TruncSeries":
        obj = TruncSeries.__new__(TruncSeries)
        obj.caps, obj._groups, obj._terms = self.caps, self._groups, terms
        return obj

    def _check_compatible(self, other: "TruncSeries"):
        if other.caps != self.caps:
            raise InvalidInput(f"mismatched series caps {self.caps} vs {other.caps}")

    @classmethod
    def from_laurent(cls, caps, lp: LaurentPoly) -> "TruncSeries":
        return cls(caps, lp.terms)

    def lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._check_compatible(other)
            return other
        if isinstance(other, LaurentPoly):
            return TruncSeries(self.caps, other.terms)
        if isinstance(other, RatFunc):
            return series_from_ratfunc(self.caps, other)
        return TruncSeries(self.caps, {ZERO_EXP: other})

    def items(self):
        return self._terms.items()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __add__(self, other):
        o = self.lift(other)
        res = dict(self._terms)
        for e, c in o._terms.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return self._new(res)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self.lift(other))

    def __rsub__(self, other):
        return self.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (TruncSeries, LaurentPoly, RatFunc)):
            c = _coerce_rational(other)
            if c == 0:
                return self._new({})
            return self._new({e: v * c for e, v in self._terms.items()})
        o = self.lift(other)
        caps = [cap for _, cap in self._groups]
        left = [(e, c, self._degs(e)) for e, c in self._terms.items()]
        right = [(e, c, self._degs(e)) for e, c in o._terms.items()]
        right.sort(key=lambda x: sum(x[2]))
        res: dict = {}
        for e1, c1, d1 in left:
            for e2, c2, d2 in right:
                ok = True
                for a, b, cap in zip(d1, d2, caps):
                    if a + b > cap:
                        ok = False
                        break
                if not ok:
                    continue
                e = _add_exp(e1, e2)
                v = res.get(e, 0) + c1 * c2
                if v:
                    res[e] = v
                else:
                    res.pop(e, None)
        return self._new(res)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.lift(1)
        for _ in range(k):
            out = out * self
        return out

    def constant_term(self) -> Rational:
        return self._terms.get(ZERO_EXP, 0)

    def _is_small(self) -> bool:
        """Every term has positive degree in some capped group (so powers die out)."""
        return all(any(d > 0 for d in self._degs(e)) for e in self._terms)

    def inverse(self) -> "TruncSeries":
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroDivisionError("series without invertible constant term")
        g = self * (Fraction(1) / Fraction(c0)) - 1
        if not g._is_small():
            raise InvalidInput("series inverse would not terminate under the caps")
        out = self.lift(1)
        power = self.lift(1)
        sign = 1
        while True:
            power = power * g
            if power.is_zero():
                break
            sign = -sign
            out = out + power * sign
        return out * (Fraction(1) / Fraction(c0))

    def __truediv__(self, other):
        if not isinstance(other, (TruncSeries, LaurentPoly, RatFunc)):
            return self * (Fraction(1) / Fraction(_coerce_rational(other)))
        return self * self.lift(other).inverse()

    def __rtruediv__(self, other):
        return self.lift(other) * self.inverse()

    def exp(self) -> "TruncSeries":
        if self.constant_term() != 0 or not self._is_small():
            raise InvalidInput("exp needs a series with no degree-0 part")
        out = self.lift(1)
        term = self.lift(1)
        k = 0
        while True:
            k += 1
            term = term * self * Fraction(1, k)
            if term.is_zero():
                return out
            out = out + term

    def log(self) -> "TruncSeries":
        if self.constant_term() != 1:
            raise InvalidInput("log needs constant term 1")
        g = self - 1
        if not g._is_small():
            raise InvalidInput("log would not terminate under the caps")
        out = self.lift(0)
        power = self.lift(1)
        k = 0
        while True:
            k += 1
            power = power * g
            if power.is_zero():
                return out
            out = out + power * Fraction((-1) ** (k + 1), k)

    def substitute_powers(self, k: int) -> "TruncSeries":
        return TruncSeries(self.caps, {tuple(x * k for x in e): c for e, c in self._terms.items()})

    def retruncate(self, caps) -> "TruncSeries":
        return TruncSeries(caps, self._terms)

    def coefficient(self, **powers) -> "TruncSeries":
        """Coefficient of a monomial in some variables, as a series in the rest."""
        fixed = {VAR_INDEX[k]: v for k, v in powers.items()}
        res = {}
        for e, c in self._terms.items():
            if all(e[i] == v for i, v in fixed.items()):
                e2 = tuple(0 if i in fixed else x for i, x in enumerate(e))
                res[e2] = c
        return self._new(res)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly(self._terms)

    def __eq__(self, other):
        try:
            o = self.lift(other)
        except (TypeError, InvalidInput):
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def canonical(self) -> str:
        return _terms_str(sorted(self._terms.items()))

    def __repr__(self):
        return f"TruncSeries({self.canonical()} + O({self.caps}))"


def series_from_ratfunc(caps, x: RatFunc) -> TruncSeries:
    """Expand a rational function as a truncated series around the origin."""
    num = TruncSeries(caps, x.numerator_laurent().terms)
    den_lp = x.denominator_laurent()
    # pull out a monomial so that the remaining denominator has constant term
    lows = [min(e[i] for e in den_lp.terms) for i in range(NVARS)]
    mono = tuple(lows)
    shifted = LaurentPoly({tuple(a - b for a, b in zip(e, mono)): c for e, c in den_lp.items()})
    if any(k != 0 for k in mono):
        inv_mono = tuple(-k for k in mono)
        num = TruncSeries(caps, {_add_exp(e, inv_mono): c for e, c in x.numerator_laurent().items()})
    den = TruncSeries(caps, shifted.terms)
    if den.constant_term() == 0:
        raise InvalidInput(f"cannot expand {x} as a series: denominator has no constant term")
    return num * den.inverse()


def series_truncate_product(factors: Sequence[TruncSeries], caps=None) -> TruncSeries:
    """Product of truncated series; the caps of all factors must agree."""
    if not factors:
        if caps is None:
            raise InvalidInput("empty product needs explicit caps")
        return TruncSeries(caps, {ZERO_EXP: 1})
    caps = factors[0].caps if caps is None else {tuple(k): v for k, v in caps.items()}
    out = TruncSeries(caps, {ZERO_EXP: 1})
    for f in factors:
        if f.caps != out.caps:
            raise InvalidInput("mismatched variable caps in product")
        out = out * f
    return out


# ---------------------------------------------------------------------------
# evaluation points


class EvalPoint:
    """Rational assignment of ``q, t, u`` used for probabilistic identity checks."""

    def __init__(self, assignments: Mapping[str, Rational], checked: Sequence[str] = ()):
        self.assignments = {k: Fraction(v) for k, v in assignments.items()}
        self.checked = list(checked)
        for name, v in self.assignments.items():
            if abs(v.numerator) < 2 or v.denominator < 2:
                raise InvalidInput(f"{name}={v} has height below 2")

    def __getitem__(self, name):
        return self.assignments[name]

    def inverted(self) -> "EvalPoint":
        a = dict(self.assignments)
        for k in ("q", "t"):
            if k in a:
                a[k] = 1 / a[k]
        obj = EvalPoint.__new__(EvalPoint)
        obj.assignments, obj.checked = a, list(self.checked)
        return obj

    def to_json(self) -> dict:
        return {k: str(v) for k, v in sorted(self.assignments.items())}

    def __repr__(self):
        return f"EvalPoint({self.to_json()})"


def default_forbidden(max_exp: int = 8) -> list[LaurentPoly]:
    """Binomials ``1 - q^a t^b u^c`` with small exponents, plus ``q - t``."""
    out = [LaurentPoly.var("q") - LaurentPoly.var("t")]
    for a in range(-max_exp, max_exp + 1):
        for b in range(-max_exp, max_exp + 1):
            for c in (-2, -1, 0, 1, 2):
                if (a, b, c) != (0, 0, 0):
                    out.append(1 - LaurentPoly.monomial(1, q=a, t=b, u=c))
    return out


_STANDARD_FORBIDDEN = None


def random_eval_point(seed, forbidden: Sequence[LaurentPoly] = (), height: int = 13,
                      variables: Sequence[str] = ("q", "t", "u"), retries: int = 200,
                      include_standard: bool = True) -> EvalPoint:
    """Deterministic (under ``seed``) rational point avoiding the zeros of ``forbidden``.

    Values have numerator and denominator of absolute value in ``[2, height]``,
    are pairwise distinct, and never 0 or +-1.
    """
    global _STANDARD_FORBIDDEN
    rng = random.Random(seed)
    checks = list(forbidden)
    if include_standard:
        if _STANDARD_FORBIDDEN is None:
            _STANDARD_FORBIDDEN = default_forbidden()
        checks = checks + _STANDARD_FORBIDDEN
    for _ in range(retries):
        vals = {}
        for name in variables:
            while True:
                n = rng.randint(2, height) * rng.choice((1, -1))
                d = rng.randint(2, height)
                if gcd(abs(n), d) == 1 and abs(n) != d:
                    v = Fraction(n, d)
                    if v not in vals.values():
                        vals[name] = v
                        break
        if all(f.evaluate(vals) != 0 for f in checks):
            return EvalPoint(vals, [f.canonical() for f in forbidden])
    raise DegeneratePoint(f"no admissible point after {retries} draws")


# ---------------------------------------------------------------------------
# backends


class Backend:
    """Coefficient domain used by the symmetric-function engine."""

    name = "abstract"
    is_field = True

    def coerce(self, x):
        raise NotImplementedError

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    @staticmethod
    def is_zero(x) -> bool:
        if isinstance(x, (RatFunc, TruncSeries, LaurentPoly)):
            return x.is_zero()
        return x == 0

    def inverted(self) -> "Backend":
        """Backend computing with ``(q, t) -> (1/q, 1/t)`` applied to symbolic input."""
        raise NotImplementedError

    def invert_element(self, x):
        """Apply ``(q, t) -> (1/q, 1/t)`` to a computed coefficient, if possible."""
        raise NotImplementedError

    def describe(self) -> dict:
        return {"backend": self.name}


class ExactBackend(Backend):
    """Coefficients are :class:`RatFunc` values."""

    name = "exact"

    def __init__(self, inverted: bool = False):
        self._inv = inverted

    def coerce(self, x):
        if isinstance(x, RatFunc):
            return x.invert_qt() if self._inv else x
        if isinstance(x, LaurentPoly):
            return RatFunc(x.invert_qt() if self._inv else x)
        return RatFunc(x)

    def inverted(self):
        return ExactBackend(not self._inv)

    def invert_element(self, x):
        return x.invert_qt()

    def describe(self):
        return {"backend": self.name, "inverted": self._inv}


class PointBackend(Backend):
    """Coefficients are exact rationals obtained by evaluating at an :class:`EvalPoint`."""

    name = "points"

    def __init__(self, point: EvalPoint):
        self.point = point
        self._cache: dict = {}

    def coerce(self, x):
        if isinstance(x, (RatFunc, LaurentPoly)):
            key = x
            v = self._cache.get(key)
            if v is None:
                v = x.evaluate(self.point.assignments)
                self._cache[key] = v
            return v
        return Fraction(_coerce_rational(x))

    def inverted(self):
        return PointBackend(self.point.inverted())

    def invert_element(self, x):
        raise NotImplementedError("values at a point cannot be inverted in (q, t)")

    def describe(self):
        return {"backend": self.name, "point": self.point.to_json()}


class SeriesBackend(Backend):
    """Coefficients are :class:`TruncSeries` expanded around ``q = t = 0``."""

    name = "series"
    is_field = False

    def __init__(self, caps):
        self.caps = {tuple(k): v for k, v in caps.items()}
        self._cache: dict = {}

    def coerce(self, x):
        if isinstance(x, TruncSeries):
            return x
        if isinstance(x, RatFunc):
            v = self._cache.get(x)
            if v is None:
                v = series_from_ratfunc(self.caps, x)
                self._cache[x] = v
            return v
        if isinstance(x, LaurentPoly):
            return TruncSeries(self.caps, x.terms)
        return TruncSeries(self.caps, {ZERO_EXP: x})

    def inverted(self):
        raise NotImplementedError("series backend cannot invert q and t")

    def describe(self):
        return {"backend": self.name, "caps": {",".join(k): v for k, v in self.caps.items()}}


Q = RatFunc.var("q")
T_ = RatFunc.var("t")
U = RatFunc.var("u")
