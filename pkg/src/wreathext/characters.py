"""Color-graded character sums over Young diagrams and Nekrasov factors."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .coeff import NVARS, LaurentPoly, RatFunc
from .partitions import Partition, arm_leg, boxes, addable_removable


@dataclass(frozen=True)
class CharacterSum:
    """A Laurent polynomial in q, t (and possibly u) graded by color mod ``r``.

    The color of ``q^a t^b`` is ``(b - a) mod r``; every other variable has color 0.
    """

    poly: LaurentPoly
    r: int = 1

    def part(self, i: int) -> "CharacterSum":
        return CharacterSum(self.poly.color_part(self.r, i), self.r)

    def parts(self) -> list["CharacterSum"]:
        return [self.part(i) for i in range(self.r)]

    def bar(self) -> "CharacterSum":
        return CharacterSum(self.poly.invert_qt(), self.r)

    def _other(self, other) -> LaurentPoly:
        if isinstance(other, CharacterSum):
            if other.r != self.r:
                raise ValueError("mixing character sums with different moduli")
            return other.poly
        return LaurentPoly.const(other) if not isinstance(other, LaurentPoly) else other

    def __add__(self, other):
        return CharacterSum(self.poly + self._other(other), self.r)

    __radd__ = __add__

    def __sub__(self, other):
        return CharacterSum(self.poly - self._other(other), self.r)

    def __neg__(self):
        return CharacterSum(-self.poly, self.r)

    def __mul__(self, other):
        return CharacterSum(self.poly * self._other(other), self.r)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, CharacterSum):
            return self.poly == other.poly
        return self.poly == self._other(other)

    def __hash__(self):
        return hash(self.poly)

    def canonical(self) -> str:
        return self.poly.canonical()


def _qt(a: int, b: int) -> tuple:
    return (a, b) + (0,) * (NVARS - 2)


def chi(box) -> LaurentPoly:
    return LaurentPoly.monomial(1, q=box[0], t=box[1])


def b_sum(lam: Partition, r: int = 1) -> CharacterSum:
    return CharacterSum(LaurentPoly({_qt(a, b): 1 for a, b in boxes(lam)}), r)


_Q = LaurentPoly.var("q")
_T = LaurentPoly.var("t")
_ONE_MINUS_Q_T = (1 - _Q) * (1 - _T)


def d_sum(lam: Partition, r: int = 1) -> CharacterSum:
    return CharacterSum(_ONE_MINUS_Q_T * b_sum(lam).poly - 1, r)


def d_sum_from_corners(lam: Partition, r: int, i: int) -> LaurentPoly:
    """``qt`` times the removable characters minus the addable characters of color ``i``."""
    add, rem = addable_removable(lam, r, i)
    out = LaurentPoly()
    for box in rem:
        out = out + _Q * _T * chi(box)
    for box in add:
        out = out - chi(box)
    return out


def bar(s: CharacterSum) -> CharacterSum:
    return s.bar()


def mixed_e_sum(lam: Partition, mu: Partition, r: int = 1) -> CharacterSum:
    """Box-by-box sum over ``lam`` and ``mu`` of the mixed arm/leg characters."""
    terms: Counter = Counter()
    for box in boxes(lam):
        terms[(-arm_leg(mu, box)[0], arm_leg(lam, box)[1] + 1)] += 1
    for box in boxes(mu):
        terms[(arm_leg(lam, box)[0] + 1, -arm_leg(mu, box)[1])] += 1
    return CharacterSum(LaurentPoly({_qt(a, b): c for (a, b), c in terms.items()}), r)


def mixed_e_sum_from_d(lam: Partition, mu: Partition, r: int = 1) -> CharacterSum:
    """Same sum via ``-qt (D_lam bar(D_mu) - 1) / ((1-q)(1-t))`` with exact division."""
    num = -(_Q * _T) * (d_sum(lam).poly * d_sum(mu).poly.invert_qt() - 1)
    quo = num.divide_one_minus("q").divide_one_minus("t")
    return CharacterSum(quo, r)


# ---------------------------------------------------------------------------
# Nekrasov factors


@dataclass(frozen=True)
class NekrasovFactorization:
    """Product of factors ``(1 - u^e q^a t^b)`` times ``u^offset``.

    Factors are stored as a sorted tuple of ``(e, a, b)``.
    """

    factors: tuple
    offset: int = 0

    def expand(self) -> LaurentPoly:
        out = LaurentPoly.monomial(1, u=self.offset)
        for e, a, b in self.factors:
            out = out * (1 - LaurentPoly.monomial(1, u=e, q=a, t=b))
        return out

    def to_ratfunc(self) -> RatFunc:
        return RatFunc(self.expand())

    def evaluate(self, values) -> object:
        out = 1
        for e, a, b in self.factors:
            out = out * (1 - values["u"] ** e * values["q"] ** a * values["t"] ** b)
        return out * values["u"] ** self.offset if self.offset else out

    def to_json(self) -> dict:
        return {
            "uoffset": self.offset,
            "factors": [{"uexp": e, "qexp": a, "texp": b} for e, a, b in self.factors],
            "expanded": self.expand().canonical(),
        }


def nekrasov_factor(lam: Partition, mu: Partition, r: int) -> NekrasovFactorization:
    """Factor list for ``N_{lam,mu}(u)`` read off from the mixed hooks divisible by ``r``."""
    factors = []
    for box in boxes(lam):
        a_mu = arm_leg(mu, box)[0]
        l_lam = arm_leg(lam, box)[1]
        if (a_mu + l_lam + 1) % r == 0:
            factors.append((1, -a_mu, l_lam + 1))
    for box in boxes(mu):
        a_lam = arm_leg(lam, box)[0]
        l_mu = arm_leg(mu, box)[1]
        if (a_lam + l_mu + 1) % r == 0:
            factors.append((1, a_lam + 1, -l_mu))
    return NekrasovFactorization(tuple(sorted(factors)))


def color_zero_over_qt(num: LaurentPoly, r: int, i: int = 0) -> RatFunc:
    """Color-``i`` part of ``num / ((1-q)(1-t))`` as an exact rational function.

    Multiplying through by the geometric sums of length ``r`` turns the
    denominator into ``(1-q^r)(1-t^r)``, which has color 0.
    """
    geo_q = LaurentPoly({_qt(k, 0): 1 for k in range(r)})
    geo_t = LaurentPoly({_qt(0, k): 1 for k in range(r)})
    top = (num * geo_q * geo_t).color_part(r, i)
    den = (1 - LaurentPoly.monomial(1, q=r)) * (1 - LaurentPoly.monomial(1, t=r))
    return RatFunc.from_pair(top, den)


def nekrasov_omega_argument(lam: Partition, mu: Partition, r: int) -> LaurentPoly:
    """Color-0 part of ``u q t (D_lam bar(D_mu) - 1) / ((1-q)(1-t))`` as a finite sum."""
    u = LaurentPoly.var("u")
    num = u * _Q * _T * (d_sum(lam).poly * d_sum(mu).poly.invert_qt() - 1)
    try:
        quo = num.divide_one_minus("q").divide_one_minus("t")
    except ArithmeticError as exc:
        raise ArithmeticError(f"infinite tails failed to cancel for {lam}, {mu}") from exc
    return quo.color_part(r, 0)


def plethystic_exp_of_finite(arg: LaurentPoly):
    """``Omega[F]`` for a finite sum ``F = sum n_m m`` of monomials: ``prod (1-m)^(-n_m)``."""
    out = RatFunc(1)
    for exp, c in arg.items():
        if c != int(c):
            raise ValueError("plethystic exponential needs integer multiplicities")
        factor = 1 - RatFunc(LaurentPoly({exp: 1}))
        out = out * factor ** (-int(c))
    return out


def nekrasov_via_omega(lam: Partition, mu: Partition, r: int, backend=None):
    """Nekrasov factor computed as a plethystic exponential of a character sum."""
    value = plethystic_exp_of_finite(nekrasov_omega_argument(lam, mu, r))
    return value if backend is None else backend.coerce(value)
