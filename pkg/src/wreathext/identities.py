"""End-to-end checks of the trace formula, the modular Nekrasov-Okounkov identity,
its weak and classical forms, and the elliptic core-independence sum.

Series in a single marker variable (``T`` or ``p``) are plain lists of
coefficients; the coefficients live in whichever backend the check runs in
(exact rational functions, values at a point, or truncated (q, t)-series).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coeff import (VAR_INDEX, Backend, ExactBackend, InvalidInput, LaurentPoly, PointBackend,
                    RatFunc, SeriesBackend, random_eval_point, ratfunc_equal,
                    substitute_powers)
from .partitions import (Partition, arm_leg, boxes, cores_of_size, enumerate_with_core,
                         make_partition, partitions_of, core_quotient)
from .symfunc import (PlethysmMatrix, multi_schur_basis, omega_series,
                      powersum_to_schur, schur_to_powersum, translate)

MODES = ("exact", "points", "series")
POCHHAMMER_READINGS = ("multi-index", "per-base")

_Q = RatFunc.var("q")
_T = RatFunc.var("t")
_U = RatFunc.var("u")
_TT = RatFunc.var("T")


# ---------------------------------------------------------------------------
# reports


@dataclass
class CaseResult:
    key: str
    status: str
    witness: dict | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_json(self) -> dict:
        out = {"key": self.key, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    suite: str
    parameters: dict
    cases: list = field(default_factory=list)
    wall_clock: float = 0.0
    informational: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def counts(self) -> tuple[int, int]:
        return sum(c.passed for c in self.cases), len(self.cases)

    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def add(self, case: CaseResult):
        if not case.passed and case.witness is None:
            raise ValueError("failing case without a witness")
        self.cases.append(case)

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.cases:
            self.cases.append(CaseResult(prefix + c.key, c.status, c.witness, c.note))

    def summary(self) -> str:
        ok, n = self.counts()
        tag = "PASS" if self.passed else "FAIL"
        info = " (informational)" if self.informational else ""
        return f"{self.suite}: {tag} {ok}/{n} cases in {self.wall_clock:.2f}s{info}"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "status": "PASS" if self.passed else "FAIL",
            "informational": self.informational,
            "wall_clock": round(self.wall_clock, 3),
            "cases": [c.to_json() for c in self.cases],
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        cases = [CaseResult(c["key"], c["status"], c.get("witness"), c.get("note", ""))
                 for c in data["cases"]]
        return cls(data["suite"], data["parameters"], cases, data.get("wall_clock", 0.0),
                   data.get("informational", False))


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_clock = time.perf_counter() - self.t0
        return False


def canonical(x) -> str:
    if hasattr(x, "canonical"):
        return x.canonical()
    return str(x)


def values_equal(a, b) -> bool:
    if isinstance(a, RatFunc) or isinstance(b, RatFunc):
        return ratfunc_equal(RatFunc._lift(a), RatFunc._lift(b))
    return a == b


def compare(key: str, lhs, rhs, note: str = "") -> CaseResult:
    if values_equal(lhs, rhs):
        return CaseResult(key, "PASS", note=note)
    return CaseResult(key, "FAIL", {"lhs": canonical(lhs), "rhs": canonical(rhs)}, note)


# ---------------------------------------------------------------------------
# one-variable series with backend coefficients


def marker_coefficients(x: RatFunc, marker: str, order: int) -> list[RatFunc]:
    """Coefficients of ``marker^0 .. marker^order`` in the expansion of ``x`` around ``marker = 0``.

    The coefficients are exact rational functions of the remaining variables.
    """
    k = VAR_INDEX[marker]

    def split(lp: LaurentPoly) -> dict:
        out: dict = {}
        for e, c in lp.items():
            rest = tuple(0 if i == k else v for i, v in enumerate(e))
            out.setdefault(e[k], {})[rest] = c
        return {d: RatFunc(LaurentPoly(t)) for d, t in out.items()}

    num = split(x.numerator_laurent())
    den = split(x.denominator_laurent())
    low = min(den)
    if low != 0:
        # flint keeps exponents non-negative; a pure power of the marker
        # in the denominator would mean a pole at marker = 0
        raise InvalidInput(f"{x} has a pole at {marker} = 0")
    if min(num) < 0:
        raise InvalidInput(f"{x} has a pole at {marker} = 0")
    d0 = den[0]
    inv0 = 1 / d0
    out = []
    for n in range(order + 1):
        acc = num.get(n, RatFunc(0))
        for j in range(1, n + 1):
            if j in den:
                acc = acc - den[j] * out[n - j]
        out.append(acc * inv0)
    return out


def series_mul(a: Sequence, b: Sequence, order: int, zero) -> list:
    out = [zero] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if _is_zero(x):
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            if not _is_zero(y):
                out[i + j] = out[i + j] + x * y
    return out


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def plethystic_log_coefficients(F: RatFunc, marker: str, order: int) -> list[RatFunc]:
    """``L_k = [marker^k] sum_m p_m[F] / m`` for ``k <= order``; ``F`` must vanish at ``marker = 0``."""
    L = [RatFunc(0)] * (order + 1)
    for m in range(1, order + 1):
        cs = marker_coefficients(substitute_powers(F, m), marker, order)
        if m == 1 and not cs[0].is_zero():
            raise InvalidInput("plethystic exponent must vanish at the marker origin")
        for k in range(m, order + 1):
            if not cs[k].is_zero():
                L[k] = L[k] + cs[k] / m
    return L


def exp_from_log(L: Sequence, order: int, one, zero) -> list:
    """Coefficients of ``exp(sum_k L_k x^k)`` via ``n E_n = sum_k k L_k E_(n-k)``."""
    E = [one]
    for n in range(1, order + 1):
        acc = zero
        for k in range(1, n + 1):
            if not _is_zero(L[k]):
                acc = acc + L[k] * E[n - k] * k
        E.append(acc / n if not isinstance(acc, int) else Fraction(acc, n))
    return E


def plethystic_exp_coefficients(F: RatFunc, marker: str, order: int,
                                backend: Backend | None = None) -> list:
    """``Omega[F]`` expanded in ``marker`` up to ``order``, coefficients in ``backend``."""
    backend = backend or ExactBackend()
    L = [backend.coerce(x) for x in plethystic_log_coefficients(F, marker, order)]
    return exp_from_log(L, order, backend.one(), backend.zero())


# ---------------------------------------------------------------------------
# Pochhammer symbols


@dataclass(frozen=True)
class PochhammerSpec:
    """``(a; b_1, ..., b_m)_inf`` recorded through its plethystic logarithm.

    ``multi-index`` is ``prod over k_1..k_m >= 0 of (1 - a b_1^k_1 ... b_m^k_m)``;
    ``per-base`` is ``prod over j, k of (1 - a b_j^k)``.
    """

    argument: RatFunc
    bases: tuple
    reading: str = "multi-index"

    def __post_init__(self):
        if self.reading not in POCHHAMMER_READINGS:
            raise InvalidInput(f"unknown Pochhammer reading {self.reading!r}")

    def omega_argument(self) -> RatFunc:
        """``F`` with ``(a; b)_inf = Omega[F]``."""
        if self.reading == "multi-index":
            den = RatFunc(1)
            for b in self.bases:
                den = den * (1 - b)
            return -self.argument / den
        total = RatFunc(0)
        for b in self.bases:
            total = total + 1 / (1 - b)
        return -self.argument * total

    def coefficients(self, marker: str, order: int, backend: Backend | None = None) -> list:
        return plethystic_exp_coefficients(self.omega_argument(), marker, order, backend)


def modular_product_argument(r: int, reading: str = "multi-index", u=None) -> RatFunc:
    """``F`` with the modular product side equal to ``Omega[F]`` (``T`` is the grading)."""
    u = _U if u is None else RatFunc._lift(u)
    bases = (_Q ** r, _T ** r, _TT)
    total = r * _TT / (1 - _TT)
    for i in range(1, r + 1):
        a = _Q ** i * _T ** (r - i) * _TT
        b = _Q ** (r - i) * _T ** i * _TT
        total = total + PochhammerSpec(u * a, bases, reading).omega_argument()
        total = total + PochhammerSpec(b / u, bases, reading).omega_argument()
        total = total - PochhammerSpec(a, bases, reading).omega_argument()
        total = total - PochhammerSpec(b, bases, reading).omega_argument()
    return total


def classical_product_argument(printed_denominator: bool = False, u=None) -> RatFunc:
    """``(uqT, u^-1 tT; q,t,T) / (T, qtT; q,t,T)`` as ``Omega[F]``.

    With ``printed_denominator`` the second denominator argument is ``tT``.
    """
    u = _U if u is None else RatFunc._lift(u)
    bases = (_Q, _T, _TT)
    second = _T * _TT if printed_denominator else _Q * _T * _TT
    total = RatFunc(0)
    for a in (u * _Q * _TT, _T * _TT / u):
        total = total + PochhammerSpec(a, bases).omega_argument()
    for a in (_TT, second):
        total = total - PochhammerSpec(a, bases).omega_argument()
    return total


# ---------------------------------------------------------------------------
# hook products


def hook_ratio_factor(a: int, l: int, u=None) -> RatFunc:
    u = _U if u is None else RatFunc._lift(u)
    z1 = _Q ** (a + 1) * _T ** l
    z2 = _Q ** a * _T ** (l + 1)
    return (1 - u * z1) * (1 - z2 / u) / ((1 - z1) * (1 - z2))


def hook_boxes(lam: Partition, r: int) -> list[tuple[int, int]]:
    """``(arm, leg)`` of the boxes of ``lam`` whose hook length is divisible by ``r``."""
    out = []
    for box in boxes(lam):
        a, l = arm_leg(lam, box)
        if (a + l + 1) % r == 0:
            out.append((a, l))
    return out


def hook_product(lam: Partition, r: int, backend: Backend, u=None):
    out = backend.one()
    for a, l in hook_boxes(lam, r):
        out = out * backend.coerce(hook_ratio_factor(a, l, u))
    return out


def make_backend(mode: str, qt_cap: int = 10, seed: int = 0, variables=("q", "t", "u")) -> Backend:
    if mode == "exact":
        return ExactBackend()
    if mode == "series":
        return SeriesBackend({("q", "t"): qt_cap})
    if mode == "points":
        return PointBackend(random_eval_point(seed, variables=variables))
    raise InvalidInput(f"unknown mode {mode!r}; expected one of {MODES}")


# ---------------------------------------------------------------------------
# modular Nekrasov-Okounkov


def no_modular_sum_side(alpha: Partition, r: int, order: int, backend: Backend | None = None,
                        u=None) -> list:
    """``[T^n]`` of the hook-product sum over partitions with core ``alpha``, ``n <= order``."""
    backend = backend or ExactBackend()
    alpha = make_partition(alpha)
    out = []
    for n in range(order + 1):
        acc = backend.zero()
        for lam in enumerate_with_core(alpha, r, n):
            acc = acc + hook_product(lam, r, backend, u)
        out.append(acc)
    return out


def no_modular_product_side(r: int, order: int, backend: Backend | None = None, u=None,
                            reading: str = "multi-index") -> list:
    """``[T^n]`` of the Pochhammer product side, assembled by log-exp."""
    return plethystic_exp_coefficients(modular_product_argument(r, reading, u), "T", order,
                                       backend)


def _mode_backends(mode: str, qt_cap: int, seed: int, k: int) -> list:
    if mode == "points":
        return [make_backend("points", seed=seed + i) for i in range(k)]
    return [make_backend(mode, qt_cap)]


def no_modular_verify(alpha: Partition, r: int, order: int, qt_cap: int = 10,
                      mode: str = "series", seed: int = 0, k: int = 3,
                      reading: str = "multi-index") -> VerificationReport:
    alpha = make_partition(alpha)
    params = {"r": r, "core": list(alpha), "orderT": order, "qt_cap": qt_cap, "mode": mode,
              "pochhammer": reading}
    if mode == "points":
        params.update(seed=seed, k=k)
    report = VerificationReport("no-modular", params)
    with _Timer(report):
        for b_i, backend in enumerate(_mode_backends(mode, qt_cap, seed, k)):
            lhs = no_modular_sum_side(alpha, r, order, backend)
            rhs = no_modular_product_side(r, order, backend, reading=reading)
            tag = f"point{b_i}:" if mode == "points" else ""
            for n in range(order + 1):
                report.add(compare(f"{tag}T^{n}", lhs[n], rhs[n]))
    return report


def no_classical_verify(order: int, qt_cap: int = 10, mode: str = "series", seed: int = 0,
                        k: int = 3, printed_denominator: bool = False) -> VerificationReport:
    """Sum over all partitions of ``T^|lam|`` times the full hook product against the classical product."""
    params = {"r": 1, "orderT": order, "qt_cap": qt_cap, "mode": mode,
              "denominator": "T,tT" if printed_denominator else "T,qtT"}
    report = VerificationReport("no-classical", params)
    with _Timer(report):
        F = classical_product_argument(printed_denominator)
        for b_i, backend in enumerate(_mode_backends(mode, qt_cap, seed, k)):
            rhs = plethystic_exp_coefficients(F, "T", order, backend)
            thm = no_modular_product_side(1, order, backend)
            tag = f"point{b_i}:" if mode == "points" else ""
            for n in range(order + 1):
                lhs = backend.zero()
                for lam in partitions_of(n):
                    lhs = lhs + hook_product(lam, 1, backend)
                report.add(compare(f"{tag}T^{n}", lhs, rhs[n]))
                report.add(compare(f"{tag}T^{n}:modular-product-at-r=1", thm[n], rhs[n]))
    return report


# ---------------------------------------------------------------------------
# weak form


def core_generating_coefficients(r: int, order: int) -> list[Fraction]:
    """``(T^r;T^r)^r / (T;T)`` up to ``T^order``, from its product form."""
    F = _TT / (1 - _TT) - r * _TT ** r / (1 - _TT ** r)
    return [_constant(c) for c in plethystic_exp_coefficients(F, "T", order)]


def _constant(x: RatFunc) -> Fraction:
    lp = x.to_laurent()
    if len(lp) > 1 or any(any(e) for e in lp.terms):
        raise InvalidInput(f"{x} is not a constant")
    return next(iter(lp.terms.values()), Fraction(0))


def no_weak_form_verify(r: int, t_cap: int, s_cap: int, mode: str = "exact", qt_cap: int = 10,
                        seed: int = 0) -> VerificationReport:
    """Bigraded check: ``S`` counts ``|quot|`` and ``T`` counts ``|lam|``.

    Three routes to each ``S^s T^d`` coefficient must agree: direct enumeration
    of all partitions of ``d``; assembly over cores of the per-core sums with
    ``T -> S T^r``; and the core generating function times the product side.
    """
    params = {"r": r, "T_cap": t_cap, "S_cap": s_cap, "mode": mode}
    report = VerificationReport("no-weak", params)
    backend = make_backend(mode, qt_cap, seed)
    with _Timer(report):
        direct: dict = {}
        for d in range(t_cap + 1):
            for lam in partitions_of(d):
                s = core_quotient(lam, r).quot_size()
                if s <= s_cap:
                    direct[(s, d)] = direct.get((s, d), backend.zero()) + hook_product(lam, r, backend)
        assembled: dict = {}
        for c in range(t_cap + 1):
            for alpha in cores_of_size(c, r):
                sums = no_modular_sum_side(alpha, r, s_cap, backend)
                for s in range(s_cap + 1):
                    d = c + r * s
                    if d <= t_cap:
                        assembled[(s, d)] = assembled.get((s, d), backend.zero()) + sums[s]
        gf = core_generating_coefficients(r, t_cap)
        prod = no_modular_product_side(r, s_cap, backend)
        for c in range(t_cap + 1):
            report.add(compare(f"cores:T^{c}", Fraction(len(cores_of_size(c, r))), gf[c]))
        for s in range(s_cap + 1):
            for d in range(t_cap + 1):
                from_product = backend.coerce(RatFunc(gf[d - r * s])) * prod[s] \
                    if d - r * s >= 0 else backend.zero()
                a = direct.get((s, d), backend.zero())
                b = assembled.get((s, d), backend.zero())
                report.add(compare(f"S^{s}T^{d}:direct-vs-cores", a, b))
                report.add(compare(f"S^{s}T^{d}:direct-vs-product", a, from_product))
    return report


# ---------------------------------------------------------------------------
# trace formula


def operator_trace(A: PlethysmMatrix, B: PlethysmMatrix, degree_cap: int,
                   backend: Backend | None = None) -> list:
    """``sum over multi-Schur s_nu of degree d of [s_nu] Omega[B X] T[A X] s_nu`` for ``d <= degree_cap``."""
    backend = backend or ExactBackend()
    r = A.r
    shift = A.row_sums()
    data = B.row_sums()
    om = omega_series(r, degree_cap, backend, data)
    out = []
    for d in range(degree_cap + 1):
        acc = backend.zero()
        for nu in multi_schur_basis(r, d):
            s = schur_to_powersum(nu, r, d, backend)
            g = om.with_cap(d) * translate(s, shift)
            coeffs = powersum_to_schur(g.homogeneous_part(d))
            c = coeffs.get(nu)
            if c is not None:
                acc = acc + c
        out.append(acc)
    return out


def trace_product_side(A: PlethysmMatrix, B: PlethysmMatrix, order: int,
                       backend: Backend | None = None) -> list:
    """``Omega[T (r + sum_ij (A^t B)_ij) / (1 - T)]`` up to ``T^order``."""
    total = (A.transpose() * B).total()
    F = _TT * (A.r + total) / (1 - _TT)
    return plethystic_exp_coefficients(F, "T", order, backend)


def trace_check(A: PlethysmMatrix, B: PlethysmMatrix, cap_degree: int, cap_T: int,
                backend: Backend | None = None, label: str = "") -> VerificationReport:
    backend = backend or ExactBackend()
    order = min(cap_degree, cap_T)
    params = {"r": A.r, "cap_degree": cap_degree, "cap_T": cap_T, "pair": label,
              **backend.describe()}
    report = VerificationReport("trace", params)
    with _Timer(report):
        lhs = operator_trace(A, B, order, backend)
        rhs = trace_product_side(A, B, order, backend)
        for n in range(order + 1):
            report.add(compare(f"{label}T^{n}" if label else f"T^{n}", lhs[n], rhs[n]))
    return report


def ext_trace_pair(r: int, u=None) -> tuple[PlethysmMatrix, PlethysmMatrix]:
    """Translation and exponential matrices of ``W(u)``."""
    from .wreath import resolvent_column

    u = _U if u is None else RatFunc._lift(u)
    A = PlethysmMatrix(r, {(0, 0): 1 - u * _Q * _T})
    col = resolvent_column(r, 1 - 1 / u)
    B = PlethysmMatrix(r, {(j, 0): e for j, e in col.items()})
    return A, B


def ext_trace_expected(r: int, order: int, u=None) -> list[RatFunc]:
    """``1/(T;T)^r`` times ``Omega[-T (1 + qt - 1/u - u q t) sum_i (qt)^i / ((1-T)(1-q^r)(1-t^r))]``."""
    u = _U if u is None else RatFunc._lift(u)
    geo = RatFunc(0)
    for i in range(r):
        geo = geo + (_Q * _T) ** i
    F = r * _TT / (1 - _TT) - _TT * (1 + _Q * _T - 1 / u - u * _Q * _T) * geo / (
        (1 - _TT) * (1 - _Q ** r) * (1 - _T ** r))
    return plethystic_exp_coefficients(F, "T", order)


def standard_trace_pairs(r: int) -> dict:
    """Named ``(A, B)`` pairs used by the trace suite."""
    from .wreath import resolvent

    zero = PlethysmMatrix(r, {})
    ident = PlethysmMatrix.identity(r)
    sig = PlethysmMatrix.sigma(r)
    pairs = {
        "zero": (zero, zero),
        "identity": (ident, ident),
        "ext": ext_trace_pair(r),
        "shift": (ident - sig * _Q, resolvent(r) * _T),
    }
    return pairs


# ---------------------------------------------------------------------------
# elliptic core independence


def theta_coefficients(z: RatFunc, order: int) -> list[RatFunc]:
    """``theta(z; p) = prod_k (1 - z p^k)(1 - p^(k+1)/z)`` up to ``p^order``."""
    out = [RatFunc(1)] + [RatFunc(0)] * order
    for k in range(order + 1):
        f = [RatFunc(0)] * (order + 1)
        f[0] = RatFunc(1)
        f[k] = f[k] - z
        out = series_mul(out, f, order, RatFunc(0))
        if k + 1 <= order:
            g = [RatFunc(0)] * (order + 1)
            g[0] = RatFunc(1)
            g[k + 1] = g[k + 1] - 1 / z
            out = series_mul(out, g, order, RatFunc(0))
    return out


def series_inverse(a: Sequence, order: int, one, zero) -> list:
    if _is_zero(a[0]):
        raise ZeroDivisionError("series without invertible constant term")
    inv0 = one / a[0]
    out = [inv0]
    for n in range(1, order + 1):
        acc = zero
        for j in range(1, n + 1):
            if j < len(a) and not _is_zero(a[j]):
                acc = acc + a[j] * out[n - j]
        out.append(-acc * inv0)
    return out


def theta_symmetry_holds(z: RatFunc, order: int) -> bool:
    """``theta(z) = -z theta(1/z)`` coefficientwise up to ``p^order``."""
    lhs = theta_coefficients(z, order)
    rhs = [-z * c for c in theta_coefficients(1 / z, order)]
    return all(ratfunc_equal(a, b) for a, b in zip(lhs, rhs))


def elliptic_box_factor(a: int, l: int, order: int, u=None) -> list[RatFunc]:
    u = _U if u is None else RatFunc._lift(u)
    z1 = _Q ** (a + 1) * _T ** l
    z2 = _Q ** a * _T ** (l + 1)
    zero, one = RatFunc(0), RatFunc(1)
    num = series_mul(theta_coefficients(u * z1, order), theta_coefficients(z2 / u, order),
                     order, zero)
    den = series_mul(theta_coefficients(z1, order), theta_coefficients(z2, order), order, zero)
    return series_mul(num, series_inverse(den, order, one, zero), order, zero)


def elliptic_sum(alpha: Partition, r: int, n: int, p_cap: int, u=None) -> list[RatFunc]:
    """``[T^n]`` of the theta-deformed hook sum for core ``alpha``, as a ``p``-series."""
    zero = RatFunc(0)
    total = [zero] * (p_cap + 1)
    cache: dict = {}
    for lam in enumerate_with_core(make_partition(alpha), r, n):
        term = [RatFunc(1)] + [zero] * p_cap
        for a, l in hook_boxes(lam, r):
            if (a, l) not in cache:
                cache[(a, l)] = elliptic_box_factor(a, l, p_cap, u)
            term = series_mul(term, cache[(a, l)], p_cap, zero)
        total = [x + y for x, y in zip(total, term)]
    return total


def elliptic_core_independence(r: int, alphas: Sequence, order: int = 2,
                               p_cap: int = 4) -> VerificationReport:
    alphas = [make_partition(a) for a in alphas]
    params = {"r": r, "cores": [list(a) for a in alphas], "orderT": order, "p_cap": p_cap}
    report = VerificationReport("elliptic", params)
    with _Timer(report):
        for n in range(order + 1):
            sums = {a: elliptic_sum(a, r, n, p_cap) for a in alphas}
            ref = alphas[0]
            for a in alphas:
                plain = no_modular_sum_side(a, r, n)[n]
                report.add(compare(f"T^{n}:core={list(a)}:p->0", sums[a][0], plain))
                if a == ref:
                    continue
                for j in range(p_cap + 1):
                    report.add(compare(f"T^{n}:p^{j}:core={list(a)}-vs-{list(ref)}",
                                       sums[a][j], sums[ref][j]))
    return report
