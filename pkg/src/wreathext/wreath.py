"""Wreath Macdonald polynomials and the operators built on them.

``H_lambda`` is found by linear algebra: write it in the multi-Schur basis of
degree ``|quot(lambda)|`` and require that its images under the plethysms
``(1 - q sigma^-1)`` and ``(1 - t^-1 sigma^-1)`` avoid the multi-Schur
functions ``s_quot(mu)`` with ``mu`` not above (respectively not below)
``lambda`` in dominance order.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .characters import color_zero_over_qt, d_sum, nekrasov_factor
from .coeff import Backend, ExactBackend, InvalidInput, LaurentPoly, RatFunc
from .linalg import SolverFailure, nullspace, solve_square
from .partitions import (Partition, boxes, color, contained_with_colors, core_quotient,
                         dominance_leq, enumerate_with_core, from_core_quotient, is_core,
                         make_partition, multipartitions)
from .symfunc import (ColoredSymFunc, PlethysmMatrix, apply_matrix_plethysm, omega_series,
                      powersum_to_schur, schur_expansion, schur_to_powersum, skew, translate,
                      vector_evaluate, wreath_pairing)

SOLVER_VERSION = "1"
NORMALIZATIONS = ("color-zero", "all-colors")
DEFAULT_NORMALIZATION = "color-zero"
CACHE_ENV = "WREATHEXT_CACHE"

_Q = RatFunc.var("q")
_T = RatFunc.var("t")
_U = RatFunc.var("u")


class NormalizationFailure(ArithmeticError):
    """Raised when the normalizing evaluation of a solution vanishes."""


def _backend_key(backend: Backend) -> str:
    return json.dumps(backend.describe(), sort_keys=True)


# ---------------------------------------------------------------------------
# plethysm data


def shift_matrix_q(r: int) -> PlethysmMatrix:
    """``1 - q sigma^-1``."""
    return PlethysmMatrix.identity(r) - PlethysmMatrix.sigma(r, -1) * _Q


def shift_matrix_t(r: int) -> PlethysmMatrix:
    """``1 - t^-1 sigma^-1``."""
    return PlethysmMatrix.identity(r) - PlethysmMatrix.sigma(r, -1) * (1 / _T)


@lru_cache(maxsize=None)
def resolvent(r: int) -> PlethysmMatrix:
    """``((1 - q sigma^-1)(1 - t sigma))^-1``."""
    return PlethysmMatrix.inverse_shift(r, _Q, -1) * PlethysmMatrix.inverse_shift(r, _T, 1)


def resolvent_column(r: int, scale=1) -> dict:
    """Column 0 of ``scale / ((1 - q sigma^-1)(t sigma - 1))`` as vector data."""
    scale = scale if isinstance(scale, RatFunc) else RatFunc(scale)
    return {j: -e * scale for j, e in resolvent(r).column(0).items()}


_SCHUR_MAPS: dict = {}


def schur_image_matrix(r: int, n: int, backend: Backend, which: str) -> dict:
    """Multi-Schur coefficients of ``s_nu[M X]`` for every ``nu`` of degree ``n``.

    ``which`` is ``"q"`` for ``M = 1 - q sigma^-1`` and ``"t"`` for ``1 - t^-1 sigma^-1``.
    """
    key = (r, n, _backend_key(backend), which)
    hit = _SCHUR_MAPS.get(key)
    if hit is not None:
        return hit
    M = shift_matrix_q(r) if which == "q" else shift_matrix_t(r)
    out = {}
    for nu in multipartitions(n, r):
        f = schur_to_powersum(nu, r, n, backend)
        out[nu] = powersum_to_schur(apply_matrix_plethysm(M, f))
    _SCHUR_MAPS[key] = out
    return out


# ---------------------------------------------------------------------------
# solver


def normalization_value(f: ColoredSymFunc, normalization: str = DEFAULT_NORMALIZATION):
    """Evaluate ``f`` at the alphabet ``1``.

    ``color-zero`` sends ``p_n[X^(0)]`` to 1 and the other colors to 0, which
    reads off the coefficient of ``s_((n), (), ...)``.  ``all-colors`` sends
    every ``p_n[X^(i)]`` to 1.
    """
    if normalization == "color-zero":
        data = {0: 1}
    elif normalization == "all-colors":
        data = {i: 1 for i in range(f.r)}
    else:
        raise InvalidInput(f"unknown normalization {normalization!r}")
    return vector_evaluate(f, data)


def triangularity_rows(lam: Partition, r: int, backend: Backend) -> tuple[list, tuple]:
    """The homogeneous linear conditions on the multi-Schur coefficients of ``H_lam``."""
    cq = core_quotient(lam, r)
    n = cq.quot_size()
    basis = multipartitions(n, r)
    Aq = schur_image_matrix(r, n, backend, "q")
    At = schur_image_matrix(r, n, backend, "t")
    zero = backend.zero()
    rows = []
    for target in basis:
        mu = from_core_quotient(cq.core, target, r)
        if not dominance_leq(lam, mu):
            rows.append([Aq[nu].get(target, zero) for nu in basis])
        if not dominance_leq(mu, lam):
            rows.append([At[nu].get(target, zero) for nu in basis])
    return rows, basis


def solve_h(lam: Partition, r: int, backend: Backend | None = None,
            normalization: str = DEFAULT_NORMALIZATION) -> ColoredSymFunc:
    """Wreath Macdonald polynomial ``H_lam`` in colored power sums."""
    backend = backend or ExactBackend()
    if not backend.is_field:
        raise InvalidInput("solving for H needs a field backend (exact or points)")
    lam = make_partition(lam)
    n = core_quotient(lam, r).quot_size()
    if n == 0:
        return ColoredSymFunc.constant(r, 0, backend, 1)
    rows, basis = triangularity_rows(lam, r, backend)
    kernel = nullspace(rows, len(basis), backend.zero(), backend.one())
    if len(kernel) != 1:
        raise SolverFailure(
            f"solution space for H_{lam} (r={r}) has dimension {len(kernel)}; "
            f"{len(rows)} conditions on {len(basis)} unknowns")
    H = schur_expansion(r, n, backend, dict(zip(basis, kernel[0])))
    val = normalization_value(H, normalization)
    if backend.is_zero(val):
        raise NormalizationFailure(f"H_{lam} evaluates to 0 under {normalization}")
    return H.scale(backend.one() / val)


def check_triangularity(H: ColoredSymFunc, lam: Partition, r: int) -> bool:
    """Re-expand both plethystic images of ``H`` and test the dominance support conditions."""
    cq = core_quotient(lam, r)
    img_q = powersum_to_schur(apply_matrix_plethysm(shift_matrix_q(r), H))
    img_t = powersum_to_schur(apply_matrix_plethysm(shift_matrix_t(r), H))
    for target in img_q:
        if not dominance_leq(lam, from_core_quotient(cq.core, target, r)):
            return False
    for target in img_t:
        if not dominance_leq(from_core_quotient(cq.core, target, r), lam):
            return False
    return True


# ---------------------------------------------------------------------------
# dagger


def minus_iota(r: int) -> PlethysmMatrix:
    return PlethysmMatrix.iota(r) * (-1)


def dagger(H: ColoredSymFunc) -> ColoredSymFunc:
    """``H[-iota X; 1/q, 1/t]`` for coefficients that can be inverted symbolically."""
    inv = H.map_coefficients(H.backend.invert_element)
    return apply_matrix_plethysm(minus_iota(H.r), inv)


def dagger_from_inverted(H_inverted: ColoredSymFunc, backend: Backend) -> ColoredSymFunc:
    """Dagger from a polynomial already computed with ``(q, t)`` inverted; only ``-iota`` remains."""
    moved = apply_matrix_plethysm(minus_iota(H_inverted.r), H_inverted)
    return ColoredSymFunc(moved.r, moved.cap, backend, moved.terms)


# ---------------------------------------------------------------------------
# tables


@dataclass
class WreathBasisTable:
    """All ``H_lam`` with a fixed r-core and quotient size."""

    r: int
    core: Partition
    n: int
    backend: Backend
    normalization: str = DEFAULT_NORMALIZATION
    polys: dict = field(default_factory=dict)
    _inverse: list | None = None

    @property
    def partitions(self) -> tuple:
        return enumerate_with_core(self.core, self.r, self.n)

    @classmethod
    def build(cls, r: int, core: Partition, n: int, backend: Backend | None = None,
              normalization: str = DEFAULT_NORMALIZATION) -> "WreathBasisTable":
        backend = backend or ExactBackend()
        core = make_partition(core)
        if not is_core(core, r):
            raise InvalidInput(f"{core} is not an {r}-core")
        table = cls(r, core, n, backend, normalization)
        for lam in table.partitions:
            table.polys[lam] = solve_h(lam, r, backend, normalization)
        return table

    def __getitem__(self, lam) -> ColoredSymFunc:
        return self.polys[make_partition(lam)]

    def schur_coefficients(self, lam) -> dict:
        return powersum_to_schur(self[lam])

    def expand(self, f: ColoredSymFunc) -> dict:
        """Coefficients of a degree-``n`` element in the basis ``{H_lam}``."""
        basis = multipartitions(self.n, self.r)
        lams = self.partitions
        zero = self.backend.zero()
        if self._inverse is None:
            cols = [self.schur_coefficients(lam) for lam in lams]
            M = [[cols[j].get(nu, zero) for j in range(len(lams))] for nu in basis]
            ident = [[self.backend.one() if i == j else zero for i in range(len(basis))]
                     for j in range(len(basis))]
            inv_cols = solve_square(M, ident, zero, self.backend.one())
            self._inverse = [[inv_cols[j][i] for j in range(len(basis))] for i in range(len(lams))]
        rhs = powersum_to_schur(f.homogeneous_part(self.n))
        vec = [rhs.get(nu, zero) for nu in basis]
        out = {}
        for i, lam in enumerate(lams):
            acc = zero
            for a, b in zip(self._inverse[i], vec):
                if not self.backend.is_zero(a) and not self.backend.is_zero(b):
                    acc = acc + a * b
            out[lam] = acc
        return out

    def to_json(self) -> dict:
        return {
            "version": SOLVER_VERSION,
            "r": self.r,
            "core": list(self.core),
            "n": self.n,
            "normalization": self.normalization,
            "backend": self.backend.describe(),
            "polys": [{"lambda": list(lam), "H": self[lam].to_json("schur")}
                      for lam in self.partitions],
        }

    @classmethod
    def from_json(cls, data: dict, backend: Backend | None = None) -> "WreathBasisTable":
        backend = backend or ExactBackend()
        table = cls(data["r"], tuple(data["core"]), data["n"], backend, data["normalization"])
        for entry in data["polys"]:
            table.polys[tuple(entry["lambda"])] = ColoredSymFunc.from_json(entry["H"], backend)
        return table


def cache_path(cache_dir, r: int, core: Partition, n: int, normalization: str) -> Path:
    tag = "-".join(map(str, core)) or "empty"
    return Path(cache_dir) / f"h_r{r}_core{tag}_n{n}_{normalization}_v{SOLVER_VERSION}.json"


def load_or_build(r: int, core: Partition, n: int, backend: Backend | None = None,
                  normalization: str = DEFAULT_NORMALIZATION, cache_dir=None) -> WreathBasisTable:
    """Build a table, reading and writing the JSON cache for the exact backend.

    ``cache_dir`` defaults to the ``WREATHEXT_CACHE`` environment variable;
    without either, nothing touches the disk.
    """
    backend = backend or ExactBackend()
    core = make_partition(core)
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    exact = isinstance(backend, ExactBackend) and not backend.describe().get("inverted")
    if not (cache_dir and exact):
        return WreathBasisTable.build(r, core, n, backend, normalization)
    path = cache_path(cache_dir, r, core, n, normalization)
    if path.exists():
        data = json.loads(path.read_text())
        if data.get("version") == SOLVER_VERSION:
            return WreathBasisTable.from_json(data, backend)
    table = WreathBasisTable.build(r, core, n, backend, normalization)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(table.to_json(), sort_keys=True, indent=1))
    tmp.replace(path)
    return table


class WreathFamily:
    """Lazily built tables of ``H_lam`` and ``H_lam^dagger`` for one core, all degrees."""

    def __init__(self, r: int, core: Partition, backend: Backend | None = None,
                 normalization: str = DEFAULT_NORMALIZATION, cache_dir=None):
        self.r = r
        self.core = make_partition(core)
        if not is_core(self.core, r):
            raise InvalidInput(f"{self.core} is not an {r}-core")
        self.backend = backend or ExactBackend()
        self.normalization = normalization
        self.cache_dir = cache_dir
        self._tables: dict = {}
        self._dagger_tables: dict = {}
        self._inverted: WreathFamily | None = None

    def table(self, n: int) -> WreathBasisTable:
        if n not in self._tables:
            self._tables[n] = load_or_build(self.r, self.core, n, self.backend,
                                            self.normalization, self.cache_dir)
        return self._tables[n]

    def h(self, lam) -> ColoredSymFunc:
        lam = make_partition(lam)
        cq = core_quotient(lam, self.r)
        if cq.core != self.core:
            raise InvalidInput(f"{lam} does not have core {self.core}")
        return self.table(cq.quot_size())[lam]

    def _symbolic_dagger(self) -> bool:
        try:
            self.backend.invert_element(self.backend.one())
            return True
        except NotImplementedError:
            return False

    def dagger(self, lam) -> ColoredSymFunc:
        lam = make_partition(lam)
        if self._symbolic_dagger():
            return dagger(self.h(lam))
        if self._inverted is None:
            self._inverted = WreathFamily(self.r, self.core, self.backend.inverted(),
                                          self.normalization)
        return dagger_from_inverted(self._inverted.h(lam), self.backend)

    def dagger_table(self, n: int) -> WreathBasisTable:
        if n not in self._dagger_tables:
            t = WreathBasisTable(self.r, self.core, n, self.backend, self.normalization)
            for lam in t.partitions:
                t.polys[lam] = self.dagger(lam)
            self._dagger_tables[n] = t
        return self._dagger_tables[n]

    def expand(self, f: ColoredSymFunc, dagger_basis: bool = False) -> dict:
        """Coefficients of ``f`` in ``{H_lam}`` (or ``{H_lam^dagger}``) across all degrees."""
        out = {}
        for d in sorted(f.degrees()):
            t = self.dagger_table(d) if dagger_basis else self.table(d)
            out.update(t.expand(f.homogeneous_part(d)))
        return out

    def assemble(self, coeffs: dict, cap: int, dagger_basis: bool = False) -> ColoredSymFunc:
        out = ColoredSymFunc.zero(self.r, cap, self.backend)
        for lam, c in coeffs.items():
            if self.backend.is_zero(c):
                continue
            g = self.dagger(lam) if dagger_basis else self.h(lam)
            out = out + ColoredSymFunc(self.r, cap, self.backend, g.terms).scale(c)
        return out


# ---------------------------------------------------------------------------
# nabla and delta series


def nabla_eigenvalue(lam: Partition, core: Partition, r: int) -> RatFunc:
    """Product of ``-q^a t^b`` over the color-0 boxes of ``lam`` outside ``core``."""
    inner = set(boxes(core))
    out = RatFunc(1)
    for a, b in boxes(lam):
        if (a, b) not in inner and color((a, b), r) == 0:
            out = out * (-RatFunc.monomial(1, q=a, t=b))
    return out


def nabla(f: ColoredSymFunc, family: WreathFamily, dagger_basis: bool = False,
          inverse: bool = False) -> ColoredSymFunc:
    """Diagonal action on ``{H_lam}`` (or its adjoint on ``{H_lam^dagger}``)."""
    coeffs = family.expand(f, dagger_basis)
    scaled = {}
    for lam, c in coeffs.items():
        ev = family.backend.coerce(nabla_eigenvalue(lam, family.core, family.r))
        scaled[lam] = c / ev if inverse else c * ev
    return family.assemble(scaled, f.cap, dagger_basis)


def delta_data(lam: Partition, r: int, starred: bool = False) -> dict:
    """Vector data of the plethystic exponential defining the delta series of ``lam``.

    Unstarred: colors of ``D_lam / ((1-q)(t-1))``; starred: colors of
    ``q t bar(D_lam) / ((1-q)(1-t))``.
    """
    D = d_sum(lam).poly
    if starred:
        num = LaurentPoly.monomial(1, q=1, t=1) * D.invert_qt()
        return {i: color_zero_over_qt(num, r, i) for i in range(r)}
    return {i: -color_zero_over_qt(D, r, i) for i in range(r)}


def delta_series(lam: Partition, r: int, cap: int, backend: Backend | None = None,
                 starred: bool = False) -> ColoredSymFunc:
    backend = backend or ExactBackend()
    return omega_series(r, cap, backend, delta_data(lam, r, starred))


def d_vector(lam: Partition, r: int) -> dict:
    """``{i: D_lam^(i)}`` for vector plethysm."""
    D = d_sum(lam).poly
    return {i: RatFunc(D.color_part(r, i)) for i in range(r)}


# ---------------------------------------------------------------------------
# vertex operators


def _omega_times(f: ColoredSymFunc, data: dict, cap: int) -> ColoredSymFunc:
    om = omega_series(f.r, cap, f.backend, data)
    return om * f.with_cap(cap)


def v_operator(f: ColoredSymFunc, family: WreathFamily, cap: int, starred: bool = False) -> ColoredSymFunc:
    """``V_alpha`` (or ``V*_alpha``) applied right to left and truncated at ``cap``."""
    r = f.r
    if not starred:
        g = translate(f, {0: RatFunc(1)})
        g = _omega_times(g, resolvent_column(r, 1), cap)
        return nabla(g, family)
    g = translate(f, {0: RatFunc(-1)})
    g = _omega_times(g, resolvent_column(r, -_Q * _T), cap)
    return nabla(g, family, dagger_basis=True, inverse=True)


def ext_operator(f: ColoredSymFunc, cap: int, u=None) -> ColoredSymFunc:
    """``W(u) f``: translation by ``(1 - u q t) X^(0)`` first, then the plethystic exponential.

    ``u`` may be a specialization (for example ``1`` or ``1/(q t)``); it is
    substituted before any power-sum expansion.
    """
    u = _U if u is None else (u if isinstance(u, RatFunc) else RatFunc(u))
    g = translate(f, {0: 1 - u * _Q * _T})
    return _omega_times(g, resolvent_column(f.r, 1 - 1 / u), cap)


@dataclass(frozen=True)
class ExtMatrixElement:
    lam: Partition
    mu: Partition
    value: object
    expected: object

    @property
    def matches(self) -> bool:
        diff = self.value - self.expected
        return diff == 0 or (hasattr(diff, "is_zero") and diff.is_zero())


def nekrasov_expected(lam: Partition, mu: Partition, r: int, u=None) -> RatFunc:
    """``u^(-|quot mu|) N_{lam,mu}(u)``, optionally at a specialized ``u``."""
    m = core_quotient(mu, r).quot_size()
    value = RatFunc(nekrasov_factor(lam, mu, r).expand()) * _U ** (-m)
    if u is not None:
        value = value.substitute(u=u if isinstance(u, RatFunc) else RatFunc(u))
    return value


def ext_pairing(lam: Partition, mu: Partition, family: WreathFamily, u=None) -> ExtMatrixElement:
    """``< H_mu^dagger, W(u) H_lam >'`` next to the Nekrasov factor it should equal."""
    r = family.r
    lam, mu = make_partition(lam), make_partition(mu)
    if core_quotient(lam, r).core != core_quotient(mu, r).core:
        raise InvalidInput("Ext pairing is only defined here for partitions with the same core")
    m = core_quotient(mu, r).quot_size()
    WH = ext_operator(family.h(lam), m, u)
    value = wreath_pairing(family.dagger(mu), WH)
    expected = family.backend.coerce(nekrasov_expected(lam, mu, r, u))
    return ExtMatrixElement(lam, mu, value, expected)


def norm_expected(lam: Partition, r: int) -> RatFunc:
    """``prod (1 - q^-a t^(l+1))(1 - q^(a+1) t^-l)`` over hooks divisible by ``r``."""
    return RatFunc(nekrasov_factor(lam, lam, r).expand()).substitute(u=RatFunc(1))


# ---------------------------------------------------------------------------
# Pieri operators


def h_skew_symbol(r: int, n: int, backend: Backend) -> ColoredSymFunc:
    """``h_n[(1 - q t) X^(0)]``."""
    return omega_series(r, n, backend, {0: 1 - _Q * _T}).homogeneous_part(n)


def e_mult_symbol(r: int, n: int, backend: Backend) -> ColoredSymFunc:
    """``e_n[(1 - q t) X^(0) / ((1 - q sigma^-1)(1 - t sigma))]``."""
    data = {j: -(1 - _Q * _T) * e for j, e in resolvent(r).column(0).items()}
    return omega_series(r, n, backend, data).homogeneous_part(n).scale((-1) ** n)


def pieri_skew(lam: Partition, n: int, family: WreathFamily) -> dict:
    """Expansion of ``h_n^perp[(1 - q t) X^(0)] H_lam`` in ``{H_mu}``."""
    H = family.h(lam)
    d = core_quotient(lam, family.r).quot_size() - n
    if d < 0:
        return {}
    F = h_skew_symbol(family.r, n, family.backend)
    g = skew(F, H)
    g = ColoredSymFunc(g.r, d, g.backend, g.terms)
    return family.table(d).expand(g)


def pieri_mult(lam: Partition, n: int, family: WreathFamily) -> dict:
    """Expansion of ``e_n[(1 - q t) X^(0) / ((1 - q sigma^-1)(1 - t sigma))] H_lam`` in ``{H_mu}``."""
    H = family.h(lam)
    d = core_quotient(lam, family.r).quot_size() + n
    F = e_mult_symbol(family.r, n, family.backend)
    g = ColoredSymFunc(F.r, d, F.backend, F.terms) * H.with_cap(d)
    return family.table(d).expand(g)


def pieri_skew_expected(lam: Partition, mu: Partition, n: int, r: int) -> RatFunc:
    if not contained_with_colors(mu, lam, n, r):
        return RatFunc(0)
    one = RatFunc(1)
    num = RatFunc(nekrasov_factor(lam, mu, r).expand()).substitute(u=one)
    den = RatFunc(nekrasov_factor(mu, mu, r).expand()).substitute(u=one)
    return num / den


def pieri_mult_expected(lam: Partition, mu: Partition, n: int, r: int) -> RatFunc:
    if not contained_with_colors(lam, mu, n, r):
        return RatFunc(0)
    m = core_quotient(mu, r).quot_size()
    uval = 1 / (_Q * _T)
    num = RatFunc(nekrasov_factor(lam, mu, r).expand()).substitute(u=uval)
    den = RatFunc(nekrasov_factor(mu, mu, r).expand()).substitute(u=RatFunc(1))
    return (-1) ** n * (_Q * _T) ** m * num / den
