"""Truncated colored symmetric functions.

Elements of the r-fold tensor power of the ring of symmetric functions are
stored in the colored power-sum basis.  A basis index is an r-tuple of
partitions; ``((2, 1), (), (1,))`` stands for
``p_2 p_1 [X^(0)] * p_1 [X^(2)]``.  Every element carries a degree cap and
a coefficient backend from :mod:`wreathext.coeff`.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Mapping

from .coeff import (VAR_INDEX, Backend, ExactBackend, InvalidInput, LaurentPoly, RatFunc,
                    TruncSeries, substitute_powers)
from .partitions import multipartitions, partitions_of

Index = tuple


# ---------------------------------------------------------------------------
# symmetric group data


def z_factor(mu) -> int:
    """``prod_i i^{m_i} m_i!`` for the multiplicities ``m_i`` of ``mu``."""
    out = 1
    for part, mult in Counter(mu).items():
        out *= part ** mult * factorial(mult)
    return out


def z_index(index: Index) -> int:
    out = 1
    for mu in index:
        out *= z_factor(mu)
    return out


@lru_cache(maxsize=None)
def sn_character(lam: tuple, mu: tuple) -> int:
    """Irreducible character ``chi^lam`` at cycle type ``mu`` (Murnaghan-Nakayama on beta sets)."""
    if sum(lam) != sum(mu):
        raise InvalidInput(f"character needs equal sizes: {lam}, {mu}")
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    occupied = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in occupied:
            continue
        sign = -1 if sum(1 for c in beta if nb < c < b) % 2 else 1
        moved = sorted([c for c in beta if c != b] + [nb], reverse=True)
        new_lam = tuple(x for x in (moved[i] - (n - 1 - i) for i in range(n)) if x > 0)
        total += sign * sn_character(new_lam, rest)
    return total


@lru_cache(maxsize=None)
def _schur_in_powersums(lam: tuple) -> tuple:
    """``s_lam = sum_mu chi^lam(mu) / z_mu p_mu`` as a tuple of ``(mu, Fraction)``."""
    out = []
    for mu in partitions_of(sum(lam)):
        c = sn_character(lam, mu)
        if c:
            out.append((mu, Fraction(c, z_factor(mu))))
    return tuple(out)


@lru_cache(maxsize=None)
def _powersum_in_schurs(mu: tuple) -> tuple:
    """``p_mu = sum_lam chi^lam(mu) s_lam``."""
    out = []
    for lam in partitions_of(sum(mu)):
        c = sn_character(lam, mu)
        if c:
            out.append((lam, c))
    return tuple(out)


def index_degree(index: Index) -> int:
    return sum(sum(mu) for mu in index)


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def _merge_index(x: Index, y: Index) -> Index:
    return tuple(_merge(a, b) for a, b in zip(x, y))


def _index_from_parts(r: int, parts: Iterable[tuple]) -> Index:
    """Index from an iterable of ``(n, color)`` generator labels."""
    cols = [[] for _ in range(r)]
    for n, j in parts:
        cols[j].append(n)
    return tuple(tuple(sorted(c, reverse=True)) for c in cols)


def _index_parts(index: Index) -> list[tuple]:
    return [(n, j) for j, mu in enumerate(index) for n in mu]


def empty_index(r: int) -> Index:
    return ((),) * r


# ---------------------------------------------------------------------------
# the ring


class ColoredSymFunc:
    """Element of the colored symmetric function ring truncated at total degree ``cap``."""

    __slots__ = ("r", "cap", "backend", "terms")

    def __init__(self, r: int, cap: int, backend: Backend, terms: Mapping | None = None):
        if r < 1:
            raise InvalidInput("r must be positive")
        self.r = r
        self.cap = cap
        self.backend = backend
        clean = {}
        if terms:
            for idx, c in terms.items():
                if len(idx) != r:
                    raise InvalidInput(f"index {idx} does not have {r} colors")
                if index_degree(idx) > cap:
                    raise InvalidInput(f"index {idx} exceeds degree cap {cap}")
                if not backend.is_zero(c):
                    clean[idx] = c
        self.terms = clean

    # construction ---------------------------------------------------------

    def _new(self, terms: dict, cap: int | None = None) -> "ColoredSymFunc":
        out = ColoredSymFunc.__new__(ColoredSymFunc)
        out.r = self.r
        out.cap = self.cap if cap is None else cap
        out.backend = self.backend
        out.terms = {k: v for k, v in terms.items() if not self.backend.is_zero(v)}
        return out

    @classmethod
    def constant(cls, r: int, cap: int, backend: Backend, c=1) -> "ColoredSymFunc":
        return cls(r, cap, backend, {empty_index(r): backend.coerce(c)})

    @classmethod
    def zero(cls, r: int, cap: int, backend: Backend) -> "ColoredSymFunc":
        return cls(r, cap, backend)

    @classmethod
    def power_sum(cls, r: int, cap: int, backend: Backend, n: int, color: int, c=1):
        return cls(r, cap, backend, {_index_from_parts(r, [(n, color % r)]): backend.coerce(c)})

    @classmethod
    def from_index(cls, r: int, cap: int, backend: Backend, index: Index, c=1):
        return cls(r, cap, backend, {tuple(tuple(m) for m in index): backend.coerce(c)})

    def with_cap(self, cap: int) -> "ColoredSymFunc":
        return self._new({k: v for k, v in self.terms.items() if index_degree(k) <= cap}, cap)

    # queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, index: Index):
        return self.terms.get(tuple(tuple(m) for m in index), self.backend.zero())

    def constant_term(self):
        return self.coefficient(empty_index(self.r))

    def degrees(self) -> set:
        return {index_degree(k) for k in self.terms}

    def homogeneous_part(self, d: int) -> "ColoredSymFunc":
        return self._new({k: v for k, v in self.terms.items() if index_degree(k) == d})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "ColoredSymFunc"):
        if other.r != self.r:
            raise InvalidInput("colored symmetric functions with different r")

    def __add__(self, other):
        if not isinstance(other, ColoredSymFunc):
            return self + ColoredSymFunc.constant(self.r, self.cap, self.backend, other)
        self._check(other)
        out = dict(self.terms)
        cap = min(self.cap, other.cap)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return self._new({k: v for k, v in out.items() if index_degree(k) <= cap}, cap)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ColoredSymFunc":
        c = self.backend.coerce(c) if not isinstance(c, (int, Fraction)) else c
        return self._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ColoredSymFunc):
            return self.scale(other)
        self._check(other)
        cap = min(self.cap, other.cap)
        out: dict = {}
        for k1, v1 in self.terms.items():
            d1 = index_degree(k1)
            for k2, v2 in other.terms.items():
                if d1 + index_degree(k2) > cap:
                    continue
                k = _merge_index(k1, k2)
                p = v1 * v2
                out[k] = out[k] + p if k in out else p
        return self._new(out, cap)

    def __rmul__(self, other):
        return self.scale(other)

    def equals(self, other: "ColoredSymFunc") -> bool:
        return (self - other).is_zero()

    def map_coefficients(self, f: Callable) -> "ColoredSymFunc":
        return self._new({k: f(v) for k, v in self.terms.items()})

    def __repr__(self):
        return f"ColoredSymFunc(r={self.r}, cap={self.cap}, terms={len(self.terms)})"

    # serialization ---------------------------------------------------------

    def to_json(self, basis: str = "powersum") -> dict:
        if basis == "powersum":
            items = self.terms.items()
        elif basis == "schur":
            items = powersum_to_schur(self).items()
        else:
            raise InvalidInput(f"unknown basis {basis!r}")
        terms = [{"index": [list(m) for m in k], "coeff": coeff_to_json(v)}
                 for k, v in sorted(items, key=lambda kv: (index_degree(kv[0]), _sort_key(kv[0])))]
        return {"r": self.r, "cap": self.cap, "basis": basis, "terms": terms}

    @classmethod
    def from_json(cls, data: dict, backend: Backend | None = None) -> "ColoredSymFunc":
        backend = backend or ExactBackend()
        r, cap = data["r"], data["cap"]
        terms = {tuple(tuple(m) for m in t["index"]): backend.coerce(coeff_from_json(t["coeff"]))
                 for t in data["terms"]}
        if data.get("basis", "powersum") == "schur":
            return schur_expansion(r, cap, backend, terms)
        return cls(r, cap, backend, terms)


def _sort_key(index: Index):
    return tuple((-len(m), tuple(-x for x in m)) for m in index)


def coeff_to_json(x):
    if isinstance(x, RatFunc):
        return {"ratfunc": x.to_json(), "text": x.canonical()}
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, (LaurentPoly, TruncSeries)):
        return x.canonical()
    return str(x)


def coeff_from_json(data):
    if isinstance(data, dict) and "ratfunc" in data:
        return RatFunc.from_json(data["ratfunc"])
    return Fraction(data)


# ---------------------------------------------------------------------------
# basis changes


def schur_to_powersum(index: Index, r: int, cap: int, backend: Backend, c=1) -> ColoredSymFunc:
    """Multi-Schur function ``s_index`` written in colored power sums."""
    index = tuple(tuple(m) for m in index)
    if len(index) != r:
        raise InvalidInput(f"multipartition {index} does not have {r} components")
    if index_degree(index) > cap:
        raise InvalidInput(f"multi-Schur {index} exceeds degree cap {cap}")
    out = {empty_index(r): Fraction(1)}
    for color, lam in enumerate(index):
        if not lam:
            continue
        nxt = {}
        for k, v in out.items():
            for mu, w in _schur_in_powersums(lam):
                kk = k[:color] + (mu,) + k[color + 1:]
                nxt[kk] = v * w
        out = nxt
    c = backend.coerce(c)
    return ColoredSymFunc(r, cap, backend, {k: backend.coerce(v) * c for k, v in out.items()})


def schur_expansion(r: int, cap: int, backend: Backend, coeffs: Mapping) -> ColoredSymFunc:
    """``sum coeffs[index] * s_index`` in colored power sums."""
    out: dict = {}
    for index, c in coeffs.items():
        index = tuple(tuple(m) for m in index)
        rat = {empty_index(r): Fraction(1)}
        for color, lam in enumerate(index):
            if not lam:
                continue
            nxt = {}
            for k, v in rat.items():
                for mu, w in _schur_in_powersums(lam):
                    nxt[k[:color] + (mu,) + k[color + 1:]] = v * w
            rat = nxt
        for k, v in rat.items():
            term = c * v
            out[k] = out[k] + term if k in out else term
    return ColoredSymFunc(r, cap, backend, out)


def powersum_to_schur(f: ColoredSymFunc) -> dict:
    """Coefficients of ``f`` in the multi-Schur basis."""
    out: dict = {}
    for index, c in f.terms.items():
        partial = {empty_index(f.r): 1}
        for color, mu in enumerate(index):
            if not mu:
                continue
            nxt = {}
            for k, v in partial.items():
                for lam, w in _powersum_in_schurs(mu):
                    nxt[k[:color] + (lam,) + k[color + 1:]] = v * w
            partial = nxt
        for k, v in partial.items():
            term = c * v
            out[k] = out[k] + term if k in out else term
    return {k: v for k, v in out.items() if not f.backend.is_zero(v)}


def multi_schur_basis(r: int, n: int) -> tuple:
    return multipartitions(n, r)


# ---------------------------------------------------------------------------
# pairings


def hall_pairing(f: ColoredSymFunc, g: ColoredSymFunc):
    f._check(g)
    total = f.backend.zero()
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for k, v in small.terms.items():
        w = big.terms.get(k)
        if w is not None:
            total = total + v * w * z_index(k)
    return total


# ---------------------------------------------------------------------------
# matrix plethysm


class PlethysmMatrix:
    """An r x r matrix of rational expressions acting on colored power sums.

    Column ``i`` describes the image of the alphabet of color ``i``:
    ``p_n[M X^(i)] = sum_j E_{j,i}(n-th powers) p_n[X^(j)]``.
    """

    __slots__ = ("r", "entries", "name")

    def __init__(self, r: int, entries: Mapping, name: str | None = None):
        self.r = r
        clean = {}
        for (j, i), e in entries.items():
            e = e if isinstance(e, RatFunc) else RatFunc(e)
            if not e.is_zero():
                clean[(j % r, i % r)] = clean.get((j % r, i % r), RatFunc(0)) + e
        self.entries = {k: v for k, v in clean.items() if not v.is_zero()}
        self.name = name

    @classmethod
    def identity(cls, r: int) -> "PlethysmMatrix":
        return cls(r, {(i, i): 1 for i in range(r)}, "1")

    @classmethod
    def scalar(cls, r: int, e) -> "PlethysmMatrix":
        return cls(r, {(i, i): e for i in range(r)})

    @classmethod
    def sigma(cls, r: int, power: int = 1) -> "PlethysmMatrix":
        """``p_n[sigma X^(i)] = p_n[X^(i+1)]``; ``power`` may be negative."""
        return cls(r, {((i + power) % r, i): 1 for i in range(r)}, f"sigma^{power}")

    @classmethod
    def iota(cls, r: int) -> "PlethysmMatrix":
        return cls(r, {((-i) % r, i): 1 for i in range(r)}, "iota")

    @classmethod
    def inverse_shift(cls, r: int, s, sign: int = 1) -> "PlethysmMatrix":
        """Inverse of ``1 - s sigma^sign``: entries ``E_{i+sign*j, i} = s^j / (1 - s^r)``."""
        if sign not in (1, -1):
            raise InvalidInput("sign must be +1 or -1")
        s = s if isinstance(s, RatFunc) else RatFunc(s)
        den = 1 - s ** r
        entries = {}
        for i in range(r):
            for j in range(r):
                key = ((i + sign * j) % r, i)
                entries[key] = entries.get(key, RatFunc(0)) + s ** j / den
        return cls(r, entries, f"1/(1-s*sigma^{sign})")

    def __getitem__(self, key):
        return self.entries.get((key[0] % self.r, key[1] % self.r), RatFunc(0))

    def __add__(self, other):
        if not isinstance(other, PlethysmMatrix):
            other = PlethysmMatrix.scalar(self.r, other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return PlethysmMatrix(self.r, out)

    __radd__ = __add__

    def __neg__(self):
        return PlethysmMatrix(self.r, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Matrix product; a scalar multiplies every entry."""
        if not isinstance(other, PlethysmMatrix):
            return PlethysmMatrix(self.r, {k: v * other for k, v in self.entries.items()})
        out: dict = {}
        for (j, k), a in self.entries.items():
            for (k2, i), b in other.entries.items():
                if k == k2:
                    out[(j, i)] = out.get((j, i), RatFunc(0)) + a * b
        return PlethysmMatrix(self.r, out)

    def __rmul__(self, other):
        return PlethysmMatrix(self.r, {k: other * v for k, v in self.entries.items()})

    def transpose(self) -> "PlethysmMatrix":
        return PlethysmMatrix(self.r, {(i, j): v for (j, i), v in self.entries.items()})

    def column(self, i: int) -> dict:
        return {j: v for (j, ii), v in self.entries.items() if ii == i % self.r}

    def row_sums(self) -> dict:
        """``sum_i E_{j,i}`` for each row ``j``."""
        out: dict = {}
        for (j, _i), v in self.entries.items():
            out[j] = out.get(j, RatFunc(0)) + v
        return out

    def total(self) -> RatFunc:
        out = RatFunc(0)
        for v in self.entries.values():
            out = out + v
        return out

    def __eq__(self, other):
        if not isinstance(other, PlethysmMatrix):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return all(self[k] == other[k] for k in keys)

    def __repr__(self):
        body = ", ".join(f"{k}: {v.canonical()}" for k, v in sorted(self.entries.items()))
        return f"PlethysmMatrix(r={self.r}, {{{body}}})"


def _coerce_power(backend: Backend, e: RatFunc, n: int):
    return backend.coerce(substitute_powers(e, n) if n != 1 else e)


def _generator_images(M: PlethysmMatrix, backend: Backend, n: int, i: int) -> list:
    return [(j, _coerce_power(backend, e, n)) for j, e in sorted(M.column(i).items())]


def apply_matrix_plethysm(M: PlethysmMatrix, f: ColoredSymFunc) -> ColoredSymFunc:
    """``f[M X]``: the ring map sending ``p_n[X^(i)]`` to ``sum_j E_{j,i}(n) p_n[X^(j)]``."""
    if M.r != f.r:
        raise InvalidInput("plethysm matrix and function have different r")
    backend = f.backend
    images: dict = {}
    out: dict = {}
    for index, c in f.terms.items():
        partial = {(): c}
        for n, i in _index_parts(index):
            key = (n, i)
            if key not in images:
                images[key] = _generator_images(M, backend, n, i)
            img = images[key]
            nxt: dict = {}
            for labels, v in partial.items():
                for j, e in img:
                    lab = tuple(sorted(labels + ((n, j),)))
                    w = v * e
                    nxt[lab] = nxt[lab] + w if lab in nxt else w
            partial = nxt
        for labels, v in partial.items():
            k = _index_from_parts(f.r, labels)
            out[k] = out[k] + v if k in out else v
    return f._new(out)


def inverse_shift_plethysm(f: ColoredSymFunc, s, sign: int = 1) -> ColoredSymFunc:
    """``f[X / (1 - s sigma^sign)]``."""
    return apply_matrix_plethysm(PlethysmMatrix.inverse_shift(f.r, s, sign), f)


def wreath_matrix(r: int) -> PlethysmMatrix:
    """``(1 - q sigma^-1)(t sigma - 1)``, the plethysm inside the modified pairing."""
    q, t = RatFunc.var("q"), RatFunc.var("t")
    one = PlethysmMatrix.identity(r)
    return (one - PlethysmMatrix.sigma(r, -1) * q) * (PlethysmMatrix.sigma(r, 1) * t - one)


def wreath_pairing(f: ColoredSymFunc, g: ColoredSymFunc):
    """``< f[iota X], g[(1 - q sigma^-1)(t sigma - 1) X] >`` in the Hall pairing."""
    f._check(g)
    return hall_pairing(apply_matrix_plethysm(PlethysmMatrix.iota(f.r), f),
                        apply_matrix_plethysm(wreath_matrix(f.r), g))


# ---------------------------------------------------------------------------
# evaluation


def vector_evaluate(f: ColoredSymFunc, data: Mapping, matrix: PlethysmMatrix | None = None):
    """Evaluate ``f`` at ``p_n[X^(i)] -> data[i](n-th powers)``; ``matrix`` acts first."""
    if matrix is not None:
        f = apply_matrix_plethysm(matrix, f)
    backend = f.backend
    vals: dict = {}
    total = backend.zero()
    for index, c in f.terms.items():
        term = c
        for n, i in _index_parts(index):
            key = (n, i)
            if key not in vals:
                e = data.get(i, 0)
                vals[key] = _coerce_power(backend, e if isinstance(e, RatFunc) else RatFunc(e), n)
            term = term * vals[key]
        total = total + term
    return total


def color_split(poly: LaurentPoly, r: int) -> dict:
    """Vector-plethysm data ``{i: poly^(i)}`` from a q,t character."""
    return {i: RatFunc(poly.color_part(r, i)) for i in range(r)}


# ---------------------------------------------------------------------------
# Omega and translation operators


def _column_data(M: PlethysmMatrix | Mapping, i: int | None, scale) -> dict:
    if isinstance(M, PlethysmMatrix):
        data = M.row_sums() if i is None else M.column(i)
    else:
        data = dict(M)
    scale = scale if isinstance(scale, RatFunc) else RatFunc(scale)
    return {j: (e if isinstance(e, RatFunc) else RatFunc(e)) * scale for j, e in data.items()}


def omega_series(r: int, cap: int, backend: Backend, data: Mapping) -> ColoredSymFunc:
    """``Omega[sum_j data[j] X^(j)]`` truncated at degree ``cap``.

    Uses ``d H_d = sum_k P_k H_{d-k}`` with ``P_k = sum_j data[j](k) p_k[X^(j)]``.
    """
    P = []
    for k in range(1, cap + 1):
        terms = {}
        for j, e in data.items():
            v = _coerce_power(backend, e if isinstance(e, RatFunc) else RatFunc(e), k)
            if not backend.is_zero(v):
                terms[_index_from_parts(r, [(k, j % r)])] = v
        P.append(ColoredSymFunc(r, cap, backend, terms))
    H = [ColoredSymFunc.constant(r, cap, backend, 1)]
    for d in range(1, cap + 1):
        acc = ColoredSymFunc.zero(r, cap, backend)
        for k in range(1, d + 1):
            if P[k - 1].terms and H[d - k].terms:
                acc = acc + P[k - 1] * H[d - k]
        H.append(acc.scale(Fraction(1, d)))
    out = H[0]
    for h in H[1:]:
        out = out + h
    return out


def omega_multiply(M, i: int | None, scale, f: ColoredSymFunc, cap: int | None = None) -> ColoredSymFunc:
    """``Omega[scale * M X^(i)] * f``; ``i=None`` sums over all columns."""
    cap = f.cap if cap is None else cap
    om = omega_series(f.r, cap, f.backend, _column_data(M, i, scale))
    return om * f.with_cap(cap)


def translation_apply(M, i: int | None, scale, f: ColoredSymFunc) -> ColoredSymFunc:
    """``T[scale * M X^(i)] f``: shifts ``p_n[X^(j)]`` by ``scale * E_{j,i}`` at n-th powers."""
    data = _column_data(M, i, scale)
    return translate(f, data)


def translate(f: ColoredSymFunc, data: Mapping) -> ColoredSymFunc:
    """Ring automorphism ``p_n[X^(j)] -> p_n[X^(j)] + data[j](n-th powers)``."""
    backend = f.backend
    shifts: dict = {}
    out: dict = {}
    for index, c in f.terms.items():
        partial = {(): c}
        for j, mu in enumerate(index):
            if j not in data or not mu:
                partial = {lab + tuple((n, j) for n in mu): v for lab, v in partial.items()}
                continue
            for n, m in Counter(mu).items():
                key = (n, j)
                if key not in shifts:
                    shifts[key] = _coerce_power(backend, data[j], n)
                a = shifts[key]
                nxt: dict = {}
                apow = [backend.one()]
                for _ in range(m):
                    apow.append(apow[-1] * a)
                for lab, v in partial.items():
                    for kept in range(m + 1):
                        coeff = apow[m - kept] * comb(m, kept)
                        if backend.is_zero(coeff):
                            continue
                        lab2 = lab + ((n, j),) * kept
                        w = v * coeff
                        nxt[lab2] = nxt[lab2] + w if lab2 in nxt else w
                partial = nxt
        for lab, v in partial.items():
            k = _index_from_parts(f.r, lab)
            out[k] = out[k] + v if k in out else v
    return f._new(out)


def skew(F: ColoredSymFunc, g: ColoredSymFunc) -> ColoredSymFunc:
    """``F^perp g``: each ``p_m[X^(i)]`` in ``F`` acts as ``m d/dp_m[X^(i)]``."""
    F._check(g)
    out: dict = {}
    for fi, fc in F.terms.items():
        need = [Counter(mu) for mu in fi]
        for gi, gc in g.terms.items():
            factor = 1
            rest = []
            ok = True
            for color in range(g.r):
                have = Counter(gi[color])
                for m, k in need[color].items():
                    a = have.get(m, 0)
                    if a < k:
                        ok = False
                        break
                    factor *= m ** k * factorial(a) // factorial(a - k)
                    have[m] = a - k
                if not ok:
                    break
                rest.append(tuple(sorted(have.elements(), reverse=True)))
            if not ok:
                continue
            k = tuple(rest)
            w = fc * gc * factor
            out[k] = out[k] + w if k in out else w
    return g._new(out)


def skew_adjoint(F: ColoredSymFunc) -> Callable[[ColoredSymFunc], ColoredSymFunc]:
    """The Hall adjoint of multiplication by ``F``."""
    return lambda g: skew(F, g)


def grading_scale(f: ColoredSymFunc, marker) -> ColoredSymFunc:
    """Scale the degree-d part of ``f`` by ``marker**d``."""
    backend = f.backend
    m = backend.coerce(marker)
    powers = {0: backend.one()}
    out = {}
    for k, v in f.terms.items():
        d = index_degree(k)
        if d not in powers:
            powers[d] = m ** d
        out[k] = v * powers[d]
    return f._new(out)


def scalar_omega(c: RatFunc, order: int, marker: str) -> RatFunc:
    """``Omega[c]`` as a polynomial in the marker variable up to ``marker^order``.

    ``c`` must be divisible by the marker; terms beyond ``order`` are dropped.
    """
    # exp(sum_k c(k)/k) via d H_d = sum_k c(k) H_{d-k} in the marker grading
    H = [RatFunc(1)]
    ck = [truncate_in(substitute_powers(c, k), marker, order) for k in range(1, order + 1)]
    for d in range(1, order + 1):
        acc = RatFunc(0)
        for k in range(1, d + 1):
            acc = acc + ck[k - 1] * H[d - k]
        H.append(truncate_in(acc / d, marker, order))
    out = RatFunc(0)
    for h in H:
        out = out + h
    return truncate_in(out, marker, order)


def truncate_in(x: RatFunc, marker: str, order: int) -> RatFunc:
    """Drop numerator terms of degree above ``order`` in ``marker`` (denominator must not involve it)."""
    den = x.denominator_laurent()
    k = VAR_INDEX[marker]
    if any(e[k] for e in den.terms):
        raise InvalidInput(f"denominator depends on {marker}")
    num = x.numerator_laurent().filter(lambda e: e[k] <= order)
    return RatFunc.from_pair(num, den)


def omega_translation_commute_check(A: PlethysmMatrix, B: PlethysmMatrix, j: int, k: int,
                                    cap: int, z: str = "T", w: str = "p") -> bool:
    """Check ``T[A X^(j) z] Omega[B X^(k) w] = Omega[(A^T B)_{jk} z w] Omega[B X^(k) w] T[A X^(j) z]``.

    ``z`` and ``w`` are formal markers; both sides are compared on every
    power-sum monomial of degree at most ``cap``, keeping terms of
    ``w``-degree at most ``cap``.
    """
    r = A.r
    backend = ExactBackend()
    zv, wv = RatFunc.var(z), RatFunc.var(w)
    c = (A.transpose() * B)[(j, k)] * zv * wv
    scal = scalar_omega(c, cap, w)
    for deg in range(cap + 1):
        big = cap + deg
        for idx in _powersum_indices(r, deg):
            f = ColoredSymFunc.from_index(r, big, backend, idx)
            lhs = translation_apply(A, j, zv, omega_multiply(B, k, wv, f, cap=big))
            om = omega_series(r, cap, backend, _column_data(B, k, wv)).with_cap(big)
            rhs = om * translation_apply(A, j, zv, f)
            rhs = rhs.scale(scal)
            lhs = lhs.map_coefficients(lambda x: truncate_in(x, w, cap))
            rhs = rhs.map_coefficients(lambda x: truncate_in(x, w, cap))
            if not lhs.equals(rhs):
                return False
    return True


@lru_cache(maxsize=None)
def _powersum_indices(r: int, n: int) -> tuple:
    return multipartitions(n, r)


def powersum_indices(r: int, n: int) -> tuple:
    """All colored power-sum indices of degree ``n`` (same shapes as the multi-Schur basis)."""
    return _powersum_indices(r, n)
