"""Partitions, Maya diagrams and the r-core / r-quotient bijection.

Partitions are plain tuples of positive integers in weakly decreasing order.
Boxes are pairs ``(a, b)`` with ``a`` the column and ``b`` the row, both
counted from 0 (French convention, box ``(0, 0)`` in the corner).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .coeff import InvalidInput

Partition = tuple
Box = tuple


def make_partition(parts: Sequence[int]) -> Partition:
    """Validate and normalize a partition (trailing zeros are dropped)."""
    parts = [int(x) for x in parts]
    if any(x < 0 for x in parts):
        raise InvalidInput(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise InvalidInput(f"parts {parts} are not weakly decreasing")
    return tuple(x for x in parts if x > 0)


def size(lam: Partition) -> int:
    return sum(lam)


def transpose(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def boxes(lam: Partition) -> list[Box]:
    return [(a, b) for b, row in enumerate(lam) for a in range(row)]


def part(lam: Partition, i: int) -> int:
    """``lam_i`` with 1-based index; zero beyond the length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def arm_leg(lam: Partition, box: Box) -> tuple[int, int]:
    """Generalized arm and leg of ``box``; the box need not lie in ``lam``."""
    a, b = box
    arm = part(lam, b + 1) - a - 1
    leg = part(transpose(lam), a + 1) - b - 1
    return arm, leg


def mixed_hook(lam: Partition, mu: Partition, box: Box) -> int:
    """``a_lam(box) + l_mu(box) + 1``."""
    return arm_leg(lam, box)[0] + arm_leg(mu, box)[1] + 1


def hook_lengths(lam: Partition) -> dict[Box, int]:
    lt = transpose(lam)
    return {(a, b): lam[b] - a - 1 + lt[a] - b - 1 + 1 for a, b in boxes(lam)}


def content(box: Box) -> int:
    return box[1] - box[0]


def color(box: Box, r: int) -> int:
    return (box[1] - box[0]) % r


def contains(lam: Partition, mu: Partition) -> bool:
    """True when the diagram of ``mu`` lies inside that of ``lam``."""
    return len(mu) <= len(lam) and all(m <= l for m, l in zip(mu, lam))


def skew_boxes(lam: Partition, mu: Partition) -> list[Box]:
    if not contains(lam, mu):
        raise InvalidInput(f"{mu} is not contained in {lam}")
    return [(a, b) for b, row in enumerate(lam) for a in range(part(mu, b + 1), row)]


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """``lam <= mu`` in dominance order (partial sums of lam never exceed those of mu)."""
    if size(lam) != size(mu):
        raise InvalidInput(f"dominance compares partitions of equal size: {lam}, {mu}")
    s1 = s2 = 0
    for i in range(max(len(lam), len(mu))):
        s1 += part(lam, i + 1)
        s2 += part(mu, i + 1)
        if s1 > s2:
            return False
    return True


def addable_removable(lam: Partition, r: int, i: int) -> tuple[list[Box], list[Box]]:
    """Addable and removable boxes of color ``i`` (mod ``r``)."""
    if r < 1:
        raise InvalidInput("r must be positive")
    i %= r
    addable, removable = [], []
    for b in range(len(lam) + 1):
        a = part(lam, b + 1)
        if b == 0 or part(lam, b) > a:
            if color((a, b), r) == i:
                addable.append((a, b))
    for b in range(len(lam)):
        a = lam[b] - 1
        if part(lam, b + 2) <= a:
            if color((a, b), r) == i:
                removable.append((a, b))
    return addable, removable


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of ``n`` in reverse lexicographic order: (n), (n-1, 1), ..."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_up_to(n: int) -> Iterator[Partition]:
    for k in range(n + 1):
        yield from partitions_of(k)


@lru_cache(maxsize=None)
def multipartitions(n: int, r: int) -> tuple[tuple[Partition, ...], ...]:
    """All r-tuples of partitions of total size ``n``.

    Order: size vectors in reverse lexicographic order (all weight on color 0
    first), then partitions within each color in the order of
    :func:`partitions_of`.
    """
    if r < 1:
        raise InvalidInput("r must be positive")

    def compositions(total, k):
        if k == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, k - 1):
                yield (first,) + rest

    out = []
    for comp in compositions(n, r):
        def build(idx):
            if idx == r:
                yield ()
                return
            for lam in partitions_of(comp[idx]):
                for rest in build(idx + 1):
                    yield (lam,) + rest
        out.extend(build(0))
    return tuple(out)


# ---------------------------------------------------------------------------
# Maya diagrams


@dataclass(frozen=True)
class MayaDiagram:
    """Bead string on the integers, stored by its discrepancies from the vacuum.

    ``black_nonneg`` lists black beads at positions ``n >= 0`` and
    ``white_neg`` lists white beads at positions ``n < 0``.  Every other
    nonnegative position is white and every other negative one is black.
    """

    black_nonneg: frozenset
    white_neg: frozenset

    def __post_init__(self):
        if any(n < 0 for n in self.black_nonneg) or any(n >= 0 for n in self.white_neg):
            raise InvalidInput("inconsistent Maya diagram discrepancies")

    @property
    def charge(self) -> int:
        return len(self.black_nonneg) - len(self.white_neg)

    def is_black(self, n: int) -> bool:
        if n >= 0:
            return n in self.black_nonneg
        return n not in self.white_neg

    def window(self) -> tuple[int, int]:
        """A range ``[lo, hi)`` outside which the diagram agrees with the vacuum."""
        pts = list(self.black_nonneg) + list(self.white_neg)
        if not pts:
            return (0, 0)
        return (min(min(pts), 0), max(max(pts) + 1, 0))

    def black_positions(self, lo: int, hi: int) -> list[int]:
        return [n for n in range(lo, hi) if self.is_black(n)]

    @classmethod
    def from_predicate(cls, is_black, lo: int, hi: int) -> "MayaDiagram":
        """Diagram that is black below ``lo``, white from ``hi`` on, ``is_black`` in between."""
        black = frozenset(n for n in range(max(lo, 0), hi) if is_black(n))
        white = frozenset(n for n in range(lo, min(hi, 0)) if not is_black(n))
        if lo > 0:
            black = black | frozenset(range(0, lo))
        if hi < 0:
            white = white | frozenset(range(hi, 0))
        return cls(black, white)

    def shifted(self, c: int) -> "MayaDiagram":
        """The diagram ``n -> m(n + c)``; a diagram of charge c becomes charge 0."""
        lo, hi = self.window()
        return MayaDiagram.from_predicate(lambda n: self.is_black(n + c), lo - c, hi - c)

    @classmethod
    def vacuum(cls, charge: int = 0) -> "MayaDiagram":
        """Vacuum with central line moved left by ``charge`` (black exactly below ``charge``)."""
        if charge >= 0:
            return cls(frozenset(range(charge)), frozenset())
        return cls(frozenset(), frozenset(range(charge, 0)))

    def to_json(self) -> dict:
        return {"black_nonneg": sorted(self.black_nonneg), "white_neg": sorted(self.white_neg),
                "charge": self.charge}


def to_maya(lam: Partition) -> MayaDiagram:
    """Edge-sequence Maya diagram: white beads sit at ``i - lam_i - 1`` for i >= 1."""
    L = len(lam)
    whites = {i - lam[i - 1] - 1 for i in range(1, L + 1)}
    black_nonneg = frozenset(n for n in range(L) if n not in whites)
    white_neg = frozenset(w for w in whites if w < 0)
    return MayaDiagram(black_nonneg, white_neg)


def from_maya(m: MayaDiagram) -> Partition:
    if m.charge != 0:
        raise InvalidInput(f"Maya diagram has charge {m.charge}, expected 0")
    lo, hi = m.window()
    whites = [n for n in range(lo, hi) if not m.is_black(n)]
    parts = [i - w for i, w in enumerate(whites)]  # lam_{i+1} = i - w_{i+1}
    return make_partition([p for p in parts if p > 0])


# ---------------------------------------------------------------------------
# cores and quotients


@dataclass(frozen=True)
class CoreQuotient:
    core: Partition
    quotient: tuple
    r: int
    charges: tuple = ()

    def quot_size(self) -> int:
        return sum(size(x) for x in self.quotient)


def _subdiagram(m: MayaDiagram, r: int, i: int) -> MayaDiagram:
    black = frozenset((n - i) // r for n in m.black_nonneg if (n - i) % r == 0)
    white = frozenset((n - i) // r for n in m.white_neg if (n - i) % r == 0)
    return MayaDiagram(black, white)


def _assemble(subs: Sequence[MayaDiagram], r: int) -> MayaDiagram:
    black = frozenset(i + n * r for i, s in enumerate(subs) for n in s.black_nonneg)
    white = frozenset(i + n * r for i, s in enumerate(subs) for n in s.white_neg)
    return MayaDiagram(black, white)


@lru_cache(maxsize=None)
def core_quotient(lam: Partition, r: int) -> CoreQuotient:
    if r < 1:
        raise InvalidInput("r must be positive")
    lam = make_partition(lam)
    m = to_maya(lam)
    subs = [_subdiagram(m, r, i) for i in range(r)]
    charges = tuple(s.charge for s in subs)
    quot = tuple(from_maya(s.shifted(c)) for s, c in zip(subs, charges))
    core = from_maya(_assemble([MayaDiagram.vacuum(c) for c in charges], r))
    return CoreQuotient(core, quot, r, charges)


def core(lam: Partition, r: int) -> Partition:
    return core_quotient(lam, r).core


def quotient(lam: Partition, r: int) -> tuple:
    return core_quotient(lam, r).quotient


def quot_size(lam: Partition, r: int) -> int:
    return core_quotient(lam, r).quot_size()


def is_core(lam: Partition, r: int) -> bool:
    return all(h % r != 0 for h in hook_lengths(lam).values())


def core_charges(alpha: Partition, r: int) -> tuple:
    m = to_maya(alpha)
    return tuple(_subdiagram(m, r, i).charge for i in range(r))


@lru_cache(maxsize=None)
def from_core_quotient(alpha: Partition, quot: tuple, r: int) -> Partition:
    alpha = make_partition(alpha)
    if len(quot) != r:
        raise InvalidInput(f"quotient must have {r} components")
    if not is_core(alpha, r):
        raise InvalidInput(f"{alpha} is not an {r}-core")
    charges = core_charges(alpha, r)
    subs = [to_maya(make_partition(q)).shifted(-c) for q, c in zip(quot, charges)]
    return from_maya(_assemble(subs, r))


def hook_multiples_count(lam: Partition, r: int) -> int:
    if r < 1:
        raise InvalidInput("r must be positive")
    return sum(1 for h in hook_lengths(lam).values() if h % r == 0)


@lru_cache(maxsize=None)
def enumerate_with_core(alpha: Partition, r: int, n: int) -> tuple[Partition, ...]:
    """All partitions with r-core ``alpha`` and quotient size ``n``."""
    alpha = make_partition(alpha)
    if not is_core(alpha, r):
        raise InvalidInput(f"{alpha} is not an {r}-core")
    return tuple(from_core_quotient(alpha, quot, r) for quot in multipartitions(n, r))


@lru_cache(maxsize=None)
def cores_of_size(k: int, r: int) -> tuple[Partition, ...]:
    return tuple(lam for lam in partitions_of(k) if is_core(lam, r))


def contained_with_colors(mu: Partition, lam: Partition, k: int, r: int) -> bool:
    """``mu`` inside ``lam`` with ``lam / mu`` holding exactly ``k`` boxes of every color."""
    if not contains(lam, mu):
        return False
    counts = [0] * r
    for box in skew_boxes(lam, mu):
        counts[color(box, r)] += 1
    return all(c == k for c in counts)


def parse_partition(text: str) -> Partition:
    """Comma-separated weakly decreasing positive integers; empty string is the empty partition."""
    text = text.strip()
    if text in ("", "()", "[]", "0"):
        return ()
    try:
        parts = [int(x) for x in text.strip("()[]").split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"malformed partition literal {text!r}") from exc
    if any(x <= 0 for x in parts):
        raise InvalidInput(f"partition parts must be positive: {text!r}")
    return make_partition(parts)
