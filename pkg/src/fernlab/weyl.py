"""Permutations, descents, coset representatives and block bookkeeping.

Permutations are tuples in 1-based one-line notation. A block shape is a
composition r = (r_1, ..., r_s) of n; reordering the blocks by u means the
block in position j is the original block u^{-1}(j).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .errors import BadSubset, SizeGuard, ValidationError

Permutation = tuple

ENUM_LIMIT = 9
REPORT_LIMIT = 8


def identity(m: int) -> Permutation:
    return tuple(range(1, m + 1))


def longest(m: int) -> Permutation:
    return tuple(range(m, 0, -1))


def validate_perm(u: Sequence[int], m: int | None = None) -> Permutation:
    u = tuple(int(x) for x in u)
    if sorted(u) != list(range(1, len(u) + 1)):
        raise ValidationError(f"not a permutation: {list(u)}")
    if m is not None and len(u) != m:
        raise ValidationError(f"permutation {list(u)} does not act on {m} letters")
    return u


def inverse(u: Sequence[int]) -> Permutation:
    inv = [0] * len(u)
    for i, ui in enumerate(u, start=1):
        inv[ui - 1] = i
    return tuple(inv)


def compose(u: Sequence[int], v: Sequence[int]) -> Permutation:
    """(u v)(i) = u(v(i))."""
    return tuple(u[v[i] - 1] for i in range(len(v)))


def length(u: Sequence[int]) -> int:
    return sum(1 for a in range(len(u)) for b in range(a + 1, len(u)) if u[a] > u[b])


def enumerate_weyl(s: int) -> list[Permutation]:
    if s > ENUM_LIMIT:
        raise SizeGuard(f"refusing to enumerate S_{s} (limit {ENUM_LIMIT})")
    if s < 0:
        raise ValidationError("negative group rank")
    return list(permutations(range(1, s + 1)))


def descent_right(u: Sequence[int]) -> frozenset:
    return frozenset(i for i in range(1, len(u)) if u[i - 1] > u[i])


def _check_subset(sub: Iterable[int], m: int) -> frozenset:
    sub = frozenset(int(x) for x in sub)
    if any(not 1 <= x <= m - 1 for x in sub):
        raise BadSubset(f"{sorted(sub)} is not a subset of {{1..{m - 1}}}")
    return sub


def min_coset_reps(m: int, I: Iterable[int], J: Iterable[int]) -> list[Permutation]:
    """Minimal-length representatives of W_I \\ W_m / W_J, lexicographic order."""
    I = _check_subset(I, m)
    J = _check_subset(J, m)
    return [u for u in enumerate_weyl(m)
            if not (descent_right(inverse(u)) & I) and not (descent_right(u) & J)]


@dataclass(frozen=True)
class BlockShape:
    r: tuple
    i0_prime: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        if not r or any(x < 1 for x in r):
            raise ValidationError(f"block sizes must be positive: {list(r)}")
        object.__setattr__(self, "r", r)
        i0 = frozenset(int(x) for x in self.i0_prime)
        if any(not 1 <= x <= len(r) - 1 for x in i0):
            raise BadSubset(f"i0prime {sorted(i0)} is not inside {{1..{len(r) - 1}}}")
        object.__setattr__(self, "i0_prime", i0)

    @staticmethod
    def build(n: int, r: Sequence[int], i0_prime: Iterable[int] = ()) -> "BlockShape":
        shape = BlockShape(tuple(r), frozenset(i0_prime))
        if shape.n != n:
            raise ValidationError(f"block sizes {list(r)} do not sum to n={n}")
        return shape

    @property
    def n(self) -> int:
        return sum(self.r)

    @property
    def s(self) -> int:
        return len(self.r)

    def block_ranges(self) -> list[range]:
        """0-based index ranges of the original blocks."""
        out, start = [], 0
        for size in self.r:
            out.append(range(start, start + size))
            start += size
        return out

    def block_of(self, index: int) -> int:
        """1-based block label of a 1-based coordinate index."""
        acc = 0
        for b, size in enumerate(self.r, start=1):
            acc += size
            if index <= acc:
                return b
        raise ValidationError(f"index {index} outside 1..{self.n}")

    @property
    def s0(self) -> frozenset:
        return block_data(self, identity(self.s))[1]


def block_data(shape: BlockShape, u: Sequence[int]) -> tuple[tuple, frozenset]:
    u = validate_perm(u, shape.s)
    uinv = inverse(u)
    cuts, acc = [], 0
    for j in range(shape.s):
        acc += shape.r[uinv[j] - 1]
        cuts.append(acc)
    s0 = frozenset(range(1, shape.n)) - frozenset(cuts[:-1])
    return tuple(cuts), s0


def block_lift(shape: BlockShape, u: Sequence[int]) -> Permutation:
    """Concatenate the original index blocks in the order u^{-1}(1), ..., u^{-1}(s)."""
    u = validate_perm(u, shape.s)
    ranges = shape.block_ranges()
    out = []
    for b in inverse(u):
        out.extend(k + 1 for k in ranges[b - 1])
    return tuple(out)


def refinement_blocks(shape: BlockShape, u: Sequence[int]) -> list[int]:
    """Original block labels in refinement order."""
    return list(inverse(validate_perm(u, shape.s)))


@dataclass(frozen=True)
class IndexEntry:
    u: Permutation
    level: int
    prefix: frozenset
    complement: frozenset


@dataclass(frozen=True)
class IndexReport:
    shape: BlockShape
    delta_prime: tuple
    entries: dict  # i -> tuple[IndexEntry, ...]

    def common_prefix(self, i: int) -> frozenset:
        sets = [e.prefix for e in self.entries[i]]
        return frozenset.intersection(*sets) if sets else frozenset()

    def to_json(self) -> dict:
        return {
            "delta_prime": list(self.delta_prime),
            "entries": {str(i): [{"u": list(e.u), "level": e.level,
                                  "prefix": sorted(e.prefix), "complement": sorted(e.complement)}
                                 for e in es] for i, es in self.entries.items()},
        }


def index_report(shape: BlockShape) -> IndexReport:
    if shape.s > REPORT_LIMIT:
        raise SizeGuard(f"index report needs s <= {REPORT_LIMIT}, got {shape.s}")
    entries: dict[int, list] = {}
    everything = frozenset(range(1, shape.s + 1))
    for u in enumerate_weyl(shape.s):
        cuts, _ = block_data(shape, u)
        uinv = inverse(u)
        for level, t in enumerate(cuts[:-1], start=1):
            prefix = frozenset(uinv[:level])
            entries.setdefault(t, []).append(IndexEntry(u, level, prefix, everything - prefix))
    delta_prime = tuple(sorted(entries))
    return IndexReport(shape, delta_prime, {i: tuple(entries[i]) for i in delta_prime})


def r_plus(u: Sequence[int], i0_prime: Iterable[int]) -> tuple[list, list]:
    """R_u^+ and the sub-list of pairs whose lower original block is non-generic."""
    uinv = inverse(u)
    i0 = set(i0_prime)
    s = len(u)
    full = [(i, j) for i in range(1, s + 1) for j in range(i + 1, s + 1)
            if uinv[j - 1] == uinv[i - 1] + 1]
    return full, [(i, j) for (i, j) in full if uinv[i - 1] in i0]
