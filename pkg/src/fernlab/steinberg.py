"""Labels and counts for constituents of a principal series along a segment.

A constituent is labelled by a subset J of Δ_k = {1..k-1} (one bit per edge
of the path graph). Only the combinatorics is modelled.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import weyl
from .errors import BadSubset, SizeGuard, ValidationError

JACQUET_LIMIT = 8


@dataclass(frozen=True)
class Segment:
    k: int
    r: int = 1

    def __post_init__(self):
        if self.k < 1 or self.r < 1:
            raise ValidationError("segment length and block size must be positive")

    @property
    def m(self) -> int:
        return self.k * self.r


def _label(J, k: int) -> frozenset:
    J = frozenset(int(x) for x in J)
    if any(not 1 <= x <= k - 1 for x in J):
        raise BadSubset(f"{sorted(J)} is not inside {{1..{k - 1}}}")
    return J


def all_labels(k: int) -> list[frozenset]:
    base = range(1, k)
    return [frozenset(c) for size in range(k) for c in combinations(base, size)]


def socle_cosocle(seg: Segment, u) -> tuple[frozenset, frozenset]:
    u = weyl.validate_perm(u, seg.k)
    d = weyl.descent_right(u)
    return frozenset(range(1, seg.k)) - d, d


def jacquet_fiber(seg: Segment, J) -> list[tuple]:
    if seg.k > JACQUET_LIMIT:
        raise SizeGuard(f"fiber enumeration needs k <= {JACQUET_LIMIT}")
    J = _label(J, seg.k)
    full = frozenset(range(1, seg.k))
    return [u for u in weyl.enumerate_weyl(seg.k) if full - weyl.descent_right(u) == J]


def realize_descent(k: int, J) -> tuple:
    """Permutation with right descent set exactly J.

    Runs between consecutive non-descent positions are filled with
    decreasing values, runs themselves increasing:

    >>> realize_descent(4, {2})
    (1, 3, 2, 4)
    >>> realize_descent(3, set())
    (1, 2, 3)
    """
    J = _label(J, k)
    out, start = [], 1
    pos = 1
    while pos <= k:
        end = pos
        while end in J:
            end += 1
        length = end - pos + 1
        out.extend(range(start + length - 1, start - 1, -1))
        start += length
        pos = end + 1
    return tuple(out)


@dataclass(frozen=True)
class Interval:
    lower: frozenset
    upper: frozenset
    members: tuple

    def to_json(self) -> dict:
        return {"lower": sorted(self.lower), "upper": sorted(self.upper),
                "members": [sorted(m) for m in self.members]}

    def covers(self) -> list[tuple[frozenset, frozenset]]:
        """Covering pairs (A, B) with A ⊂ B, |B| = |A| + 1."""
        mem = set(self.members)
        return [(a, a | {x}) for a in self.members for x in sorted(self.upper_bound - a)
                if a | {x} in mem]

    @property
    def upper_bound(self) -> frozenset:
        return self.lower | self.upper


def q_interval(J0, J1, k: int | None = None) -> Interval:
    J0, J1 = frozenset(J0), frozenset(J1)
    if k is not None:
        J0, J1 = _label(J0, k), _label(J1, k)
    lo, hi = J0 & J1, J0 | J1
    free = sorted(hi - lo)
    members = tuple(sorted((lo | frozenset(c) for size in range(len(free) + 1)
                            for c in combinations(free, size)), key=lambda s: (len(s), sorted(s))))
    return Interval(J0, J1, members)


def interval_dot(iv: Interval, name: str = "interval") -> str:
    def node(s):
        return '"{' + ",".join(map(str, sorted(s))) + '}"'
    lines = [f"digraph {name} {{"]
    lines += [f"  {node(m)};" for m in iv.members]
    lines += [f"  {node(a)} -> {node(b)};" for a, b in iv.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def generic_constituent_count(s: int, d_L: int) -> int:
    if s < 1 or d_L < 1:
        raise ValidationError("s and d_L must be positive")
    return d_L * (2 ** s - 2)


def generic_count_by_cosets(s: int, d_L: int) -> int:
    """d_L times the number of minimal coset reps for each maximal parabolic."""
    full = set(range(1, s))
    return d_L * sum(len(weyl.min_coset_reps(s, full - {j}, ())) for j in range(1, s))


def check_inductions(pairs) -> list[str]:
    """Validate externally supplied (I^+, I^-) pairs: disjointness only."""
    problems = []
    for idx, (plus, minus) in enumerate(pairs):
        common = set(plus) & set(minus)
        if common:
            problems.append(f"pair {idx}: I+ and I- share {sorted(common)}")
    return problems
