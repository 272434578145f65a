"""Complete flags tagged with Hodge-Tate weights.

A flag comes from an invertible g: step k is spanned by the first k columns
of g, so Ad_g(b) is its stabilizer, g = w_0 is in general position with the
coordinate flags and g = 1 is the most special one.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exactlinalg as xl
from . import weyl
from .errors import (BadDegree, CriticalInput, CriticalPosition, DegenerateDenominator,
                     FlatteningCollapse, Singular, ValidationError)
from .exactlinalg import Matrix, Subspace


@dataclass(frozen=True)
class Weights:
    h: tuple

    def __post_init__(self):
        h = tuple(int(x) for x in self.h)
        if any(a <= b for a, b in zip(h, h[1:])):
            raise ValidationError(f"weights must be strictly decreasing: {list(h)}")
        object.__setattr__(self, "h", h)

    @staticmethod
    def default(n: int) -> "Weights":
        return Weights(tuple(range(n - 1, -1, -1)))


@dataclass(frozen=True)
class HodgeFlag:
    n: int
    weights: Weights
    g: Matrix
    steps: tuple  # Subspace for k = 1..n

    def step(self, k: int) -> Subspace:
        return self.steps[k - 1]

    def to_json(self) -> dict:
        return {"g": self.g.to_json(), "weights": list(self.weights.h)}


def flag_from_matrix(g: Matrix, w: Weights | None = None) -> HodgeFlag:
    n = g.rows
    if g.cols != n or not g.is_invertible():
        raise Singular("flag generator must be an invertible square matrix")
    w = w or Weights.default(n)
    if len(w.h) != n:
        raise ValidationError("weights length differs from n")
    cols = [g.column(k) for k in range(n)]
    steps = tuple(xl.span(cols[:k], n) for k in range(1, n + 1))
    return HodgeFlag(n, w, g, steps)


def _rank_profile(rows: list) -> list[int]:
    """r[k] = rank of the first k columns of the row block, k = 0..ncols."""
    if not rows:
        return None
    ncols = len(rows[0])
    _, piv = xl._rref_rows(rows)
    prof, c = [0], 0
    for k in range(1, ncols + 1):
        if c < len(piv) and piv[c] == k - 1:
            c += 1
        prof.append(c)
    return prof


def rank_matrix(shape: weyl.BlockShape, u: Sequence[int], flag: HodgeFlag,
                cache: dict | None = None) -> list[list[int]]:
    """d[i][k] = dim(P_i ∩ F^(k)) for the u-refinement flag P_i, i = 0..s, k = 0..n.

    The column rank profile of a row block does not depend on row order, so
    profiles are memoized by row set when a cache dict is supplied.
    """
    n = shape.n
    lift = weyl.block_lift(shape, u)
    cuts, _ = weyl.block_data(shape, u)
    cache = {} if cache is None else cache
    out = [[0] * (n + 1)]
    for t in cuts:
        key = frozenset(lift[t:])  # original rows outside P_i
        if not key:
            out.append(list(range(n + 1)))
            continue
        if key not in cache:
            cache[key] = _rank_profile([list(flag.g.row(r - 1)) for r in sorted(key)])
        prof = cache[key]
        out.append([k - prof[k] for k in range(n + 1)])
    return out


def _position_from_ranks(d: list, cuts: Sequence[int], n: int) -> tuple:
    bounds = [0] + list(cuts)
    levels = []
    for m in range(1, n + 1):
        levels.append(next(i for i in range(1, len(bounds)) if d[i][m] - d[i][m - 1] == 1))
    w = [0] * n
    for lvl in range(1, len(bounds)):
        positions = [m for m in range(n) if levels[m] == lvl]
        for m, v in zip(positions, range(bounds[lvl], bounds[lvl - 1], -1)):
            w[m] = v
    return tuple(w)


def relative_position(shape: weyl.BlockShape, u: Sequence[int], flag: HodgeFlag,
                      cache: dict | None = None) -> tuple:
    """Maximal-length representative of the relative position of the u-refinement flag."""
    cuts, _ = weyl.block_data(shape, u)
    return _position_from_ranks(rank_matrix(shape, u, flag, cache), cuts, shape.n)


def is_noncritical(shape: weyl.BlockShape, flag: HodgeFlag) -> bool:
    w0 = weyl.longest(shape.n)
    cache: dict = {}
    return all(relative_position(shape, u, flag, cache) == w0 for u in weyl.enumerate_weyl(shape.s))


def random_unit_upper(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> Matrix:
    data = [[0] * n for _ in range(n)]
    for a in range(n):
        data[a][a] = 1
        for b in range(a + 1, n):
            data[a][b] = rng.randint(lo, hi)
    return Matrix.from_rows(data)


def sample_generic_g(shape: weyl.BlockShape, rng: random.Random, max_tries: int = 100) -> tuple[Matrix, Matrix]:
    """g = b w_0 with b unit upper-triangular, resampled until non-critical for every u."""
    n = shape.n
    w0 = Matrix.permutation(weyl.longest(n))
    for _ in range(max_tries):
        b = random_unit_upper(n, rng)
        g = b @ w0
        if is_noncritical(shape, flag_from_matrix(g)):
            return g, b
    raise CriticalInput(f"no non-critical g found in {max_tries} draws")


# --- lines ----------------------------------------------------------------

@dataclass(frozen=True)
class LineDecomposition:
    lines: tuple  # lines[l-1] spans L_l, e_l-coordinate normalized to 1

    def line(self, l: int) -> tuple:
        return self.lines[l - 1]

    def to_json(self) -> list:
        return [[xl.fmt_rational(x) for x in v] for v in self.lines]


def extract_lines(flag: HodgeFlag) -> LineDecomposition:
    n = flag.n
    out = []
    for l in range(1, n + 1):
        meet = xl.vanishing_subspace(flag.step(n - l + 1), list(range(l, n)))
        if meet.dim != 1:
            raise CriticalPosition(f"F^({n - l + 1}) meets span(e_1..e_{l}) in dimension {meet.dim}")
        v = meet.basis[0]
        lead = v[l - 1]
        if lead == 0:
            raise CriticalPosition(f"line {l} has zero e_{l}-coordinate")
        out.append(tuple(x / lead for x in v))
    return LineDecomposition(tuple(out))


def reconstruct(lines: LineDecomposition) -> tuple:
    n = len(lines.lines)
    return tuple(xl.span(lines.lines[n - k:], n) for k in range(1, n + 1))


@dataclass(frozen=True)
class FlatLine:
    i: int
    vector: tuple
    deleted: tuple  # 1-based coordinates of D^(i)
    collapsed: bool

    def to_json(self) -> dict:
        return {"i": self.i, "vector": [xl.fmt_rational(x) for x in self.vector],
                "deleted_coords": list(self.deleted), "collapsed": self.collapsed}


def flatten_line(lines: LineDecomposition, i: int, shape: weyl.BlockShape,
                 report: weyl.IndexReport | None = None, strict: bool = False) -> FlatLine:
    """Delete from L_i the coordinates whose block lies in every prefix I_{u,i}, u ∈ 𝓘_i."""
    report = report or weyl.index_report(shape)
    if i not in report.entries:
        raise ValidationError(f"{i} is not a cut point of any refinement")
    common = report.common_prefix(i)
    deleted = tuple(k for k in range(1, shape.n + 1) if shape.block_of(k) in common)
    v = list(lines.line(i))
    for k in deleted:
        v[k - 1] = Fraction(0)
    collapsed = not any(v)
    if collapsed and strict:
        raise FlatteningCollapse(f"flattened line {i} vanishes")
    return FlatLine(i, tuple(v), deleted, collapsed)


# --- wedges ---------------------------------------------------------------

@dataclass(frozen=True)
class WedgeVector:
    n: int
    degree: int
    coeffs: tuple  # ((subset, Fraction), ...) over nonzero coordinates, lex order of subsets

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def to_json(self) -> list:
        return [{"subset": list(s), "coeff": xl.fmt_rational(c)} for s, c in self.coeffs]


def _sort_sign(subset: Sequence[int]) -> tuple[int, tuple]:
    idx = list(subset)
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


def wedge_of(vectors: Sequence[Sequence], n: int) -> WedgeVector:
    """v_1 ∧ ... ∧ v_k in coordinates e_S, S sorted ascending."""
    k = len(vectors)
    coeffs = []
    for S in combinations(range(1, n + 1), k):
        m = Matrix.from_rows([[v[s - 1] for v in vectors] for s in S]) if k else None
        c = xl.det(m) if k else Fraction(1)
        if c:
            coeffs.append((S, c))
    return WedgeVector(n, k, tuple(coeffs))


def coefficient(wedge: WedgeVector, subset: Sequence[int]) -> Fraction:
    sign, key = _sort_sign(subset)
    if not sign or len(key) != wedge.degree:
        return Fraction(0)
    return sign * wedge.as_dict().get(key, Fraction(0))


def wedge_with(wedge: WedgeVector, v: Sequence) -> WedgeVector:
    """wedge ∧ v."""
    acc: dict = {}
    for S, c in wedge.coeffs:
        for t, x in enumerate(v, start=1):
            if not x:
                continue
            sign, key = _sort_sign(S + (t,))
            if sign:
                acc[key] = acc.get(key, Fraction(0)) + sign * c * x
    items = tuple(sorted((k, c) for k, c in acc.items() if c))
    return WedgeVector(wedge.n, wedge.degree + 1, items)


def fil_max_wedge(flag: HodgeFlag, i: int) -> WedgeVector:
    """Generator of the line Λ^{n-i} F^(n-i), built from the canonical basis of that step."""
    n = flag.n
    if not 1 <= i <= n - 1:
        raise BadDegree(f"index {i} outside 1..{n - 1}")
    return wedge_of(flag.step(n - i).basis, n)


def flat_subsets(shape: weyl.BlockShape, i: int, report: weyl.IndexReport | None = None) -> list[tuple]:
    """Coordinate subsets e_{I^c_{u,i}} (all indices of the complementary blocks)."""
    report = report or weyl.index_report(shape)
    if i not in report.entries:
        raise ValidationError(f"{i} is not a cut point of any refinement")
    ranges = shape.block_ranges()
    out = set()
    for e in report.entries[i]:
        out.add(tuple(sorted(k + 1 for b in e.complement for k in ranges[b - 1])))
    return sorted(out)


def pr_flat(wedge: WedgeVector, shape: weyl.BlockShape, i: int) -> WedgeVector:
    keep = set(flat_subsets(shape, i))
    return WedgeVector(wedge.n, wedge.degree, tuple((S, c) for S, c in wedge.coeffs if S in keep))


# --- GL_4 worked example --------------------------------------------------

@dataclass(frozen=True)
class GL4Params:
    L12: Fraction
    L13: Fraction
    L14: Fraction
    L23: Fraction
    L34: Fraction

    @staticmethod
    def parse(obj: dict) -> "GL4Params":
        try:
            return GL4Params(*(xl.to_rational(obj[k]) for k in ("L12", "L13", "L14", "L23", "L34")))
        except KeyError as exc:
            raise ValidationError(f"gl4 parameters missing {exc.args[0]}") from None

    def to_json(self) -> dict:
        return {k: xl.fmt_rational(getattr(self, k)) for k in ("L12", "L13", "L14", "L23", "L34")}


def gl4_generators(p: GL4Params) -> tuple:
    """Generators added at steps 1, 2, 3, 4 (coordinates e_1..e_4)."""
    one, zero = Fraction(1), Fraction(0)
    return ((p.L14, one, p.L34, one),
            (p.L13, p.L23, one, zero),
            (p.L12, one, zero, zero),
            (one, zero, zero, zero))


def gl4_flag(p: GL4Params, w: Weights | None = None) -> HodgeFlag:
    cols = gl4_generators(p)
    g = Matrix.from_rows(cols).transpose()
    return flag_from_matrix(g, w or Weights.default(4))


REBASE_ORDER = (3, 4, 1, 2)


def _denominators(p: GL4Params) -> tuple[Fraction, Fraction]:
    d1 = p.L23 * p.L12 - p.L13
    d2 = p.L13 - p.L14 * p.L23
    if d1 == 0:
        raise DegenerateDenominator("L23*L12 - L13 vanishes")
    if d2 == 0:
        raise DegenerateDenominator("L13 - L14*L23 vanishes")
    return d1, d2


def gl4_displayed_lines(p: GL4Params) -> tuple:
    """The rebased line generators as displayed, in the basis (e3, e4, e1, e2).

    Entry l-1 spans the l-th line; each has leading coordinate 1 at position l.
    """
    d1, d2 = _denominators(p)
    c = ((1 - p.L23 * p.L34) * (p.L12 - p.L14) + p.L13 - p.L14 * p.L23) / d1
    one, zero = Fraction(1), Fraction(0)
    return ((one, zero, zero, zero),
            (-c, one, zero, zero),
            ((1 - p.L23 * p.L34) / d2, -p.L23 / d2, one, zero),
            (p.L34, one, p.L14, one))


def rebased_lines(p: GL4Params) -> LineDecomposition:
    """Lines of the GL_4 flag read in the basis (e3, e4, e1, e2)."""
    flag = gl4_flag(p)
    perm = Matrix.from_rows([[int(REBASE_ORDER[a] == b + 1) for b in range(4)] for a in range(4)])
    return extract_lines(flag_from_matrix(perm @ flag.g, flag.weights))


def gl4_rebased_check(p: GL4Params) -> bool:
    """Does the displayed rebased filtration match the flag coefficient for coefficient?"""
    shown = gl4_displayed_lines(p)
    return rebased_lines(p).lines == shown


def gl4_corrected_coefficient(p: GL4Params) -> Fraction:
    """e3-coordinate c of the second rebased line e4 + c*e3, computed in closed form."""
    d1, _ = _denominators(p)
    return (p.L12 * p.L23 * p.L34 - p.L12 - p.L13 * p.L34 + p.L14) / d1
