"""Closed-form dimension counts, each paired with a brute-force oracle where one exists."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import hodgeflag, parabolic, steinberg, weyl
from .errors import CriticalInput, ValidationError
from .exactlinalg import Matrix


@dataclass(frozen=True)
class Scenario:
    shape: weyl.BlockShape
    d_L: int = 1
    g: Matrix | None = None

    def __post_init__(self):
        if self.d_L < 1:
            raise ValidationError("d_L must be at least 1")
        if self.g is not None and (self.g.rows != self.shape.n or not self.g.is_invertible()):
            raise ValidationError("g must be an invertible n x n matrix")

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def s(self) -> int:
        return self.shape.s

    @property
    def i0(self) -> int:
        return len(self.shape.i0_prime)


@dataclass(frozen=True)
class Entry:
    value: int
    oracle: int | None
    anchor: str

    @property
    def agrees(self) -> bool:
        return self.oracle is None or self.oracle == self.value


@dataclass
class DimReport:
    entries: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def add(self, key: str, value, anchor: str, oracle=None) -> None:
        self.entries[key] = Entry(_as_int(value), None if oracle is None else _as_int(oracle), anchor)

    def __getitem__(self, key: str) -> int:
        return self.entries[key].value

    def disagreements(self) -> list[str]:
        return [k for k, e in self.entries.items() if not e.agrees]

    def to_json(self) -> dict:
        return {k: {"value": e.value, "oracle": e.oracle, "anchor": e.anchor}
                for k, e in self.entries.items()}


def _as_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ValidationError(f"dimension {x} is not an integer")
    return int(x)


NO_ORACLE = "no-oracle"


def parabolic_dim(r) -> int:
    n = sum(r)
    return n * n - nilradical_dim(r)


def nilradical_dim(r) -> int:
    n = sum(r)
    return (n * n - sum(x * x for x in r)) // 2


def _u_composition(shape: weyl.BlockShape, u) -> tuple:
    return tuple(shape.r[b - 1] for b in weyl.refinement_blocks(shape, u))


def ext_dims(scn: Scenario, u) -> DimReport:
    u = weyl.validate_perm(u, scn.s)
    n, s, d, i0 = scn.n, scn.s, scn.d_L, scn.i0
    ru = _u_composition(scn.shape, u)
    _, s0u = weyl.block_data(scn.shape, u)
    p_or = parabolic.standard_subalgebra(n, "parabolic", frozenset(s0u)).dim
    n_or = parabolic.standard_subalgebra(n, "nilradical", frozenset(s0u)).dim
    n0_or = parabolic.standard_subalgebra(n, "nilradical", scn.shape).dim
    rep = DimReport()
    rep.add("dim_p_u", parabolic_dim(ru), "oracle", p_or)
    rep.add("dim_n_u", nilradical_dim(ru), "oracle", n_or)
    rep.add("ext1_full", 1 + d * n * n, NO_ORACLE)
    rep.add("ext1_u", 1 + d * parabolic_dim(ru), NO_ORACLE + ":dim_p_u", 1 + d * p_or)
    rep.add("ext1_circ_u", 1 + d * (nilradical_dim(ru) + s), NO_ORACLE + ":dim_n_u", 1 + d * (n_or + s))
    rep.add("ext1_zero_u", 1 + d * (n * (n - 1) // 2 + s), NO_ORACLE)
    rep.add("ext1_g", 1 + d * n * (n - 1) // 2 + i0, NO_ORACLE)
    rep.add("ext1_circ_g", 1 + d * nilradical_dim(scn.shape.r) + i0, NO_ORACLE + ":dim_n", 1 + d * n0_or + i0)
    rep.add("im_nu", Fraction(d * n * (n + 1), 2) - i0, NO_ORACLE)
    rep.add("im_nu_sigma", Fraction(n * (n + 1), 2) - i0, NO_ORACLE)
    rep.add("ext1_sigma", 1 + n * n + Fraction((d - 1) * n * (n - 1), 2), NO_ORACLE)
    return rep


def hom_u_dim(scn: Scenario, u) -> int:
    u = weyl.validate_perm(u, scn.s)
    _, ng = weyl.r_plus(u, scn.shape.i0_prime)
    return scn.s * (1 + scn.d_L) - len(ng)


def t_count(t_prev: int, r_s: int, h: int) -> Fraction:
    """|T_h| in closed form."""
    if t_prev < 1 or r_s < 1:
        raise ValidationError("t_prev and r_s must be positive")
    a = max(0, r_s - h)
    return a * (t_prev - Fraction(r_s + h - 1, 2))


def t_count_brute(t_prev: int, r_s: int, h: int) -> int:
    return sum(1 for j in range(1, t_prev - h + 1)
               for i in range(max(1, j + h), min(t_prev, j + r_s - 1) + 1))


def kernel_report(scn: Scenario) -> DimReport:
    if scn.g is None:
        raise ValidationError("kernel report needs g")
    flag = hodgeflag.flag_from_matrix(scn.g)
    if not hodgeflag.is_noncritical(scn.shape, flag):
        raise CriticalInput("g is critical for some refinement")
    d_env = parabolic.envelope(scn.g, scn.shape, "circ").dim
    s, d, i0 = scn.s, scn.d_L, scn.i0
    rep = DimReport()
    rep.add("d_env", d_env, "oracle")
    rep.add("ker_dim", 2 ** s - 1 - d_env, "oracle:d_env")
    rep.add("im_nu_circ", d * d_env - i0, "oracle:d_env")
    if not scn.shape.s0:
        n = scn.n
        rep.add("ker_dim_formula", 2 ** n - n * (n + 1) // 2 - 1, "closed-form", 2 ** s - 1 - d_env)
    if 2 ** s - 1 - d_env < 0:
        rep.warnings.append(f"envelope dimension {d_env} exceeds 2^s - 1 = {2 ** s - 1}")
    return rep


def rep_side_dims(scn: Scenario) -> DimReport:
    s, d, n = scn.s, scn.d_L, scn.n
    rs = scn.shape.r[-1]
    rep = DimReport()
    rep.add("lalg_line", s + d, NO_ORACLE)
    rep.add("lalg_line_sigma", s + 1, NO_ORACLE)
    rep.add("ext_pi1", s + (2 ** s - 1) * d, NO_ORACLE)
    oracle = steinberg.generic_count_by_cosets(s, d) if s <= weyl.REPORT_LIMIT else None
    rep.add("generic_constituents", steinberg.generic_constituent_count(s, d), "oracle:cosets", oracle)
    rep.add("ext_iota", 1 + ((n - rs) * (n - 2 * rs) + Fraction(rs * rs - rs, 2)) * d, NO_ORACLE)
    rep.add("t0", t_count(max(n - rs, 1), rs, 0) if n > rs else 0, "oracle:brute",
            t_count_brute(n - rs, rs, 0) if n > rs else 0)
    return rep
