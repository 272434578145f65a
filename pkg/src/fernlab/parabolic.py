"""Standard subalgebras of gl_n, conjugation, envelopes and fern witnesses.

An n x n matrix is a vector of length n*n (row-major). Refinement u of a
block shape acts through the permutation matrix M_u with M_u e_k = e_{u#(k)},
so Ad_{M_u}(p) is the stabilizer of the flag spanned by the original blocks
u^{-1}(1), u^{-1}(1..2), ...
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactlinalg as xl
from . import weyl
from .errors import BadSubset, NoWitness, SizeGuard, Singular, ValidationError
from .exactlinalg import Matrix, Subspace

KINDS = ("borel", "opposite_borel", "parabolic", "levi", "nilradical",
         "levi_center", "levi_traceless", "parabolic_traceless", "tau")


@dataclass(frozen=True)
class LieSubspace:
    n: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, x: Matrix) -> bool:
        return self.space.contains(x.flatten())


def _labels(n: int, blocks) -> list[int]:
    """Block label (0-based) of each index, from a BlockShape, a composition or a subset S of Δ."""
    if blocks is None:
        return list(range(n))
    if isinstance(blocks, weyl.BlockShape):
        r = blocks.r
    elif isinstance(blocks, (frozenset, set)):
        if any(not 1 <= x <= n - 1 for x in blocks):
            raise BadSubset(f"{sorted(blocks)} is not a subset of {{1..{n - 1}}}")
        r, size = [], 1
        for k in range(1, n):
            if k in blocks:
                size += 1
            else:
                r.append(size)
                size = 1
        r.append(size)
    else:
        r = tuple(blocks)
    if sum(r) != n or any(x < 1 for x in r):
        raise BadSubset(f"composition {list(r)} does not fit n={n}")
    out = []
    for b, size in enumerate(r):
        out.extend([b] * size)
    return out


def _coord(n: int, a: int, b: int) -> int:
    return a * n + b


def standard_subalgebra(n: int, kind: str, blocks=None) -> LieSubspace:
    """Coordinate subalgebra of gl_n; `blocks` is a BlockShape, composition or subset S_0 ⊆ Δ."""
    if kind not in KINDS:
        raise ValidationError(f"unknown subalgebra kind {kind!r}")
    N = n * n
    pairs = [(a, b) for a in range(n) for b in range(n)]
    if kind == "borel":
        return LieSubspace(n, xl.coordinate_span((_coord(n, a, b) for a, b in pairs if a <= b), N))
    if kind == "opposite_borel":
        return LieSubspace(n, xl.coordinate_span((_coord(n, a, b) for a, b in pairs if a >= b), N))
    lab = _labels(n, blocks)
    if kind == "parabolic":
        return LieSubspace(n, xl.coordinate_span((_coord(n, a, b) for a, b in pairs if lab[a] <= lab[b]), N))
    if kind == "levi":
        return LieSubspace(n, xl.coordinate_span((_coord(n, a, b) for a, b in pairs if lab[a] == lab[b]), N))
    nil = xl.coordinate_span((_coord(n, a, b) for a, b in pairs if lab[a] < lab[b]), N)
    if kind == "nilradical":
        return LieSubspace(n, nil)
    center = xl.span(_center_vectors(n, lab), N)
    if kind == "levi_center":
        return LieSubspace(n, center)
    if kind == "tau":
        return LieSubspace(n, xl.subspace_sum(center, nil))
    traceless = _traceless_levi(n, lab)
    if kind == "levi_traceless":
        return LieSubspace(n, traceless)
    return LieSubspace(n, xl.subspace_sum(traceless, nil))  # parabolic_traceless


def _center_vectors(n: int, lab: list[int]) -> list[list[int]]:
    vecs = []
    for b in sorted(set(lab)):
        v = [0] * (n * n)
        for k in range(n):
            if lab[k] == b:
                v[_coord(n, k, k)] = 1
        vecs.append(v)
    return vecs


def _traceless_levi(n: int, lab: list[int]) -> Subspace:
    vecs = []
    for a in range(n):
        for b in range(n):
            if lab[a] == lab[b] and a != b:
                v = [0] * (n * n)
                v[_coord(n, a, b)] = 1
                vecs.append(v)
    for k in range(n - 1):
        if lab[k] == lab[k + 1]:
            v = [0] * (n * n)
            v[_coord(n, k, k)] = 1
            v[_coord(n, k + 1, k + 1)] = -1
            vecs.append(v)
    return xl.span(vecs, n * n)


def _conj_vectors(g: Matrix, ginv: Matrix, basis: Iterable[Sequence]) -> list[list[Fraction]]:
    n = g.rows
    cols = [g.column(a) for a in range(n)]
    out = []
    for vec in basis:
        acc = [Fraction(0)] * (n * n)
        for idx, c in enumerate(vec):
            if not c:
                continue
            a, b = divmod(idx, n)
            # g E_ab g^{-1} = (column a of g) ⊗ (row b of g^{-1})
            col, row = cols[a], ginv.row(b)
            for p in range(n):
                gp = col[p]
                if gp:
                    f = c * gp
                    base = p * n
                    for q in range(n):
                        if row[q]:
                            acc[base + q] += f * row[q]
        out.append(acc)
    return out


def _inverse(g: Matrix) -> Matrix:
    try:
        return g.inverse()
    except Singular:
        raise Singular("conjugating matrix is singular") from None


def ad_conj(g: Matrix, V: LieSubspace) -> LieSubspace:
    if g.rows != V.n or g.cols != V.n:
        raise ValidationError("matrix size does not match the subalgebra")
    ginv = _inverse(g)
    return LieSubspace(V.n, xl.span(_conj_vectors(g, ginv, V.space.basis), V.n * V.n))


def refinement_matrix(shape: weyl.BlockShape, u: Sequence[int]) -> Matrix:
    return Matrix.permutation(weyl.block_lift(shape, u))


def refinement_subalgebra(shape: weyl.BlockShape, u: Sequence[int], kind: str) -> LieSubspace:
    """Ad_{M_u} of the standard `kind` subalgebra for the u-ordered composition."""
    cuts, s0u = weyl.block_data(shape, u)
    base = standard_subalgebra(shape.n, kind, frozenset(s0u))
    return ad_conj(refinement_matrix(shape, u), base)


def _lower_coords(n: int) -> list[int]:
    return [_coord(n, a, b) for a in range(n) for b in range(n) if a > b]


def _summand_in_frame(ginv: Matrix, shape: weyl.BlockShape, u, kind: str) -> Subspace:
    """Ad_{g^{-1}}(Ad_{M_u}(V) ∩ Ad_g(b)) = Ad_{g^{-1} M_u}(V) ∩ b."""
    n = shape.n
    _, s0u = weyl.block_data(shape, u)
    base = standard_subalgebra(n, kind, frozenset(s0u))
    A = ginv @ refinement_matrix(shape, u)
    Ainv = _inverse(A)
    moved = xl.span(_conj_vectors(A, Ainv, base.space.basis), n * n)
    return xl.vanishing_subspace(moved, _lower_coords(n))


def _kind_algebra(kind: str) -> str:
    if kind == "circ":
        return "tau"
    if kind == "full":
        return "parabolic"
    raise ValidationError(f"envelope kind must be 'circ' or 'full', got {kind!r}")


def envelope(g: Matrix, shape: weyl.BlockShape, kind: str = "circ") -> LieSubspace:
    """Σ_u Ad_{M_u}(V_u) ∩ Ad_g(b) with V = tau (circ) or the parabolic (full).

    Summands are folded in lexicographic order of u; the fold stops once the
    sum fills Ad_g(b), since nothing larger can be reached.
    """
    if shape.s > weyl.REPORT_LIMIT:
        raise SizeGuard(f"envelope needs s <= {weyl.REPORT_LIMIT}, got {shape.s}")
    if g.rows != shape.n or g.cols != shape.n:
        raise ValidationError("g does not match the shape size")
    alg = _kind_algebra(kind)
    n = shape.n
    ginv = _inverse(g)
    top = n * (n + 1) // 2
    acc = xl.zero_space(n * n)
    for u in weyl.enumerate_weyl(shape.s):
        acc = xl.subspace_sum(acc, _summand_in_frame(ginv, shape, u, alg))
        if acc.dim == top:
            break
    return LieSubspace(n, xl.span(_conj_vectors(g, ginv, acc.basis), n * n))


def envelope_dim(g: Matrix, shape: weyl.BlockShape, kind: str = "circ") -> int:
    return envelope(g, shape, kind).dim


@dataclass(frozen=True)
class SummandReport:
    u: tuple
    tau_dim: int
    p_dim: int

    def to_json(self) -> dict:
        return {"u": list(self.u), "tau_dim": self.tau_dim, "p_dim": self.p_dim}


def summand_dims(g: Matrix, shape: weyl.BlockShape) -> list[SummandReport]:
    if shape.s > weyl.REPORT_LIMIT:
        raise SizeGuard(f"summand report needs s <= {weyl.REPORT_LIMIT}, got {shape.s}")
    ginv = _inverse(g)
    return [SummandReport(u, _summand_in_frame(ginv, shape, u, "tau").dim,
                          _summand_in_frame(ginv, shape, u, "parabolic").dim)
            for u in weyl.enumerate_weyl(shape.s)]


def borel_image(g: Matrix) -> LieSubspace:
    return ad_conj(g, standard_subalgebra(g.rows, "borel"))


# --- fern witnesses -------------------------------------------------------

@dataclass(frozen=True)
class FernWitness:
    i: int
    j: int
    u: tuple
    coefficients: tuple  # x_{i,l} for l = j+1..i
    matrix: Matrix
    method: str  # "projector" or "solved"

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "u": list(self.u), "method": self.method,
                "x": [xl.fmt_rational(x) for x in self.coefficients], "matrix": self.matrix.to_json()}


def _is_unit_upper(b: Matrix) -> bool:
    return all(b[p, q] == 0 for p in range(b.rows) for q in range(p)) and all(b[p, p] != 0 for p in range(b.rows))


def _row_matrix(n: int, i: int, row: Sequence[Fraction]) -> Matrix:
    data = [[Fraction(0)] * n for _ in range(n)]
    data[i - 1] = list(row)
    return Matrix.from_rows(data)


def _projector_row(b: Matrix, i: int, j: int) -> list[Fraction]:
    """Row of pi: coefficient of e_j when expanding in the mixed basis."""
    n = b.rows
    binv = b.inverse()
    cols = []
    for k in range(1, n + 1):
        if k == j or k > i:
            cols.append([Fraction(int(t == k)) for t in range(1, n + 1)])
        else:
            cols.append(list(binv.column(k - 1)))
    B = Matrix.from_rows(cols).transpose()
    try:
        Binv = B.inverse()
    except Singular:
        raise NoWitness(f"mixed basis for ({i},{j}) is degenerate") from None
    return list(Binv.row(j - 1))


def _outside_parabolic(n: int, lab: list[int]) -> list[int]:
    return [_coord(n, a, c) for a in range(n) for c in range(n) if lab[a] > lab[c]]


def _transposition_u(shape: weyl.BlockShape, i: int, j: int) -> tuple:
    bi, bj = shape.block_of(i), shape.block_of(j)
    u = list(weyl.identity(shape.s))
    u[bi - 1], u[bj - 1] = u[bj - 1], u[bi - 1]
    return tuple(u)


def fern_witness(i: int, j: int, b: Matrix, shape: weyl.BlockShape) -> FernWitness:
    """a^{i,j} = e^{i,j} + Σ_{l=j+1..i} x_l e^{i,l} inside Ad_{b^{-1} M_u}(p_{S_0^u})."""
    n = shape.n
    if not 1 <= j < i <= n:
        raise ValidationError(f"need 1 <= j < i <= n, got i={i}, j={j}")
    if b.rows != n or b.cols != n or not _is_unit_upper(b):
        raise NoWitness("b must be an invertible upper-triangular matrix of size n")
    binv = b.inverse()
    first = _transposition_u(shape, i, j)
    order = [first] + [u for u in weyl.enumerate_weyl(shape.s) if u != first]

    def frame(u):
        M = refinement_matrix(shape, u)
        C = M.inverse() @ b  # Ad_C(a) ∈ p_{S_0^u} <=> a ∈ Ad_{b^{-1} M}(p)
        _, s0u = weyl.block_data(shape, u)
        return C, C.inverse(), _outside_parabolic(n, _labels(n, frozenset(s0u)))

    row = _projector_row(b, i, j)
    C, Cinv, bad = frame(first)
    a = _row_matrix(n, i, row)
    conj = (C @ a @ Cinv).flatten()
    if all(conj[k] == 0 for k in bad):
        return FernWitness(i, j, first, tuple(row[j:i]), a, "projector")

    # fall back: solve the linear conditions on x for each u
    for u in order:
        C, Cinv, bad = frame(u)
        terms = [Matrix.elementary(n, i, l) for l in range(j, i + 1)]
        imgs = [(C @ t @ Cinv).flatten() for t in terms]
        # Σ_l x_l imgs[l][k] = -imgs[0][k] for k in bad
        rows = [[imgs[t][k] for t in range(1, len(imgs))] + [-imgs[0][k]] for k in bad]
        nvar = len(imgs) - 1
        sol = _solve(rows, nvar)
        if sol is None:
            continue
        coeffs = [Fraction(0)] * n
        coeffs[j - 1] = Fraction(1)
        for t, x in enumerate(sol):
            coeffs[j + t] = x
        return FernWitness(i, j, u, tuple(sol), _row_matrix(n, i, coeffs), "solved")
    raise NoWitness(f"no refinement admits a witness for ({i},{j})")


def _solve(rows: list, nvar: int):
    """One solution (free variables 0) of an augmented system, or None."""
    if not rows:
        return [Fraction(0)] * nvar
    red, piv = xl._rref_rows(rows)
    if nvar in piv:
        return None
    sol = [Fraction(0)] * nvar
    for r, p in zip(red, piv):
        sol[p] = r[nvar]
    return sol


@dataclass(frozen=True)
class FernReport:
    witnesses: tuple
    missing: tuple  # (i, j) pairs with no rank-one witness for any u
    witness_span_dim: int
    witnesses_in_envelope: bool
    envelope_equals_borel_image: bool
    envelope_dim: int
    target_dim: int

    @property
    def holds(self) -> bool:
        """The fern identity itself: the full envelope fills Ad_g(b)."""
        return self.envelope_equals_borel_image

    def to_json(self) -> dict:
        return {"holds": self.holds, "envelope_dim": self.envelope_dim, "target_dim": self.target_dim,
                "envelope_equals_borel_image": self.envelope_equals_borel_image,
                "witnesses_in_envelope": self.witnesses_in_envelope,
                "witness_span_dim": self.witness_span_dim,
                "missing_witnesses": [list(p) for p in self.missing],
                "witnesses": [w.to_json() for w in self.witnesses]}


def fern_check(b: Matrix, shape: weyl.BlockShape) -> FernReport:
    """Full envelope for g = b w_0 against Ad_g(b), plus every witness a^{i,j} that exists."""
    n = shape.n
    w0 = Matrix.permutation(weyl.longest(n))
    g = b @ w0
    env = envelope(g, shape, "full")
    target = borel_image(g)
    found, missing = [], []
    for i in range(2, n + 1):
        for j in range(1, i):
            try:
                found.append(fern_witness(i, j, b, shape))
            except NoWitness:
                missing.append((i, j))
    wspan = xl.span([w.matrix.flatten() for w in found], n * n)
    binv = b.inverse()
    inside = all(env.space.contains((b @ w.matrix @ binv).flatten()) for w in found)
    return FernReport(tuple(found), tuple(missing), wspan.dim, inside,
                      env.space == target.space, env.dim, target.dim)
