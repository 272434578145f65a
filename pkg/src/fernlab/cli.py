"""Command-line front end: `fernlab <command> --scenario file.json`."""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Any

from . import dimcalc, exactlinalg as xl, hodgeflag, parabolic, steinberg, weyl
from .errors import FernlabError, ParseError, ValidationError
from .exactlinalg import Matrix

COMMANDS = ("dims", "envelope", "fern", "lines", "flatten", "steinberg", "gl4")
EXIT_USAGE, EXIT_VALIDATION, EXIT_COMPUTATION = 1, 2, 3


@dataclass
class ScenarioFile:
    n: int | None = None
    r: list | None = None
    i0prime: list = field(default_factory=list)
    dL: int = 1
    g: Matrix | None = None
    weights: list | None = None
    gl4: dict | None = None
    seed: int | None = None
    k: int | None = None
    J0: list | None = None
    J1: list | None = None

    @staticmethod
    def load(path: str) -> "ScenarioFile":
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ParseError(f"cannot read scenario: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"scenario is not valid JSON: {exc}") from None
        return ScenarioFile.from_dict(raw)

    @staticmethod
    def from_dict(raw: Any) -> "ScenarioFile":
        if not isinstance(raw, dict):
            raise ParseError("scenario must be a JSON object")
        known = {"n", "r", "i0prime", "dL", "g", "weights", "gl4", "seed", "k", "J0", "J1"}
        extra = set(raw) - known
        if extra:
            raise ValidationError(f"unknown scenario fields: {sorted(extra)}")
        sc = ScenarioFile()
        for key in ("n", "dL", "seed", "k"):
            if key in raw:
                val = raw[key]
                if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                    raise ValidationError(f"{key} must be a non-negative integer")
                setattr(sc, key, val)
        for key in ("r", "i0prime", "weights", "J0", "J1"):
            if key in raw:
                val = raw[key]
                if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
                    raise ValidationError(f"{key} must be a list of integers")
                setattr(sc, key, val)
        if "g" in raw:
            try:
                sc.g = Matrix.from_rows(raw["g"])
            except (TypeError, ValueError) as exc:
                raise ParseError(f"bad matrix g: {exc}") from None
        if "gl4" in raw:
            if not isinstance(raw["gl4"], dict):
                raise ValidationError("gl4 must be an object of rationals")
            sc.gl4 = raw["gl4"]
        return sc

    def shape(self) -> weyl.BlockShape:
        if self.r is None:
            raise ValidationError("scenario needs a composition r")
        n = self.n if self.n is not None else sum(self.r)
        return weyl.BlockShape.build(n, self.r, self.i0prime)

    def weights_for(self, n: int) -> hodgeflag.Weights:
        if self.weights is None:
            return hodgeflag.Weights.default(n)
        if len(self.weights) != n:
            raise ValidationError("weights length differs from n")
        return hodgeflag.Weights(tuple(self.weights))

    def echo(self) -> dict:
        out = {}
        for key in ("n", "r", "i0prime", "dL", "weights", "gl4", "seed", "k", "J0", "J1"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.g is not None:
            out["g"] = self.g.to_json()
        return out


def _num(value, anchor: str) -> dict:
    return {"value": value, "anchor": anchor}


def _sampled(sc: ScenarioFile, shape: weyl.BlockShape, rng: random.Random, count: int) -> list:
    """(g, b) pairs: the scenario's own g if given, else generic samples."""
    if sc.g is not None:
        if sc.g.rows != shape.n or not sc.g.is_invertible():
            raise ValidationError("g must be an invertible n x n matrix")
        return [(sc.g, None)]
    return [hodgeflag.sample_generic_g(shape, rng) for _ in range(count)]


def cmd_dims(sc, rng, samples, warnings):
    shape = sc.shape()
    scn = dimcalc.Scenario(shape, sc.dL)
    ident, w0s = weyl.identity(shape.s), weyl.longest(shape.s)
    out = {"ext": dimcalc.ext_dims(scn, ident).to_json(),
           "rep_side": dimcalc.rep_side_dims(scn).to_json(),
           "hom_u": {"identity": _num(dimcalc.hom_u_dim(scn, ident), "oracle:r_plus"),
                     "longest": _num(dimcalc.hom_u_dim(scn, w0s), "oracle:r_plus")}}
    kernels = []
    for g, _ in _sampled(sc, shape, rng, samples):
        rep = dimcalc.kernel_report(dimcalc.Scenario(shape, sc.dL, g))
        warnings.extend(rep.warnings)
        kernels.append({"g": g.to_json(), "report": rep.to_json()})
    out["kernel"] = kernels
    return out


def cmd_envelope(sc, rng, samples, warnings):
    shape = sc.shape()
    runs = []
    for g, _ in _sampled(sc, shape, rng, samples):
        circ = parabolic.envelope(g, shape, "circ")
        full = parabolic.envelope(g, shape, "full")
        target = parabolic.borel_image(g)
        runs.append({
            "g": g.to_json(),
            "noncritical": hodgeflag.is_noncritical(shape, hodgeflag.flag_from_matrix(g)),
            "circ_dim": _num(circ.dim, "oracle"),
            "full_dim": _num(full.dim, "oracle"),
            "borel_image_dim": _num(target.dim, "oracle"),
            "full_equals_borel_image": full.space == target.space,
            "summands": [r.to_json() for r in parabolic.summand_dims(g, shape)],
        })
    return {"samples": runs}


def _b_from_g(g: Matrix) -> Matrix:
    n = g.rows
    b = g @ Matrix.permutation(weyl.longest(n)).inverse()
    if any(b[p, q] != 0 for p in range(n) for q in range(p)) or any(b[p, p] != 1 for p in range(n)):
        raise ValidationError("fern needs g = b w_0 with b unit upper-triangular")
    return b


def cmd_fern(sc, rng, samples, warnings):
    shape = sc.shape()
    runs = []
    for g, b in _sampled(sc, shape, rng, samples):
        b = b if b is not None else _b_from_g(g)
        rep = parabolic.fern_check(b, shape)
        if rep.missing:
            warnings.append(f"no rank-one witness for pairs {[list(p) for p in rep.missing]}")
        runs.append({"b": b.to_json(), "check": rep.to_json()})
    return {"samples": runs}


def _flag(sc, rng):
    if sc.gl4 is not None:
        return None, hodgeflag.gl4_flag(hodgeflag.GL4Params.parse(sc.gl4), sc.weights_for(4))
    shape = sc.shape()
    g, _ = _sampled(sc, shape, rng, 1)[0]
    return shape, hodgeflag.flag_from_matrix(g, sc.weights_for(shape.n))


def cmd_lines(sc, rng, samples, warnings):
    shape, flag = _flag(sc, rng)
    out = {"flag": flag.to_json()}
    if shape is not None:
        out["noncritical"] = hodgeflag.is_noncritical(shape, flag)
    out["lines"] = hodgeflag.extract_lines(flag).to_json()
    return out


def cmd_flatten(sc, rng, samples, warnings):
    shape = sc.shape()
    _, flag = _flag(sc, rng)
    report = weyl.index_report(shape)
    lines = hodgeflag.extract_lines(flag)
    flats = []
    for i in report.delta_prime:
        fl = hodgeflag.flatten_line(lines, i, shape, report)
        if fl.collapsed:
            warnings.append(f"flattened line {i} collapsed to zero")
        flats.append(fl.to_json())
    return {"flag": flag.to_json(), "index_report": report.to_json(), "flat_lines": flats}


def cmd_steinberg(sc, rng, samples, warnings, dot_path=None):
    if sc.k is None:
        raise ValidationError("steinberg needs k")
    k = sc.k
    seg = steinberg.Segment(k)
    fibers = [{"J": sorted(J), "size": _num(len(steinberg.jacquet_fiber(seg, J)), "oracle"),
               "witness": list(steinberg.realize_descent(k, frozenset(range(1, k)) - J))}
              for J in steinberg.all_labels(k)]
    J0 = frozenset(sc.J0) if sc.J0 is not None else frozenset(range(1, k, 2))
    J1 = frozenset(sc.J1) if sc.J1 is not None else frozenset(range(2, k, 2))
    iv = steinberg.q_interval(J0, J1, k)
    out = {"fibers": fibers, "total": _num(sum(f["size"]["value"] for f in fibers), "oracle"),
           "interval": iv.to_json(), "interval_size": _num(len(iv.members), "oracle")}
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(steinberg.interval_dot(iv))
        out["dot"] = dot_path
    return out


def cmd_gl4(sc, rng, samples, warnings):
    if sc.gl4 is None:
        raise ValidationError("gl4 command needs a gl4 parameter object")
    p = hodgeflag.GL4Params.parse(sc.gl4)
    verdict = hodgeflag.gl4_rebased_check(p)
    actual = hodgeflag.rebased_lines(p)
    shown = hodgeflag.gl4_displayed_lines(p)
    return {"params": p.to_json(), "verdict": verdict,
            "rebased_lines": actual.to_json(),
            "displayed_lines": [[xl.fmt_rational(x) for x in v] for v in shown],
            "corrected_e3_coefficient": xl.fmt_rational(hodgeflag.gl4_corrected_coefficient(p))}


HANDLERS = {"dims": cmd_dims, "envelope": cmd_envelope, "fern": cmd_fern, "lines": cmd_lines,
            "flatten": cmd_flatten, "steinberg": cmd_steinberg, "gl4": cmd_gl4}


def run(command: str, sc: ScenarioFile, seed: int | None = None, samples: int = 1,
        dot_path: str | None = None) -> dict:
    if command not in HANDLERS:
        raise ValidationError(f"unknown command {command!r}")
    seed = seed if seed is not None else (sc.seed if sc.seed is not None else 0)
    rng = random.Random(seed)
    warnings: list[str] = []
    if command == "steinberg":
        outputs = cmd_steinberg(sc, rng, samples, warnings, dot_path)
    else:
        outputs = HANDLERS[command](sc, rng, samples, warnings)
    return {"command": command, "seed": seed, "inputs": sc.echo(), "outputs": outputs, "warnings": warnings}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fernlab", description="Exact envelope, flag and dimension computations.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--scenario", required=True, help="scenario JSON file")
    ap.add_argument("--json", action="store_true", help="emit JSON")
    ap.add_argument("--dot", help="write the interval lattice as DOT (steinberg)")
    ap.add_argument("--seed", type=int, help="seed for generic-g sampling (default: scenario seed or 0)")
    ap.add_argument("--samples", type=int, default=1, help="number of sampled g")
    return ap


def _table(obj, prefix: str = "") -> list[str]:
    rows = []
    if isinstance(obj, dict):
        if set(obj) >= {"value", "anchor"}:
            extra = f"  (oracle {obj['oracle']})" if obj.get("oracle") is not None else ""
            return [f"{prefix:<48} {obj['value']}{extra}"]
        for k, v in obj.items():
            rows += _table(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for idx, v in enumerate(obj):
            rows += _table(v, f"{prefix}[{idx}]")
    else:
        rows.append(f"{prefix:<48} {json.dumps(obj)}")
    return rows


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print("fernlab: error: seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    if args.samples < 1:
        print("fernlab: error: --samples must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        sc = ScenarioFile.load(args.scenario)
        result = run(args.command, sc, args.seed, args.samples, args.dot)
    except FernlabError as exc:
        print(f"fernlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        sys.stdout.write(json.dumps(result, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(_table(result["outputs"])) + "\n")
        for w in result["warnings"]:
            sys.stdout.write(f"warning: {w}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
