"""Command line front end.  One command writes exactly one artifact.

Exit status: 0 on success, 2 on invalid input, 3 when ``--strict`` is set and
some classification stayed UNDECIDED, 1 on any other failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import scalar
from .complexity import DEFAULT_EPS, box_dimension_estimate, entropy_profile, omega_limit_sample, sweep_lambda
from .errors import PwcError, ValidationError
from .mapcore import MapSpec, build_map
from .orbits import Budget, Verdict, bound_report, classify_map, iterate_orbit
from .rotation import ContractedRotationSpec, rotation_number, tongue_atlas
from .scalar import Mode
from .singular import connection_polynomial, detect_connection, isolate_roots

COMMANDS = ("map", "orbit", "classify", "tongues", "rho", "connections", "entropy", "boxdim", "sweep")

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_UNDECIDED = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace

    @property
    def mode(self) -> Mode:
        return Mode(self.args.mode)

    def budget(self, default_T: int = 100_000) -> Budget:
        a = self.args
        return Budget(
            T_max=a.budget if a.budget is not None else default_T,
            p_max=a.pmax,
            depth=a.depth if a.depth is not None else 8,
        )


def _list(text: str) -> list:
    return [t for t in (s.strip() for s in text.split(",")) if t]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pwc", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--spec", help="map-spec JSON file")
    ap.add_argument("--a", help="partition points, comma separated (leading 0 required)")
    ap.add_argument("--b", help="offsets, comma separated (a single value for rotations)")
    ap.add_argument("--lambda", dest="lam", help="slope")
    ap.add_argument("--x", default="0", help="orbit start / connection source")
    ap.add_argument("--y", help="connection target (root report)")
    ap.add_argument("--omega", help="branch word, comma separated (root report)")
    ap.add_argument("--deltas", help="branch offsets, comma separated (root report)")
    ap.add_argument("--width", default="1/1024", help="root bracket width")
    ap.add_argument("--budget", type=int, help="orbit length / T_max")
    ap.add_argument("--pmax", type=int, default=64)
    ap.add_argument("--depth", type=int)
    ap.add_argument("--nmax", type=int, default=20)
    ap.add_argument("--qmax", type=int, default=5)
    ap.add_argument("--grid", type=int, help="slope grid j/M, 0 < j < M")
    ap.add_argument("--lambda-min", dest="lam_min", default="0")
    ap.add_argument("--lambda-max", dest="lam_max", default="1")
    ap.add_argument("--transient", type=int, default=1000)
    ap.add_argument("--mode", choices=[m.value for m in Mode], default="exact")
    ap.add_argument("--eps", help="box sizes, comma separated, decreasing")
    ap.add_argument("--out", help="output path (default: stdout)")
    ap.add_argument("--format", choices=["csv", "json"])
    ap.add_argument("--decimal", action="store_true")
    ap.add_argument("--strict", action="store_true")
    return ap


def _spec(cfg: RunConfig) -> MapSpec:
    a = cfg.args
    if a.spec:
        return MapSpec.load(a.spec, cfg.mode)
    if a.b is None or a.lam is None:
        raise ValidationError("give --spec PATH, or --b and --lambda (with --a for k > 1)")
    parts = _list(a.a) if a.a else ["0"]
    return MapSpec.create(parts, _list(a.b), a.lam, cfg.mode)


def _grid(cfg: RunConfig) -> list:
    a = cfg.args
    if a.grid:
        lo, hi = scalar.parse_scalar(a.lam_min), scalar.parse_scalar(a.lam_max)
        return [Fraction(j, a.grid) for j in range(1, a.grid) if lo < Fraction(j, a.grid) < hi]
    if a.lam:
        return [scalar.parse_scalar(v) for v in _list(a.lam)]
    raise ValidationError("give --grid M or --lambda")


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_map(cfg):
    return _json(build_map(_spec(cfg)).dump()), EXIT_OK


def cmd_orbit(cfg):
    pmap = build_map(_spec(cfg))
    x0 = scalar.to_mode(cfg.args.x, cfg.mode)
    rec = iterate_orbit(pmap, x0, cfg.args.budget or 20)
    dec = cfg.args.decimal
    if cfg.mode is Mode.EXACT:
        pts = [[scalar.fmt(p, dec)] for p in rec.points]
        head = "t,x,branch,wrap"
    else:
        pts = [[scalar.fmt(lo, True), scalar.fmt(hi, True)] for lo, hi in rec.points]
        head = "t,lo,hi,branch,wrap"
    if cfg.args.format == "json":
        return _json({
            "points": pts,
            "itinerary": list(rec.itinerary),
            "wraps": list(rec.wraps),
        }), EXIT_OK
    lines = [head]
    for t, p in enumerate(pts):
        br = rec.itinerary[t] if t < len(rec.itinerary) else ""
        wr = rec.wraps[t] if t < len(rec.wraps) else ""
        lines.append(",".join([str(t), *p, str(br), str(wr)]))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_classify(cfg):
    pmap = build_map(_spec(cfg))
    c = classify_map(pmap, cfg.budget())
    out = c.to_json(cfg.args.decimal)
    rep = bound_report(pmap, c)
    out["bounds"] = {"k": rep.k, "n_disc": rep.n_disc, "ell": rep.ell,
                     "n_classes": rep.n_classes, "n_cycles": rep.n_cycles}
    code = EXIT_UNDECIDED if cfg.args.strict and c.verdict is Verdict.UNDECIDED else EXIT_OK
    return _json(out), code


def cmd_tongues(cfg):
    rows = tongue_atlas(cfg.args.qmax, _grid(cfg))
    if cfg.args.format == "json":
        f = lambda v: scalar.fmt(v, cfg.args.decimal)
        return _json([{"lambda": f(t.lam), "p": t.p, "q": t.q, "b_lo": f(t.b_lo), "b_hi": f(t.b_hi)}
                      for t in rows]), EXIT_OK
    lines = ["lambda,p,q,b_lo,b_hi"] + [t.to_row(cfg.args.decimal) for t in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_rho(cfg):
    a = cfg.args
    if a.lam is None or a.b is None:
        raise ValidationError("rho needs --lambda and --b")
    res = rotation_number(ContractedRotationSpec.create(a.lam, a.b), cfg.budget())
    if a.format == "json":
        val = scalar.fmt(res.value, a.decimal) if res.exact else float(res.value)
        return _json({"kind": res.kind, "value": val, "n_steps": res.n_steps,
                      "history": list(res.history)}), EXIT_OK
    code = EXIT_UNDECIDED if a.strict and not res.exact else EXIT_OK
    return str(res) + "\n", code


def cmd_connections(cfg):
    a = cfg.args
    if a.omega:
        if a.y is None or a.deltas is None:
            raise ValidationError("a root report needs --omega, --x, --y and --deltas")
        word = [int(v) for v in _list(a.omega)]
        poly = connection_polynomial(word, a.x, a.y, _list(a.deltas))
        roots = isolate_roots(poly, width=scalar.parse_scalar(a.width))
        return "\n".join(["lo,hi,exact"] + [r.to_row(a.decimal) for r in roots]) + "\n", EXIT_OK
    pmap = build_map(_spec(cfg))
    conn = detect_connection(pmap, a.depth if a.depth is not None else 64)
    return _json(conn.to_json(a.decimal) if conn is not None else None), EXIT_OK


def cmd_entropy(cfg):
    prof = entropy_profile(build_map(_spec(cfg)), cfg.args.nmax)
    lines = ["n,alpha_n,entropy_n"] + [f"{n},{a},{h:.15g}" for n, a, h in prof.rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_boxdim(cfg):
    pmap = build_map(_spec(cfg))
    eps = [float(scalar.parse_scalar(e)) for e in _list(cfg.args.eps)] if cfg.args.eps else list(DEFAULT_EPS)
    pts = omega_limit_sample(pmap, pmap.singular, cfg.args.transient, cfg.args.budget or 10_000)
    prof = box_dimension_estimate(pts, eps)
    lines = ["epsilon,N"] + [f"{e:.15g},{n}" for e, n in prof.rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_sweep(cfg):
    a = cfg.args
    if a.spec:
        spec = MapSpec.load(a.spec)
        fam_a, fam_b = spec.a, spec.b
    else:
        if a.b is None:
            raise ValidationError("sweep needs --spec or --b (and --a)")
        fam_a, fam_b = (_list(a.a) if a.a else ["0"]), _list(a.b)
    rep = sweep_lambda(fam_a, fam_b, _grid(cfg), cfg.budget())
    lines = ["lambda,verdict,n_cycles,max_period,undecided_reason"]
    for r in rep.rows:
        lines.append(f"{scalar.fmt(r.lam, a.decimal)},{r.verdict.value},{r.n_cycles},{r.max_period},{r.undecided_reason}")
    code = EXIT_UNDECIDED if a.strict and rep.undecided_fraction > 0 else EXIT_OK
    return "\n".join(lines) + "\n", code


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        text, code = HANDLERS[cfg.command](cfg)
    except ValidationError as exc:
        print(f"pwc {cfg.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (PwcError, ValueError) as exc:
        print(f"pwc {cfg.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.args.out:
        with open(cfg.args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(RunConfig(args.command, args))


if __name__ == "__main__":
    sys.exit(main())
