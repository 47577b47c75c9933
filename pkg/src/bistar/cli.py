"""Command-line front end.

Usage::

    bistar norm --function koebe
    bistar norm --function gen_koebe --alpha 0.25 --profile profile.csv
    bistar member --function f1 --alpha 0.49 --kind starlike --bi
    bistar generate --class v --alpha 0.2 --phi z^2 > gen.json
    bistar member --function gen.json --alpha 0.2 --kind v
    bistar audit --functions f1,f2,f3,koebe,gen_koebe:0.25 --alphas 0:0.95:0.05 --out report.csv
    bistar bounds --alphas 0:1:0.05
    bistar series revert --coeffs 0,1,2,3,4

Every subcommand takes ``--format json|csv`` and ``--config FILE`` (lines of
``key = value``; flags win).  JSON documents carry ``schema_version``.
Exit status: 0 success, 1 numeric failure (diagnostics as JSON on stderr)
or ``--fail-on-violation`` hit, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import series as ps
from .audit import AuditConfig, BoundProfile, audit
from .catalog import AnalyticFunction, make_named
from .errors import ArgumentError, BistarError, DomainError, NumericError
from .grid import MEMBERSHIP_GRID, NORM_GRID, GridSpec
from .membership import check_bi, check_forward, inverse_pullback, subordination_check
from .norms import norm_estimate, pre_schwarzian
from .quadrature import DEFAULT_TOL
from .schemas import SCHEMA_VERSION
from .schwarz import certify, generate, parse_phi, random_schwarz, v_substituted_pre_schwarzian

AUDIT_COLUMNS = [
    "function", "alpha", "class", "forward_min_re", "inverse_min_re", "inverse_rho", "norm",
    "yamashita", "theorem1", "derivation_phi", "derivation_case2", "majorant_sup",
    "rahmatan_A", "rahmatan_B", "violations",
]
BOUNDS_COLUMNS = [
    "alpha", "yamashita", "theorem1", "derivation_phi", "derivation_case2", "majorant_sup",
    "majorant_argmax", "rahmatan_A", "rahmatan_B",
]


class UsageError(BistarError):
    pass


@dataclass(frozen=True)
class Config:
    n_r: Optional[int] = None
    n_theta: Optional[int] = None
    r_max: Optional[float] = None
    quad_tol: float = DEFAULT_TOL
    order: int = ps.DEFAULT_ORDER
    format: Optional[str] = None
    seed: int = 0

    def __post_init__(self):
        if self.r_max is not None and not 0 < self.r_max < 1:
            raise UsageError(f"r_max must lie in (0, 1), got {self.r_max}")
        if self.order < 8:
            raise UsageError(f"series order must be at least 8, got {self.order}")
        if not self.quad_tol > 0:
            raise UsageError("quadrature tolerance must be positive")
        if self.format not in (None, "json", "csv"):
            raise UsageError(f"format must be json or csv, got {self.format!r}")

    def grid(self, base: GridSpec) -> GridSpec:
        g = GridSpec(self.n_r or base.n_r, self.n_theta or base.n_theta, base.r_max, base.r0,
                     base.n_interior)
        return g.with_r_max(self.r_max) if self.r_max is not None else g


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    conv = {"n_r": int, "n_theta": int, "r_max": float, "quad_tol": float, "order": int,
            "format": str, "seed": int}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in conv:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = conv[key](val)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from None
    return out


def parse_alphas(text: str) -> list:
    """``start:stop:step`` (stop excluded), a comma list, or one value."""
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3 or parts[2] <= 0:
                raise ValueError
            start, stop, step = parts
            n = int(math.floor((stop - start) / step + 1e-9))
            vals = [round(start + k * step, 12) for k in range(n + 1)]
            return [v for v in vals if v < stop - 1e-12]
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad alpha list {text!r}; use start:stop:step or a,b,c") from None


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, complex):
        if x.imag == 0:
            return _num(x.real)
        return f"{x.real:.15g}{x.imag:+.15g}j"
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _short(x: complex) -> str:
    """Coefficients for humans: 15 significant digits, real part only when exact."""
    x = complex(x)
    if abs(x.imag) <= 1e-13 * max(1.0, abs(x.real)):
        v = x.real
        return f"{v:.15g}" if v != 0 else "0"
    return f"{x.real:.15g}{x.imag:+.15g}j"


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        obj = obj.item()
    if isinstance(obj, complex):
        return [_json_safe(obj.real), _json_safe(obj.imag)]
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
    return obj


def dump_json(doc: dict) -> str:
    return json.dumps(_json_safe({"schema_version": SCHEMA_VERSION, **doc}), indent=2) + "\n"


def dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def resolve_function(spec: str, alpha: Optional[float] = None, cfg: Config = Config()):
    """Catalog name, ``gen_koebe:<alpha>``, or a JSON file written by ``generate``."""
    p = Path(spec)
    if spec.endswith(".json") or (p.suffix == "" and p.is_file()):
        if not p.is_file():
            raise UsageError(f"no such function file {spec}")
        doc = json.loads(p.read_text())
        try:
            return generate(doc["class"], float(doc["alpha"]), parse_phi(doc["phi"]),
                            tol=cfg.quad_tol)
        except KeyError as exc:
            raise UsageError(f"{spec} lacks field {exc}") from None
    return make_named(spec, alpha)


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_norm(args, cfg: Config) -> int:
    f = resolve_function(args.function, args.alpha, cfg)
    grid = cfg.grid(NORM_GRID)
    est = norm_estimate(f, grid, extrapolate=args.extrapolate)
    if args.profile:
        Path(args.profile).write_text(
            dump_csv(["r", "max_theta_value"], [(_num(r), _num(v)) for r, v in est.profile]))
    if (cfg.format or "json") == "json":
        text = dump_json({"command": "norm", "function": f.name, **est.to_dict()})
    else:
        text = dump_csv(
            ["function", "value", "argmax_re", "argmax_im", "r_max", "n_r", "n_theta", "refined"],
            [[f.name, _num(est.value), _num(est.argmax.real), _num(est.argmax.imag),
              _num(est.r_max), est.grid[0], est.grid[1], est.refined]])
    _emit(text, args.out)
    return 0


def _report_rows(reports, name):
    return [[name, r.kind, r.direction, _num(r.alpha), _num(r.empirical_min_re),
             _num(r.witness.real), _num(r.witness.imag), r.grid[0], r.grid[1], _num(r.grid[2]),
             _num(r.inverse_domain_radius), r.verdict] for r in reports]


REPORT_COLUMNS = ["function", "kind", "direction", "alpha", "empirical_min_re", "witness_re",
                  "witness_im", "n_r", "n_theta", "r_max", "inverse_domain_radius", "verdict"]


def cmd_member(args, cfg: Config) -> int:
    f = resolve_function(args.function, None, cfg)
    grid = cfg.grid(MEMBERSHIP_GRID)
    if args.bi:
        reports = list(check_bi(f, args.alpha, args.kind, grid))
    else:
        reports = [check_forward(f, args.alpha, args.kind, grid)]
    if (cfg.format or "json") == "json":
        text = dump_json({"command": "member", "function": f.name,
                          "reports": [r.to_dict() for r in reports]})
    else:
        text = dump_csv(REPORT_COLUMNS, _report_rows(reports, f.name))
    _emit(text, args.out)
    return 0


def validity_report(f: AnalyticFunction, cls: str, alpha: float, phi, grid: GridSpec,
                    check_order: int = 160) -> dict:
    """Certificates for a generated function: phi, the class functional, T_f identity."""
    rep = {"schwarz": certify(phi)}
    rep.update({k: v for k, v in f.diagnostics.items()})
    if cls == "starlike":
        m = check_forward(f, alpha, "starlike", grid)
        rep["starlike_min_re"] = m.empirical_min_re
        rep["verdict"] = m.verdict
    elif cls == "inv-starlike":
        sub = subordination_check(inverse_pullback(f), alpha, grid)
        rep["pullback_min_re"] = sub.empirical_min_re
        rep["verdict"] = sub.verdict
    else:
        m = check_forward(f, alpha, "V", grid)
        rep["v_min_re"] = m.empirical_min_re
        rep["verdict"] = m.verdict
        if f.diagnostics.get("pole_count", 0) > 0:
            # 1/f has zeros in the disc: f is not analytic there, so it is no class member
            # and the Taylor series behind the residuals below diverges on |z| = 0.7
            rep["verdict"] = "rejected"
            rep["pre_schwarzian_identity_residual"] = None
            rep["substituted_form_residual"] = None
            return rep
    z = 0.7 * np.exp(2j * np.pi * np.arange(64) / 64)
    s = f.taylor(check_order)
    d1 = ps.derive(s)
    t_series = ps.evaluate(ps.derive(d1), z) / ps.evaluate(d1, z)
    rep["pre_schwarzian_identity_residual"] = float(np.max(np.abs(pre_schwarzian(f, z) - t_series)))
    if cls == "v":
        rep["substituted_form_residual"] = float(
            np.max(np.abs(v_substituted_pre_schwarzian(f, z) - t_series)))
    return rep


def cmd_generate(args, cfg: Config) -> int:
    if args.phi == "random":
        # V(alpha) needs phi'(0) = 0, hence a double zero at the origin
        rng = np.random.default_rng(cfg.seed)
        phi = random_schwarz(rng, min_k=2 if args.cls == "v" else 1)
    else:
        phi = parse_phi(args.phi)
    f = generate(args.cls, args.alpha, phi, tol=cfg.quad_tol)
    coeffs = f.taylor(cfg.order).coeffs
    if (cfg.format or "json") == "json":
        doc = {
            "command": "generate",
            "class": args.cls,
            "alpha": args.alpha,
            "phi": phi.spec(),
            "order": cfg.order,
            "coefficients": [[c.real, c.imag] for c in coeffs],
            "validity": validity_report(f, args.cls, args.alpha, phi, cfg.grid(MEMBERSHIP_GRID)),
        }
        text = dump_json(doc)
    else:
        text = dump_csv(["n", "re", "im"],
                        [[n, _num(c.real), _num(c.imag)] for n, c in enumerate(coeffs)])
    _emit(text, args.out)
    return 0


def audit_csv_rows(rows):
    out = []
    for r in rows:
        b = r.bounds
        flags = list(r.violations) + [f"info:{d}" for d in r.derivation_flags]
        if r.error:
            flags.append(f"error:{r.error.split(':', 1)[0]}")
        out.append([
            r.function, _num(r.alpha), r.cls,
            _num(r.forward.empirical_min_re if r.forward else None),
            _num(r.inverse.empirical_min_re if r.inverse else None),
            _num(r.inverse.inverse_domain_radius if r.inverse else None),
            _num(r.norm.value if r.norm else None),
            _num(b.yamashita), _num(b.theorem1_stated), _num(b.derivation_phi),
            _num(b.derivation_case2), _num(b.majorant_sup), _num(b.rahmatan_A),
            _num(b.rahmatan_B), ";".join(flags),
        ])
    return out


def audit_json_rows(rows):
    out = []
    for r in rows:
        out.append({
            "function": r.function, "alpha": r.alpha, "class": r.cls,
            "forward": r.forward.to_dict() if r.forward else None,
            "inverse": r.inverse.to_dict() if r.inverse else None,
            "norm": r.norm.to_dict() if r.norm else None,
            "bounds": vars(r.bounds),
            "violations": r.violations,
            "derivation_flags": r.derivation_flags,
            "error": r.error,
        })
    return out


def cmd_audit(args, cfg: Config) -> int:
    alphas = parse_alphas(args.alphas)
    items = []
    for spec in [s.strip() for s in args.functions.split(",") if s.strip()]:
        f = resolve_function(spec, None, cfg)
        items.append((spec, f))
    acfg = AuditConfig(cfg.grid(MEMBERSHIP_GRID), cfg.grid(NORM_GRID), jobs=args.jobs)
    rows = audit(items, alphas, acfg)
    if (cfg.format or "csv") == "csv":
        text = dump_csv(AUDIT_COLUMNS, audit_csv_rows(rows))
    else:
        text = dump_json({"command": "audit", "rows": audit_json_rows(rows)})
    _emit(text, args.out)
    if args.fail_on_violation and any(r.violations for r in rows):
        return 1
    return 0


def cmd_bounds(args, cfg: Config) -> int:
    profiles = [BoundProfile.at(a) for a in parse_alphas(args.alphas)]
    if (cfg.format or "csv") == "csv":
        rows = [[_num(p.alpha), _num(p.yamashita), _num(p.theorem1_stated),
                 _num(p.derivation_phi), _num(p.derivation_case2), _num(p.majorant_sup),
                 _num(p.majorant_argmax), _num(p.rahmatan_A), _num(p.rahmatan_B)]
                for p in profiles]
        text = dump_csv(BOUNDS_COLUMNS, rows)
    else:
        text = dump_json({"command": "bounds", "rows": [vars(p) for p in profiles]})
    _emit(text, args.out)
    return 0


def _parse_coeffs(text: str):
    try:
        return ps.from_coeffs([complex(t.strip().replace("i", "j")) for t in text.split(",")])
    except ValueError:
        raise UsageError(f"bad coefficient list {text!r}") from None


def cmd_series(args, cfg: Config) -> int:
    s = _parse_coeffs(args.coeffs)
    r = ps.revert(s)
    if (cfg.format or "csv") == "csv":
        text = ",".join(_short(c) for c in r.coeffs) + "\n"
    else:
        text = dump_json({"command": "series revert",
                          "coefficients": [[c.real, c.imag] for c in r.coeffs]})
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--n-r", type=int, dest="n_r")
    common.add_argument("--n-theta", type=int, dest="n_theta")
    common.add_argument("--rmax", type=float, dest="r_max")
    common.add_argument("--order", type=int)
    common.add_argument("--quad-tol", type=float, dest="quad_tol")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="bistar", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("norm", parents=[common], help="estimate the pre-Schwarzian norm")
    q.add_argument("--function", required=True)
    q.add_argument("--alpha", type=float)
    q.add_argument("--profile", help="write r,max_theta_value CSV here")
    q.add_argument("--extrapolate", action="store_true",
                   help="also report a (non-bound) boundary extrapolation")
    q.set_defaults(func=cmd_norm)

    q = sub.add_parser("member", parents=[common], help="test class membership")
    q.add_argument("--function", required=True)
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--kind", choices=["starlike", "v"], required=True)
    q.add_argument("--bi", action="store_true", help="also test the inverse function")
    q.set_defaults(func=cmd_member)

    q = sub.add_parser("generate", parents=[common], help="build a class member from phi")
    q.add_argument("--class", dest="cls", choices=["starlike", "inv-starlike", "v"], required=True)
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--phi", required=True, help="0, z^k, [z^k*]blaschke:a1,a2,...[:eta], or 'random' (uses --seed)")
    q.set_defaults(func=cmd_generate)

    q = sub.add_parser("audit", parents=[common], help="compare measured norms with bounds")
    q.add_argument("--functions", required=True)
    q.add_argument("--alphas", required=True)
    q.add_argument("--fail-on-violation", action="store_true")
    q.add_argument("--jobs", type=int, default=1)
    q.set_defaults(func=cmd_audit)

    q = sub.add_parser("bounds", parents=[common], help="tabulate all bounds over alpha")
    q.add_argument("--alphas", required=True)
    q.set_defaults(func=cmd_bounds)

    q = sub.add_parser("series", parents=[common], help="power-series utilities")
    q.add_argument("op", choices=["revert"])
    q.add_argument("--coeffs", required=True)
    q.set_defaults(func=cmd_series)
    return p


def _config(args) -> Config:
    values = read_config(args.config) if args.config else {}
    for key in ("n_r", "n_theta", "r_max", "quad_tol", "order", "format", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    return Config(**values)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except (UsageError, ArgumentError, DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"bistar: error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        doc = {"error": type(exc).__name__, "message": str(exc), "diagnostics": exc.diagnostics}
        sys.stderr.write(dump_json(doc))
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
