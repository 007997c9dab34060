"""Command-line front-end ``hinf-interp``.

Exit codes: 0 success, 1 input error, 2 a mathematical invariant failed.

File formats (UTF-8 JSON):

* points:  ``[{"x": 0, "y": 1}, {"x": 0, "y": 3}]``
* targets: ``[{"re": 1, "im": 0}, {"re": -1, "im": 0}]``
* modulus tables (``--g tabulated:PATH``, ``outer --modulus PATH``):
  ``{"t": [...], "modulus": [...]}`` with strictly increasing ``t``.  A weight
  table is continued as ``C/t^2`` beyond its ends, an outer-function modulus
  table by its end values.

JSON reports are written with sorted keys and shortest round-trip floats, so
identical inputs and seed give byte-identical output.  CSV reports have the
fixed columns ``field,value`` with nested fields joined by dots.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

import numpy as np

from . import characteristics as ch
from . import outer
from .chain import GEOMETRIES, ChainConfig, chain_check
from .errors import InvariantViolation, NonConvergent, TruncationWarning
from .gamma_example import GammaConfig, sharpness_report
from .halfplane import PointSequence
from .jones import GridSpec, InterpolantSpec, norm_certificate
from .pick import estimate_M, minimal_norm

DEFAULT_SEED = 0
BASE_TOLERANCES = {"quadrature": 1e-9, "pick_bisection": 1e-8, "psd": 1e-10,
                   "bound_rel": 1e-6, "chain_rel": 1e-12}


class InputError(Exception):
    """Malformed or inconsistent user input (exit code 1)."""


def _version() -> str:
    from . import __version__
    return __version__


# ---------------------------------------------------------------- input files

def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_points(path: str) -> PointSequence:
    data = _read_json(path)
    if not isinstance(data, list) or not data:
        raise InputError(f"{path}: expected a nonempty array of {{\"x\", \"y\"}} objects")
    try:
        x = [float(p["x"]) for p in data]
        y = [float(p["y"]) for p in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: every point needs numeric \"x\" and \"y\"") from exc
    try:
        return PointSequence.from_xy(x, y)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_targets(path: str, n: int) -> np.ndarray:
    data = _read_json(path)
    if not isinstance(data, list):
        raise InputError(f"{path}: expected an array of {{\"re\", \"im\"}} objects")
    try:
        w = np.array([complex(float(v["re"]), float(v.get("im", 0.0))) for v in data])
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"{path}: every target needs numeric \"re\" (and optional \"im\")") from exc
    if w.size != n:
        raise InputError(f"expected {n} target values to match the points, got {w.size}")
    if not np.all(np.isfinite(w)):
        raise InputError("target values must be finite")
    return w


def load_modulus_table(path: str) -> tuple[np.ndarray, np.ndarray]:
    data = _read_json(path)
    try:
        return np.asarray(data["t"], dtype=float), np.asarray(data["modulus"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: expected {{\"t\": [...], \"modulus\": [...]}}") from exc


def make_family(spec: str, abs_tol: float) -> ch.WeightFamily:
    if spec == "standard":
        return ch.standard_jones()
    if spec == "outer":
        return ch.outer_extremal()
    if spec.startswith("tabulated:"):
        path = spec.split(":", 1)[1]
        t, m = load_modulus_table(path)
        try:
            boundary = outer.tabulated_modulus(t, m, tail="inverse_square")
            return ch.tabulated(boundary, name=f"tabulated:{path}", abs_tol=abs_tol)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from exc
    raise InputError(f"unknown weight {spec!r}; use standard, outer or tabulated:PATH")


# ---------------------------------------------------------------- output

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def render(report: dict, fmt: str) -> str:
    report = _jsonable(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = list(_flatten(report))
    if fmt == "csv":
        lines = ["field,value"]
        for k, v in rows:
            text = json.dumps(v) if not isinstance(v, str) else v
            lines.append(f"{k},{text}" if "," not in text else f'{k},"{text}"')
        return "\n".join(lines) + "\n"
    width = max(len(k) for k, _ in rows) if rows else 0
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def _emit(report: dict, args) -> None:
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tolerances(args) -> dict:
    tol = {k: v * args.tol for k, v in BASE_TOLERANCES.items()}
    if args.quad_tol is not None:
        tol["quadrature"] = args.quad_tol
    if args.pick_tol is not None:
        tol["pick_bisection"] = args.pick_tol
    return tol


def _header(args, tol: dict) -> dict:
    return {"command": args.command, "seed": args.seed, "tolerances": tol, "version": _version()}


def _require(args, name: str):
    if getattr(args, name) is None:
        raise InputError(f"--{name.replace('_', '-')} is required for {args.command}")
    return getattr(args, name)


# ---------------------------------------------------------------- commands

def cmd_characteristics(args) -> int:
    tol = _tolerances(args)
    Z = load_points(_require(args, "points"))
    families = [make_family(s, tol["quadrature"]) for s in (args.g or ["standard", "outer"])]
    rep = ch.m_bounds(Z, families)
    violations = rep.violations(rtol=tol["chain_rel"])
    out = _header(args, tol) | rep.to_dict() | {"n": Z.n, "violations": violations}
    _emit(out, args)
    if violations:
        for v in violations:
            print(f"invariant violated: {v}", file=sys.stderr)
        return 2
    return 0


def cmd_interpolate(args) -> int:
    tol = _tolerances(args)
    Z = load_points(_require(args, "points"))
    w = load_targets(_require(args, "targets"), Z.n)
    if args.g and len(args.g) > 1:
        raise InputError("interpolate takes a single --g")
    g = make_family((args.g or ["standard"])[0], tol["quadrature"])
    a = "auto" if args.a in (None, "auto") else _positive_float(args.a, "--a")
    spec = InterpolantSpec(Z, w, g, a)
    cert = norm_certificate(spec, GridSpec(nx=args.nx, ny=args.ny))
    out = _header(args, tol) | {
        "weight": g.name, "c_J": spec.c, "a": spec.a, "w_sup": float(np.max(np.abs(w))),
        "residuals": cert.residuals, "max_residual": float(np.max(cert.residuals)),
        "empirical_sup": cert.empirical_sup, "bound": cert.bound, "margin": cert.margin,
        "argmax": cert.argmax, "grid": {"nx": args.nx, "ny": args.ny},
    }
    _emit(out, args)
    if cert.margin < -tol["bound_rel"] * cert.bound:
        print(f"invariant violated: sup|f| = {cert.empirical_sup!r} > bound {cert.bound!r}", file=sys.stderr)
        return 2
    return 0


def cmd_pick(args) -> int:
    tol = _tolerances(args)
    Z = load_points(_require(args, "points"))
    head = _header(args, tol)
    if args.estimate:
        est = estimate_M(Z, samples=args.samples, seed=args.seed)
        c_h = ch.c_H(Z)[0]
        cj, best = ch.c_J_estimate(Z, [ch.standard_jones(), ch.outer_extremal()])
        upper_ok = est.m_hat <= math.e * cj * (1 + tol["bound_rel"])
        lower_reached = c_h <= est.m_hat * (1 + tol["bound_rel"])
        out = head | {"m_hat": est.m_hat, "argmax_w": est.argmax_w, "samples": args.samples,
                      "sandwich": {"c_H": c_h, "m_hat": est.m_hat, "e*c_J": math.e * cj, "c_J_family": best,
                                   "m_hat<=e*c_J": upper_ok, "c_H<=m_hat": lower_reached}}
        _emit(out, args)
        if not upper_ok:
            print(f"invariant violated: m_hat {est.m_hat!r} > e*c_J {math.e * cj!r}", file=sys.stderr)
            return 2
        if not lower_reached:
            print("note: sampled estimate is below c_H; increase --samples", file=sys.stderr)
        return 0
    w = load_targets(_require(args, "targets"), Z.n)
    res = minimal_norm(Z, w, tol=tol["pick_bisection"], psd_tol=tol["psd"])
    _emit(head | {"rho_star": res.rho_star, "iterations": res.iterations,
                  "certificate": {"lambda_min_below": res.certificate[0],
                                  "lambda_min_at": res.certificate[1]}}, args)
    return 0


def cmd_gamma(args) -> int:
    tol = _tolerances(args)
    gamma = _positive_float(_require(args, "gamma"), "--gamma")
    K = _require(args, "K")
    try:
        cfg = GammaConfig(gamma, K)
    except (OverflowError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        rep = sharpness_report(cfg, with_pick=None if not args.no_pick else False,
                               fb_samples=args.samples if args.samples_given else 4001)
    out = _header(args, tol) | rep.to_dict()
    out["warnings"] = sorted({str(w.message) for w in caught if issubclass(w.category, TruncationWarning)})
    _emit(out, args)
    return 0


def cmd_outer(args) -> int:
    tol = _tolerances(args)
    head = _header(args, tol)
    if args.psi_at_i:
        value, err = outer.outer_eval_with_error(outer.PSI_MODULUS, 1j)
        value = 1j * value
        out = head | {"quantity": "psi(i)", "value": value, "modulus": abs(value),
                      "argument": math.atan2(value.imag, value.real), "error_estimate": err * abs(value),
                      "reference": {"modulus": 2 * math.e / math.pi, "argument": math.pi / 2}}
    elif args.g0_integral:
        check = outer.weighted_hardy_extremal_check()
        out = head | {"quantity": "int |g0(t)| arctan(t)/t dt", "value": check.candidate,
                      "rivals": check.rivals, "minimal": check.minimal,
                      "reference": 2 * math.pi ** 2 / math.e}
    elif args.modulus:
        if args.at is None:
            raise InputError("--modulus needs --at X Y")
        x, y = args.at
        if not y > 0:
            raise InputError("--at needs y > 0")
        t, m = load_modulus_table(args.modulus)
        try:
            logm = outer.tabulated_log_modulus(t, m, tail="constant")
        except ValueError as exc:
            raise InputError(f"{args.modulus}: {exc}") from exc
        value, err = outer.outer_eval_with_error(outer.BoundaryModulus(logm, logm.even), complex(x, y))
        out = head | {"quantity": "outer", "at": complex(x, y), "value": value, "modulus": abs(value),
                      "error_estimate": err * abs(value)}
    else:
        raise InputError("outer needs one of --psi-at-i, --g0-integral or --modulus PATH --at X Y")
    _emit(out, args)
    return 0


def cmd_chain_check(args) -> int:
    tol = _tolerances(args)
    cfg = ChainConfig(n=args.n, count=args.count, seed=args.seed, geometry=args.geometry,
                      samples=args.samples)
    summary = chain_check(cfg)
    rep = summary.to_dict()
    if not args.records:
        rep.pop("records")
    _emit(_header(args, tol) | rep, args)
    if summary.failures:
        for f in summary.failures:
            print(f"invariant violated: {f['check']} on sequence {f['index']}", file=sys.stderr)
        return 2
    return 0


COMMANDS = {
    "characteristics": cmd_characteristics,
    "interpolate": cmd_interpolate,
    "pick": cmd_pick,
    "gamma": cmd_gamma,
    "outer": cmd_outer,
    "chain-check": cmd_chain_check,
}


def _positive_float(text, flag: str) -> float:
    try:
        v = float(text)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{flag} expects a number, got {text!r}") from exc
    if not (math.isfinite(v) and v > 0):
        raise InputError(f"{flag} must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--points", help="JSON array of {\"x\", \"y\"}")
    common.add_argument("--targets", help="JSON array of {\"re\", \"im\"}")
    common.add_argument("--g", action="append", metavar="{standard|outer|tabulated:PATH}",
                        help="weight family (repeatable for characteristics)")
    common.add_argument("--a", default="auto", help="Jones parameter a, or 'auto' for 1/c")
    common.add_argument("--gamma", type=float)
    common.add_argument("--K", type=int)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--tol", type=float, default=1.0, help="factor applied to every default tolerance")
    common.add_argument("--quad-tol", type=float, help="override the quadrature tolerance")
    common.add_argument("--pick-tol", type=float, help="override the bisection tolerance")
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="hinf-interp", description="Constant of interpolation toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("characteristics", parents=[common], help="delta, c_H, c_HJ, c_J and M(Z) bounds")
    s = sub.add_parser("interpolate", parents=[common], help="Jones interpolant certificate")
    s.add_argument("--nx", type=int, default=61)
    s.add_argument("--ny", type=int, default=40)
    s = sub.add_parser("pick", parents=[common], help="minimal norm or sampled M_n(Z)")
    s.add_argument("--estimate", action="store_true", help="estimate M_n(Z) by phase search")
    s = sub.add_parser("gamma", parents=[common], help="Z_gamma sharpness report")
    s.add_argument("--no-pick", action="store_true", help="skip the alternating Pick problem")
    s = sub.add_parser("outer", parents=[common], help="outer-function values")
    s.add_argument("--psi-at-i", action="store_true")
    s.add_argument("--g0-integral", action="store_true")
    s.add_argument("--modulus", metavar="PATH")
    s.add_argument("--at", nargs=2, type=float, metavar=("X", "Y"))
    s = sub.add_parser("chain-check", parents=[common], help="chain of inequalities on random sequences")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--geometry", choices=GEOMETRIES, default="box")
    s.add_argument("--records", action="store_true", help="include per-sequence records")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    args.samples_given = any(a == "--samples" or a.startswith("--samples=") for a in argv)
    if not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 1
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    except NonConvergent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
