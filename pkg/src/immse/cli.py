"""Command-line interface.

Every subcommand writes one artifact (CSV or JSON) to ``--out``, to
``$IMMSE_OUTPUT_DIR/<name>.<ext>`` when that variable is set, or to stdout.
Diagnostics go to stderr.  Exit codes: 0 ok, 2 invalid input, 3 numerical
failure, 4 failed property check (the artifact is still written).

Rates and informations are computed in nats; ``--unit bits`` rescales them
on output only.  Monte Carlo commands draw from Philox streams keyed by
(--seed, purpose, worker), so output is byte-identical for identical flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import codesim
from .calculus import immse_table, rate_between_curves
from .core import DiscreteInput, bpsk, mi_discrete, mmse_discrete, mmse_gaussian, pam
from .crossing import crossing_grid, find_crossing, q_function
from .errors import CapacityError, ConsistencyError, DomainError, NumericError, PropertyViolation
from .profiles import (
    ChannelScenario,
    ProfileBundle,
    bc_good_profile,
    bcc_complete_secrecy_profile,
    bcc_optimal_secure_profile,
    wiretap_dmax_profile,
    wiretap_rate_from_profiles,
    wiretap_rate_profile,
    wiretap_secrecy_bundle,
)
from .regions import bc_region, bc_region_constrained, bcc_region_constrained, bcc_secrecy_region, chebyshev_grid

__all__ = ["main", "build_parser", "OUTPUT_DIR_ENV"]

OUTPUT_DIR_ENV = "IMMSE_OUTPUT_DIR"
EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC, EXIT_PROPERTY = 0, 2, 3, 4

PROFILE_KINDS = ("wiretap-dmax", "wiretap-secrecy", "wiretap-rate", "bc-good", "bcc-secrecy", "bcc-secure")
REGION_KINDS = ("bc", "bcc", "bc-constrained", "bcc-constrained")
CODE_KINDS = ("superposition", "binned", "points")
CHECKS = ("decoding", "saturation", "immse")


def _fmt(x) -> str:
    return "" if x is None else format(float(x), ".12g")


def _num(x):
    return None if x is None else float(_fmt(x))


def _scale(unit: str) -> float:
    return 1.0 if unit == "nats" else 1.0 / math.log(2.0)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([v if isinstance(v, str) else _fmt(v) for v in r])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str, name: str):
    if args.out:
        path = Path(args.out)
    elif os.environ.get(OUTPUT_DIR_ENV):
        path = Path(os.environ[OUTPUT_DIR_ENV]) / f"{name}.{args.format}"
    else:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    print(f"wrote {path}", file=sys.stderr)


# -- argument helpers ---------------------------------------------------------

def _floats(text: str) -> list:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise DomainError(f"expected comma-separated numbers, got {text!r}") from None


def _parse_input(args) -> DiscreteInput | None:
    """``bpsk``, ``pamM``, ``gaussian`` (None) or ``custom`` via --atoms/--probs."""
    name = args.input
    if name == "gaussian":
        return None
    if name == "bpsk":
        return bpsk()
    if name.startswith("pam"):
        try:
            order = int(name[3:])
        except ValueError:
            raise DomainError(f"bad PAM order in {name!r}") from None
        return pam(order)
    if name == "custom":
        if not args.atoms:
            raise DomainError("--input custom needs --atoms")
        atoms = _floats(args.atoms)
        probs = _floats(args.probs) if args.probs else [1.0 / len(atoms)] * len(atoms)
        if args.normalize:
            return DiscreteInput.unit_power(atoms, probs)
        return DiscreteInput(atoms, probs)
    raise DomainError(f"unknown input {name!r}")


def _scenario(args) -> ChannelScenario:
    if args.snr_z is None:
        raise DomainError("--snr-z is required here")
    return ChannelScenario(args.snr_z, args.snr_y, args.snr_u, args.alpha, args.beta)


def _discrete(args) -> DiscreteInput:
    inp = _parse_input(args)
    if inp is None:
        raise DomainError("this command needs a discrete input")
    return inp


# -- mmse / identity / crossing -------------------------------------------------

def cmd_mmse(args) -> int:
    inp = _parse_input(args)
    if args.points < 2 or not args.snr_max > 0:
        raise DomainError("need --points >= 2 and --snr-max > 0")
    grid = np.linspace(0.0, args.snr_max, args.points)
    gauss = mmse_gaussian(1.0, grid)
    if inp is None:
        mmse, mi = gauss, 0.5 * np.log1p(grid)
    else:
        mmse, mi = np.asarray(mmse_discrete(inp, grid)), np.asarray(mi_discrete(inp, grid))
    mi = mi * _scale(args.unit)
    if args.format == "csv":
        text = _csv(["gamma", "mmse", "mmse_gaussian", f"mi_{args.unit}"], zip(grid, mmse, gauss, mi))
    else:
        text = _json({"input": args.input, "unit": args.unit, "gamma": [_num(g) for g in grid],
                      "mmse": [_num(v) for v in mmse], "mmse_gaussian": [_num(v) for v in gauss],
                      "mi": [_num(v) for v in mi]})
    _emit(args, text, f"mmse-{args.input}")
    return EXIT_OK


def cmd_identity(args) -> int:
    inp = _discrete(args)
    if args.tol <= 0:
        raise DomainError("--tol must be positive")
    snrs = np.asarray(args.snr, dtype=float)
    mi, half = immse_table(inp, snrs)
    res = np.abs(mi - half)
    ok = bool(np.all(res <= args.tol))
    s = _scale(args.unit)
    flags = ["yes" if r <= args.tol else "no" for r in res]
    if args.format == "csv":
        text = _csv(["snr", f"mi_{args.unit}", f"half_integral_{args.unit}", f"residual_{args.unit}", "within_tol"],
                    zip(snrs, mi * s, half * s, res * s, flags))
    else:
        text = _json({"input": args.input, "unit": args.unit, "tol_nats": args.tol, "ok": ok,
                      "rows": [{"snr": _num(g), "mi": _num(m * s), "half_integral": _num(h * s),
                                "residual": _num(r * s)} for g, m, h, r in zip(snrs, mi, half, res)]})
    _emit(args, text, f"identity-{args.input}")
    for g, r in zip(snrs, res):
        print(f"snr={_fmt(g)} residual={r:.3e} nats", file=sys.stderr)
    if not ok:
        raise ConsistencyError(f"I-MMSE residual {res.max():.3e} exceeds {args.tol:.1e}")
    return EXIT_OK


def cmd_crossing(args) -> int:
    inp = _discrete(args)
    grid = crossing_grid(args.sigma2, step=args.step, gamma_max=args.gamma_max)
    q = q_function(args.sigma2, lambda g: mmse_discrete(inp, g), grid)
    try:
        report = find_crossing(q, tol=args.tol)
        failure = None if report.ok else "single-crossing properties fail"
    except PropertyViolation as exc:
        report, failure = exc.report, str(exc)
    if args.format == "csv":
        text = _csv(["gamma", "q"], zip(q.grid, q.samples))
    else:
        text = _json({"input": args.input, "sigma2": args.sigma2, "report": report.as_dict()})
    _emit(args, text, f"crossing-{args.input}")
    print(f"crossing={report.crossing} sign_changes={report.sign_changes} ok={report.ok}", file=sys.stderr)
    if failure:
        raise PropertyViolation(failure, report)
    return EXIT_OK


# -- profiles / regions -----------------------------------------------------------

def _bundle(args) -> tuple:
    kind = args.kind
    if kind == "wiretap-dmax":
        return ProfileBundle(wiretap_dmax_profile(args.snr_y)), None
    if kind == "wiretap-secrecy":
        if args.snr_z is None:
            raise DomainError("--kind wiretap-secrecy needs --snr-z")
        return wiretap_secrecy_bundle(args.snr_z, args.snr_y), args.snr_z
    if kind == "wiretap-rate":
        if args.rate is None:
            raise DomainError("--kind wiretap-rate needs --rate (nats)")
        if args.snr_z is not None:
            ChannelScenario(args.snr_z, args.snr_y)
        return wiretap_rate_profile(args.snr_y, args.rate), args.snr_z
    sc = _scenario(args)
    builder = {"bc-good": bc_good_profile, "bcc-secrecy": bcc_complete_secrecy_profile,
               "bcc-secure": bcc_optimal_secure_profile}[kind]
    return builder(sc), sc.snr_z


def _profile_rates(bundle: ProfileBundle, snr_z, snr_y: float) -> dict:
    out = {"mi_x": bundle.total.integrate_half(0.0, snr_y)}
    if bundle.given_wy is not None:
        if snr_z is None:
            out["rate_wy"] = rate_between_curves(bundle.total, bundle.given_wy, 0.0, snr_y).value_nats
        else:
            r = wiretap_rate_from_profiles(bundle, snr_z, snr_y)
            out["rate_wy"], out["equivocation"] = r.rate, r.equivocation
    if bundle.given_wz is not None and snr_z is not None:
        out["rate_wz"] = rate_between_curves(bundle.total, bundle.given_wz, 0.0, snr_z).value_nats
        out["rate_wy_given_wz"] = bundle.given_wz.integrate_half(0.0, snr_y)
    return out


def _left_value(curve, b: float) -> float:
    for seg in curve.segments:
        if seg.hi == b:
            return float(seg.value(b))
    return float(curve(b))


def _secure_reference(args, snr_z):
    """MMSE(x;g|W_y) of a completely secure code, drawn next to wiretap profiles."""
    if not args.kind.startswith("wiretap") or snr_z is None:
        return None
    return wiretap_secrecy_bundle(snr_z, args.snr_y).given_wy


def _profile_rows(bundle: ProfileBundle, grid, secure=None) -> list:
    curves = [bundle.total, bundle.given_wy, bundle.given_wz, secure]
    cuts = sorted({b for c in curves if c is not None for b in c.breakpoints})
    rows = []
    for g in sorted(set(map(float, grid)) | set(cuts)):
        if g in cuts:
            # left limit first so step discontinuities plot as vertical jumps
            rows.append([g, mmse_gaussian(1.0, g)] + [None if c is None else _left_value(c, g) for c in curves])
        rows.append([g, mmse_gaussian(1.0, g)] + [None if c is None else float(c(g)) for c in curves])
    return rows


def cmd_profile(args) -> int:
    bundle, snr_z = _bundle(args)
    s = _scale(args.unit)
    rates = {k: _num(v * s) for k, v in _profile_rates(bundle, snr_z, args.snr_y).items()}
    if args.format == "csv":
        gmax = args.gamma_max if args.gamma_max is not None else 1.25 * args.snr_y
        if args.points < 2 or not gmax > 0:
            raise DomainError("need --points >= 2 and a positive --gamma-max")
        header = ["gamma", "mmse_gaussian", "mmse", "mmse_given_wy", "mmse_given_wz", "mmse_given_wy_secure"]
        rows = _profile_rows(bundle, np.linspace(0.0, gmax, args.points), _secure_reference(args, snr_z))
        text = _csv(header, rows)
    else:
        params = {"snr_z": snr_z, "snr_y": args.snr_y, "snr_u": args.snr_u, "alpha": args.alpha,
                  "beta": args.beta, "rate": args.rate}
        text = _json({"kind": args.kind, "unit": args.unit, "params": params,
                      "profiles": bundle.as_dict(), "rates": rates})
    _emit(args, text, f"profile-{args.kind}")
    return EXIT_OK


def cmd_region(args) -> int:
    if args.kind in ("bc-constrained", "bcc-constrained") and (args.snr_u is None or args.alpha is None):
        raise DomainError(f"--kind {args.kind} needs --snr-u and --alpha")
    sc = _scenario(args)
    plain = ChannelScenario(sc.snr_z, sc.snr_y)
    beta_grid = None if args.beta_points is None else chebyshev_grid(0.0, 1.0, args.beta_points)
    if args.kind == "bc":
        region = bc_region(plain, beta_grid)
    elif args.kind == "bcc":
        region = bcc_secrecy_region(plain, beta_grid)
    else:
        kw = {} if args.beta_points is None else {"beta_points": args.beta_points}
        if args.kind == "bc-constrained":
            if args.lambda_points is not None:
                kw["lambda_points"] = args.lambda_points
            region = bc_region_constrained(sc, **kw)
        else:
            region = bcc_region_constrained(sc, **kw)
        if args.reference:
            ref = bc_region(plain) if args.kind == "bc-constrained" else bcc_secrecy_region(plain)
            region = region.with_reference(ref)
    if args.pareto:
        region = region.pareto()
    text = region.to_csv(args.unit) if args.format == "csv" else region.to_json(args.unit)
    _emit(args, text, f"region-{args.kind}")
    return EXIT_OK


# -- codebooks ---------------------------------------------------------------------

def _codebook(args) -> codesim.Codebook:
    if args.code == "superposition":
        return codesim.build_superposition(args.n, args.beta, args.m_v, args.m_u, args.seed)
    if args.code == "binned":
        return codesim.build_binned_wiretap(args.n, args.m, args.bins, args.seed)
    if not args.atoms:
        raise DomainError("--code points needs --atoms")
    return codesim.codebook_from_points(_floats(args.atoms))


def _label(name):
    return None if name in (None, "none") else name


def cmd_simulate(args) -> int:
    cb = _codebook(args)
    if args.save_codebook:
        for path in cb.save(args.save_codebook):
            print(f"wrote {path}", file=sys.stderr)
    rows = []
    for g in args.gamma:
        if args.estimate == "mmse":
            est = codesim.mc_mmse(cb, g, _label(args.conditioning), args.samples, args.seed, args.workers)
            scale = 1.0
        else:
            est = codesim.mc_mutual_info(cb, g, args.variable, _label(args.conditioning), args.samples,
                                         args.seed, args.workers)
            scale = _scale(args.unit)
        rows.append((g, est.mean * scale, est.std_err * scale, est.samples, est.seed))
    col = "mmse" if args.estimate == "mmse" else f"mi_{args.unit}"
    if args.format == "csv":
        text = _csv(["gamma", col, "std_err", "samples", "seed"], rows)
    else:
        text = _json({"code": args.code, "n": cb.n, "M": cb.size, "estimate": args.estimate, "unit": args.unit,
                      "conditioning": _label(args.conditioning), "variable": args.variable,
                      "rows": [{"gamma": _num(g), "mean": _num(m), "std_err": _num(e), "samples": n, "seed": sd}
                               for g, m, e, n, sd in rows]})
    _emit(args, text, f"simulate-{args.code}-{args.estimate}")
    return EXIT_OK


def _round_tree(obj):
    """Round every float of a nested report to 12 significant digits."""
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    return _num(obj)


def cmd_check(args) -> int:
    cb = _codebook(args)
    failure = None
    if args.property == "decoding":
        if args.snr_z is None:
            raise DomainError("--property decoding needs --snr-z")
        grid = args.gamma if args.gamma else list(np.linspace(args.snr_z, 2.0 * args.snr_z, 5))
        rep = codesim.check_reliable_decoding_equality(cb, args.snr_z, grid, args.samples, args.seed, args.workers)
        body = rep.as_dict()
        rows = [(p.gamma, p.total.mean, p.given.mean, p.gap, p.sigma, "yes" if p.gamma >= rep.snr_z else "no")
                for p in rep.points]
        header = ["gamma", "mmse", "mmse_given_wz", "gap", "sigma", "tested"]
        if not rep.concave:
            failure = "conditional MMSE exceeds the unconditional MMSE beyond noise"
        elif args.expect == "equality" and not rep.consistent_with_equality:
            failure = "expected equality above snr_z, found a gap"
        elif args.expect == "gap" and rep.consistent_with_equality:
            failure = "expected a gap above snr_z, found equality"
        print(f"{rep.status}; decodable={rep.decodable}", file=sys.stderr)
    elif args.property == "saturation":
        if args.snr is None:
            raise DomainError("--property saturation needs --snr")
        rep = codesim.check_saturation_equivalence(cb, args.snr, args.samples, args.seed, args.workers)
        s = _scale(args.unit)
        body = rep.as_dict()
        body["unit"] = args.unit
        for key in ("leakage", "bin_info"):
            body[key]["mean"] *= s
            body[key]["std_err"] *= s
        body["bin_rate"] *= s
        body["capacity"] *= s
        header = ["quantity", "value", "std_err"]
        rows = [("leakage", body["leakage"]["mean"], body["leakage"]["std_err"]),
                ("bin_info", body["bin_info"]["mean"], body["bin_info"]["std_err"]),
                ("bin_rate", body["bin_rate"], 0.0), ("capacity", body["capacity"], 0.0)]
    else:
        if args.snr is None:
            raise DomainError("--property immse needs --snr")
        rep = codesim.finite_n_immse(cb, args.snr, args.points, args.samples, args.seed, args.workers)
        body = rep.as_dict()
        header = ["gamma", "mmse", "std_err"]
        rows = [(p["gamma"], p["mean"], p["std_err"]) for p in body["points"]]
        if not rep.ok:
            failure = f"finite-n I-MMSE residual {rep.residual:.3e} exceeds {rep.tolerance:.3e}"
        print(f"residual={rep.residual:.3e} tolerance={rep.tolerance:.3e}", file=sys.stderr)
    body = {"property": args.property, "code": args.code, "n": cb.n, "M": cb.size, "report": _round_tree(body)}
    text = _csv(header, rows) if args.format == "csv" else _json(body)
    _emit(args, text, f"check-{args.property}")
    if failure:
        raise PropertyViolation(failure)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------

def _common(p, fmt="csv"):
    p.add_argument("--out", help=f"output file (default: ${OUTPUT_DIR_ENV}/<name>.<ext> or stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=fmt)
    p.add_argument("--unit", choices=("nats", "bits"), default="nats", help="unit of rates on output")


def _add_input(p):
    p.add_argument("--input", default="bpsk", help="bpsk, pamM (e.g. pam4), gaussian or custom")
    p.add_argument("--atoms", help="comma-separated atoms for --input custom")
    p.add_argument("--probs", help="comma-separated probabilities (default uniform)")
    p.add_argument("--normalize", action="store_true", help="rescale custom atoms to unit power")


def _add_scenario(p):
    p.add_argument("--snr-z", type=float, help="weak receiver / eavesdropper SNR")
    p.add_argument("--snr-y", type=float, required=True, help="strong receiver SNR")
    p.add_argument("--snr-u", type=float, help="unintended receiver SNR")
    p.add_argument("--alpha", type=float, help="disturbance budget: MMSE(snr_u) <= alpha/(1+alpha snr_u)")
    p.add_argument("--beta", type=float, default=1.0, help="power split in [0, 1]")


def _add_codebook(p):
    p.add_argument("--code", choices=CODE_KINDS, default="superposition")
    p.add_argument("--n", type=int, default=4, help="blocklength")
    p.add_argument("--beta", type=float, default=0.5, help="superposition power split")
    p.add_argument("--m-v", type=int, default=4, help="cloud centres (W_z messages)")
    p.add_argument("--m-u", type=int, default=4, help="satellites per cloud (W_y messages)")
    p.add_argument("--m", type=int, default=64, help="binned code size")
    p.add_argument("--bins", type=int, default=8, help="number of bins (W_s messages)")
    p.add_argument("--atoms", help="comma-separated scalar codewords for --code points")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1, help="independent substreams; output depends on it")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="immse", description="MMSE curves, I-MMSE checks, code profiles, "
                                     "rate regions and finite-blocklength simulations for Gaussian channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mmse", help="MMSE and mutual information curves of an input law")
    _add_input(p)
    p.add_argument("--snr-max", type=float, default=20.0)
    p.add_argument("--points", type=int, default=201)
    _common(p)
    p.set_defaults(func=cmd_mmse)

    p = sub.add_parser("identity", help="check I(snr) = 0.5 * int_0^snr MMSE")
    _add_input(p)
    p.add_argument("--snr", type=float, nargs="+", required=True)
    p.add_argument("--tol", type=float, default=1e-6, help="allowed residual in nats")
    _common(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("crossing", help="single-crossing check against a Gaussian MMSE")
    _add_input(p)
    p.add_argument("--sigma2", type=float, default=1.0, help="variance of the Gaussian reference")
    p.add_argument("--step", type=float, default=1e-3, help="linear grid step below the knee")
    p.add_argument("--gamma-max", type=float, help="end of the SNR grid")
    p.add_argument("--tol", type=float, default=1e-9)
    _common(p, "json")
    p.set_defaults(func=cmd_crossing)

    p = sub.add_parser("profile", help="MMSE profiles of optimal codes")
    p.add_argument("--kind", choices=PROFILE_KINDS, required=True)
    _add_scenario(p)
    p.add_argument("--rate", type=float, help="message rate in nats (wiretap-rate)")
    p.add_argument("--gamma-max", type=float, help="CSV grid end (default 1.25 snr_y)")
    p.add_argument("--points", type=int, default=401, help="CSV grid size")
    _common(p, "json")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("region", help="BC / BCC rate regions, optionally MMSE constrained")
    p.add_argument("--kind", choices=REGION_KINDS, required=True)
    _add_scenario(p)
    p.add_argument("--beta-points", type=int, help="beta samples per branch (default 256)")
    p.add_argument("--lambda-points", type=int, help="time-sharing samples (default 64)")
    p.add_argument("--reference", action="store_true", help="append the unconstrained region as 'reference' rows")
    p.add_argument("--pareto", action="store_true", help="keep only the upper-right boundary")
    _common(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("simulate", help="Monte Carlo MMSE / mutual information of an explicit codebook")
    _add_codebook(p)
    p.add_argument("--estimate", choices=("mmse", "mi"), default="mmse")
    p.add_argument("--gamma", type=float, nargs="+", required=True)
    p.add_argument("--conditioning", default="none", help="label known to the receiver: none, wz, wy, bin, wp")
    p.add_argument("--variable", default="x", help="for --estimate mi: x or a label name")
    p.add_argument("--save-codebook", help="write <path>.json and <path>.csv")
    _common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check", help="empirical checks on explicit codebooks")
    p.add_argument("--property", choices=CHECKS, required=True)
    _add_codebook(p)
    p.add_argument("--snr-z", type=float, help="decoding: SNR of the W_z receiver")
    p.add_argument("--snr", type=float, help="saturation / immse: channel SNR")
    p.add_argument("--gamma", type=float, nargs="+", help="decoding: SNR grid (default 5 points on [snr_z, 2 snr_z])")
    p.add_argument("--points", type=int, default=60, help="immse: trapezoid grid size")
    p.add_argument("--expect", choices=("equality", "gap", "none"), default="none",
                   help="decoding: fail with exit 4 unless this outcome is observed")
    _common(p, "json")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericError as exc:
        where = "" if exc.gamma is None else f" (gamma={exc.gamma!r})"
        print(f"numerical failure: {exc}{where}", file=sys.stderr)
        return EXIT_NUMERIC
    except (PropertyViolation, ConsistencyError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
