"""Command-line front end: ``fracspec <command> (--preset NAME | --config FILE) [options]``.

Each command writes a report (CSV or text) plus ``<command>.summary.json`` into
the output directory and echoes the summary on stdout. Exit codes: 0 pass or
done, 1 fail (check commands only), 2 configuration error, 3 computation error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import bounds, cantor
from .errors import ConfigError, FracSpecError, SizeOverflow
from .hadamard import check_hadamard, dual_lattice, hadamard_matrix, incongruent_mod_dual, transfer_one
from .ifs import AffineIFS, MuHatEvaluator, validate
from .numerics import hermitian_extremes
from .presets import RunConfig, load_config, preset, preset_names, to_dict
from .spectra import (SpectrumSet, find_extreme_cycles, format_point, s_chain_membership,
                      s_iterate, spectrum_from_cycles, write_spectrum)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_COMPUTE = 0, 1, 2, 3
COMMANDS = ("check-hadamard", "dual-lattice", "cycles", "spectrum", "membership",
            "bessel-scan", "frame-cert", "gram", "schur", "cantor-demo", "pq-matrix")
TRANSFER_SAMPLES = 100


def fmt(x) -> str:
    return "%.12e" % float(x)


def _ifs(cfg: RunConfig) -> AffineIFS:
    ifs = AffineIFS(cfg.R, cfg.B)
    validate(ifs)
    return ifs


def _pair(cfg):
    if cfg.L is None:
        raise ConfigError("this command needs L")
    return check_hadamard(_ifs(cfg), cfg.L)


def build_spectrum(cfg: RunConfig) -> SpectrumSet:
    if cfg.spectrum_source == "explicit":
        return SpectrumSet.of(cfg.spectrum_points)
    if cfg.spectrum_source == "s-iterate":
        return s_iterate(cfg.R, cfg.L, [(0,) * cfg.dim], cfg.depth)
    return spectrum_from_cycles(find_extreme_cycles(_pair(cfg)), cfg.R, cfg.L, cfg.depth)


def _capped_spectrum(cfg):
    spec = build_spectrum(cfg)
    if len(spec) > cfg.caps.gram_points:
        raise SizeOverflow(f"{len(spec)} spectrum points exceed caps.gram_points = {cfg.caps.gram_points}")
    return spec


def _require_cantor3(cfg):
    if cfg.dim != 1 or cfg.R != ((3,),) or sorted(cfg.B) != [(0,), (2,)]:
        raise ConfigError("this command reproduces the middle-third example; use R=3, B={0,2}")


# --------------------------------------------------------------------------- commands
# each returns (summary, {filename: text}, verdict) with verdict None for report-only


def cmd_check_hadamard(cfg):
    pair = _pair(cfg)
    H = hadamard_matrix(pair.ifs, pair.L)
    rng = np.random.default_rng(cfg.seed)
    x = rng.uniform(-10, 10, size=(TRANSFER_SAMPLES, cfg.dim))
    t = transfer_one(pair.ifs, pair.L, x if cfg.dim > 1 else x[:, 0])
    lines = ["i,j,re,im"] + [f"{i},{j},{fmt(H[i, j].real)},{fmt(H[i, j].imag)}"
                             for i in range(H.shape[0]) for j in range(H.shape[1])]
    summary = {"unitarity_deviation": fmt(pair.unitarity_deviation),
               "accepted": pair.accepted,
               "transfer_max_deviation": fmt(np.max(np.abs(t - 1.0))),
               "transfer_samples": TRANSFER_SAMPLES}
    return summary, {"hadamard.csv": "\n".join(lines) + "\n"}, pair.accepted


def cmd_dual_lattice(cfg):
    ifs = _ifs(cfg)
    lat = dual_lattice(ifs.B, ifs.dim)
    text = "".join(format_point(b) + "\n" for b in lat.generators)
    summary = {"basis": [format_point(b) for b in lat.generators],
               "invariant_under_RT": lat.is_invariant(ifs.RT)}
    if cfg.L is not None:
        summary["L_incongruent"] = incongruent_mod_dual(check_hadamard(ifs, cfg.L), lat)
    return summary, {"dual_lattice.txt": text}, None


def cmd_cycles(cfg):
    cycles = find_extreme_cycles(_pair(cfg))
    lines = ["cycle,length,points,digits,extreme"]
    for i, c in enumerate(cycles):
        pts = "|".join(format_point(p) for p in c.points)
        dig = "|".join(" ".join(str(v) for v in d) for d in c.digits)
        lines.append(f"{i},{len(c)},{pts},{dig},{str(c.extreme).lower()}")
    summary = {"cycles": len(cycles), "extreme": sum(c.extreme for c in cycles)}
    return summary, {"cycles.csv": "\n".join(lines) + "\n"}, None


def cmd_spectrum(cfg):
    spec = build_spectrum(cfg)
    os.makedirs(cfg.output, exist_ok=True)
    write_spectrum(spec, os.path.join(cfg.output, "spectrum.txt"))
    summary = {"points": len(spec), "provenance": spec.label, "note": spec.truncation_note}
    return summary, {}, None


def cmd_membership(cfg):
    if not cfg.queries:
        raise ConfigError("membership needs 'queries'")
    pair = _pair(cfg)
    lat = dual_lattice(pair.ifs.B, pair.ifs.dim)
    lines = ["point,depth,member"]
    results = {}
    for q in cfg.queries:
        member = s_chain_membership(q, pair, lat, cfg.depth)
        lines.append(f"{format_point(q)},{cfg.depth},{str(member).lower()}")
        results[format_point(q)] = member
    summary = {"depth": cfg.depth, "results": results,
               "lattice_invariant": lat.is_invariant(pair.ifs.RT)}
    return summary, {"membership.csv": "\n".join(lines) + "\n"}, None


def cmd_bessel_scan(cfg):
    series = bounds.bessel_scan(_ifs(cfg), build_spectrum(cfg), cfg.r0, cfg.n_max,
                                cap=cfg.caps.columns)
    s = series.sigma_max()
    summary = {"r0": fmt(cfg.r0), "n_max": cfg.n_max, "sigma_max_last": fmt(s[-1]),
               "strictly_increasing": all(b > a for a, b in zip(s, s[1:])),
               "scope": f"evidence up to n = {cfg.n_max}"}
    return summary, {"bessel_scan.csv": series.to_csv()}, None


def cmd_frame_cert(cfg):
    ifs = _ifs(cfg)
    cert = bounds.frame_certificate(ifs, build_spectrum(cfg), cfg.r0, cfg.n_max,
                                    ev=MuHatEvaluator(ifs, cfg.tail_tolerance), cap=cfg.caps.columns)
    summary = {"delta": fmt(cert.delta), "m_hat": fmt(cert.m_hat), "M_hat": fmt(cert.M_hat),
               "frame_evidence": cert.frame_evidence}
    files = {"frame_certificate.txt": cert.to_text(), "bessel_scan.csv": cert.series.to_csv()}
    return summary, files, cert.frame_evidence and cert.delta > 0


def cmd_gram(cfg):
    ifs = _ifs(cfg)
    spec = _capped_spectrum(cfg)
    G = bounds.gram_matrix(MuHatEvaluator(ifs, cfg.tail_tolerance), spec)
    lam_max, lam_min = hermitian_extremes(G, tol=1e-10)
    off = float(np.max(np.abs(G - np.diag(np.diag(G))))) if len(spec) > 1 else 0.0
    text = "points,lambda_max,lambda_min,max_offdiag\n" + \
        f"{len(spec)},{fmt(lam_max)},{fmt(lam_min)},{fmt(off)}\n"
    summary = {"points": len(spec), "lambda_max": fmt(lam_max), "lambda_min": fmt(lam_min),
               "max_offdiag": fmt(off)}
    return summary, {"gram.csv": text}, None


def cmd_schur(cfg):
    ifs = _ifs(cfg)
    spec = _capped_spectrum(cfg)
    s = bounds.schur_bound(MuHatEvaluator(ifs, cfg.tail_tolerance), spec)
    summary = {"points": len(spec), "schur_bound": fmt(s)}
    return summary, {"schur.csv": f"points,schur_bound\n{len(spec)},{fmt(s)}\n"}, None


def cmd_cantor_demo(cfg):
    _require_cantor3(cfg)
    text = cantor.bench_report(cfg.riesz_nmax, cfg.z_range)
    ok = all(line.endswith(",pass") for line in text.splitlines()[1:])
    summary = {"riesz_nmax": cfg.riesz_nmax, "z_range": cfg.z_range, "all_pass": ok}
    return summary, {"cantor_bench.csv": text}, ok


def cmd_pq_matrix(cfg):
    _require_cantor3(cfg)
    lines = ["n,rows,cols,norm,L,bessel_bound,L_lower"]
    for n in range(1, cfg.n_max + 1):
        M, rep = cantor.pq_matrix(cantor.PQConfig.standard(n))
        lines.append(f"{n},{M.shape[0]},{M.shape[1]},{fmt(rep.norm)},{fmt(rep.L)},"
                     f"{fmt(rep.bessel_bound)},{fmt(rep.L_lower)}")
    summary = {"n_max": cfg.n_max, "orientation": "rows indexed by P_n"}
    return summary, {"pq_matrix.csv": "\n".join(lines) + "\n"}, None


_DISPATCH = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def run(command: str, cfg: RunConfig) -> int:
    """Run one command; write reports into ``cfg.output``; return the exit code."""
    if command not in _DISPATCH:
        raise ConfigError(f"unknown command {command!r}")
    summary, files, verdict = _DISPATCH[command](cfg)
    os.makedirs(cfg.output, exist_ok=True)
    for name, text in files.items():
        with open(os.path.join(cfg.output, name), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    summary = {"command": command, "config": to_dict(cfg), **summary}
    if verdict is not None:
        summary["verdict"] = "pass" if verdict else "fail"
    blob = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    with open(os.path.join(cfg.output, f"{command}.summary.json"), "w",
              encoding="utf-8", newline="\n") as fh:
        fh.write(blob)
    sys.stdout.write(blob)
    if verdict is not None:
        print("pass" if verdict else "fail")
    return EXIT_OK if verdict in (None, True) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracspec", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="JSON run configuration")
    src.add_argument("--preset", help="one of: " + ", ".join(preset_names()))
    p.add_argument("--out", help="output directory (default: config 'output' or .)")
    p.add_argument("--r0", type=float)
    p.add_argument("--nmax", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--seed", type=int)
    return p


def config_from_args(args) -> RunConfig:
    cfg = preset(args.preset) if args.preset else load_config(args.config)
    over = {}
    if args.r0 is not None:
        if not args.r0 > 0:
            raise ConfigError("--r0 must be positive")
        over["r0"] = args.r0
    for flag, key, lo in (("nmax", "n_max", 1), ("depth", "depth", 0), ("seed", "seed", 0)):
        v = getattr(args, flag)
        if v is not None:
            if v < lo:
                raise ConfigError(f"--{flag} must be >= {lo}")
            over[key] = v
    if args.out is not None:
        over["output"] = args.out
    return cfg.replace(**over) if over else cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return run(args.command, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FracSpecError, ValueError) as exc:
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
