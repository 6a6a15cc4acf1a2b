"""Command-line front end: verify | spectrum | index | decompose | brane-check.

Exit codes: 0 success, 1 check failure, 2 configuration error,
3 indeterminate index.  Identical configuration and seed produce
byte-identical artifacts; timings are printed to stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import torus
from .fiber import standard_fiber, zero_one_star_projector
from .gengeo import LinearBraneDatum, fiber_families, hyperbrane_condition
from .quaternions import TwistorPoint, UnitQuaternion, ZETA_J, sample_zetas, \
    random_twistor_point, random_unit_quaternion
from .report import (FLOAT_FMT, CheckResult, SPECTRUM_CSV_HEADER,
                     report_json, spectrum_csv_rows, write_report,
                     write_spectrum_csv)
from .reptheory import antiholomorphic_triple, primitive_decompose
from .symmetry import check_ids, verify_identity
from .torus import (LatticeSpec, build_gauge_field, dirac_index,
                    lichnerowicz_laplacian, spectrum as torus_spectrum,
                    verify_corollary_1_2, verify_theorem_1_1,
                    verify_theorem_3_1, verify_theorem_3_10)


class ConfigError(Exception):
    pass


def _log(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _parse_config_file(path: str) -> dict:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"bad config line: {line!r}")
                key, val = line.split("=", 1)
                out[key.strip()] = val.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    return out


_DEFAULTS = {
    "n": 1, "N": 4, "m": 1, "k": 16, "seed": 0, "tol": None, "tau": 0.5,
    "zetas": "axes", "workers": 0, "out": None,
}

_INT_KEYS = {"n", "N", "m", "k", "seed", "workers"}
_FLOAT_KEYS = {"tol", "tau"}


def _resolve(args: argparse.Namespace) -> dict:
    """Merge flags > config file > defaults."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        fromfile = _parse_config_file(args.config)
        unknown = set(fromfile) - set(_DEFAULTS) - {"suite"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, val in fromfile.items():
            if key in _INT_KEYS:
                cfg[key] = int(val)
            elif key in _FLOAT_KEYS:
                cfg[key] = float(val)
            else:
                cfg[key] = val
    for key in cfg:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    if cfg["workers"] in (0, None):
        cfg["workers"] = int(os.environ.get("HKLAB_WORKERS",
                                            os.cpu_count() or 1))
    if cfg["n"] < 1:
        raise ConfigError("n >= 1 required")
    if cfg["N"] < 3:
        raise ConfigError("N >= 3 required")
    if cfg["k"] < 1:
        raise ConfigError("k >= 1 required")
    if not (0.0 < cfg["tau"] < 1.0):
        raise ConfigError("tau must lie in (0, 1)")
    return cfg


def _zeta_list(spec: str, seed: int) -> list[TwistorPoint]:
    if spec.startswith("list:"):
        pts = []
        for chunk in spec[5:].split(";"):
            vals = [float(x) for x in chunk.split(",")]
            if len(vals) != 3:
                raise ConfigError("zeta list entries need three components")
            pts.append(TwistorPoint.from_array(np.array(vals)
                                               / np.linalg.norm(vals)))
        if not pts:
            raise ConfigError("empty zeta list")
        return pts
    try:
        return sample_zetas(spec)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    suite = args.suite
    results: list[CheckResult] = []
    rng = np.random.default_rng(cfg["seed"])
    t0 = time.time()
    if suite in ("fiber", "all"):
        fiber = standard_fiber(cfg["n"])
        tol = cfg["tol"] if cfg["tol"] else 1e-10
        with ThreadPoolExecutor(max_workers=cfg["workers"]) as pool:
            futs = [pool.submit(verify_identity, cid, fiber, cfg["seed"], tol)
                    for cid in check_ids()]
            results.extend(f.result() for f in futs)
    if suite in ("torus", "all"):
        spec = LatticeSpec(cfg["n"], cfg["N"])
        zeta = random_twistor_point(rng)
        eta = random_unit_quaternion(rng)
        zetas5 = [random_twistor_point(rng) for _ in range(5)]
        field_m = build_gauge_field(spec, cfg["m"] if cfg["m"] else 1)
        results.append(verify_theorem_1_1(field_m, zeta, eta,
                                          k=cfg["k"], seed=cfg["seed"]))
        results.append(verify_theorem_3_1(build_gauge_field(spec, 0), zetas5,
                                          eta, k=cfg["k"], seed=cfg["seed"]))
        results.append(verify_corollary_1_2(field_m, sample_zetas("axes"),
                                            seed=cfg["seed"]))
        results.append(verify_theorem_3_10(build_gauge_field(spec, 3),
                                           seed=cfg["seed"]))
    _log(f"verify suite={suite} ran in {time.time() - t0:.1f}s")
    for r in results:
        print(r.summary_line())
    if cfg["out"]:
        write_report(results, cfg["out"])
    else:
        sys.stdout.write(report_json(results))
    failures = [r.check_id for r in results if not r.verdict]
    if failures:
        print("failed checks: " + ", ".join(failures))
        return 1
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    spec = LatticeSpec(cfg["n"], cfg["N"])
    field = build_gauge_field(spec, cfg["m"])
    fiber = torus.model_fiber(cfg["n"])
    zetas = _zeta_list(cfg["zetas"], cfg["seed"])
    t0 = time.time()

    def one(z: TwistorPoint) -> list[str]:
        delta = lichnerowicz_laplacian(field, z)
        rep = torus_spectrum(delta, zero_one_star_projector(fiber, z),
                             cfg["k"], zeta=z, slice_label="0*",
                             kernel_tau=cfg["tau"], seed=cfg["seed"])
        return spectrum_csv_rows(z, "0*", rep.eigenvalues)

    with ThreadPoolExecutor(max_workers=cfg["workers"]) as pool:
        blocks = list(pool.map(one, zetas))
    rows = [row for block in blocks for row in block]
    _log(f"spectrum over {len(zetas)} zetas in {time.time() - t0:.1f}s")
    if cfg["out"]:
        write_spectrum_csv(rows, cfg["out"])
    else:
        print(SPECTRUM_CSV_HEADER)
        for row in rows:
            print(row)
    return 0


def cmd_index(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    spec = LatticeSpec(cfg["n"], cfg["N"])
    field = build_gauge_field(spec, cfg["m"])
    zetas = _zeta_list(cfg["zetas"], cfg["seed"])
    t0 = time.time()
    with ThreadPoolExecutor(max_workers=cfg["workers"]) as pool:
        results = list(pool.map(
            lambda z: dirac_index(field, z, tau=cfg["tau"], seed=cfg["seed"]),
            zetas))
    _log(f"index over {len(zetas)} zetas in {time.time() - t0:.1f}s")
    payload = {
        "params": {"n": cfg["n"], "N": cfg["N"], "m": cfg["m"],
                   "seed": cfg["seed"], "tau": FLOAT_FMT % cfg["tau"]},
        "per_zeta": [
            {
                "zeta": [FLOAT_FMT % c for c in z.as_array()],
                "index": r.value,
                "even_count": r.even_count,
                "odd_count": r.odd_count,
                "threshold": FLOAT_FMT % r.threshold,
                "gap": FLOAT_FMT % r.gap,
                "determinate": r.determinate,
            }
            for z, r in zip(zetas, results)
        ],
    }
    text = json.dumps(payload, indent=2) + "\n"
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if any(not r.determinate for r in results):
        print("indeterminate at this N")
        return 3
    values = {r.value for r in results}
    if len(values) > 1:
        print(f"index disagrees across zetas: {sorted(values)}")
        return 1
    r0 = results[0]
    print(values.pop())
    print(f"even kernel count: {r0.even_count}, odd kernel count: "
          f"{r0.odd_count}, threshold: {r0.threshold:.6e}")
    if not cfg["out"]:
        sys.stdout.write(text)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    fiber = standard_fiber(cfg["n"])
    try:
        with open(args.input, encoding="utf-8") as fh:
            tokens = fh.read().split()
        vec = np.array([complex(t) for t in tokens])
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot parse fiber element: {exc}") from exc
    if len(vec) != fiber.dim:
        raise ConfigError(
            f"expected {fiber.dim} coefficients for n={cfg['n']}, "
            f"got {len(vec)}")
    triple = antiholomorphic_triple(fiber)
    comps = primitive_decompose(fiber, vec, triple)
    recon = np.zeros(fiber.dim, dtype=complex)
    for (_q, i, t) in comps:
        v = t
        for _ in range(i):
            v = triple.L.matrix @ v
        recon += v
    residual = float(np.linalg.norm(recon - vec)
                     / max(1.0, np.linalg.norm(vec)))
    payload = {
        "components": [
            {"q": q, "i": i, "norm": FLOAT_FMT % float(np.linalg.norm(t))}
            for (q, i, t) in comps
        ],
        "reconstruction_residual": FLOAT_FMT % residual,
    }
    text = json.dumps(payload, indent=2) + "\n"
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def _parse_brane_file(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Rows of the subspace basis, a line 'F', then the F matrix rows."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh
                     if ln.strip() and not ln.strip().startswith("#")]
    except OSError as exc:
        raise ConfigError(f"cannot read brane file: {exc}") from exc
    if "F" not in lines:
        raise ConfigError("brane file needs an 'F' separator line")
    split = lines.index("F")
    try:
        basis = np.array([[float(x) for x in ln.split()]
                          for ln in lines[:split]])
        F = np.array([[float(x) for x in ln.split()]
                      for ln in lines[split + 1:]])
    except ValueError as exc:
        raise ConfigError(f"cannot parse brane file: {exc}") from exc
    if basis.ndim != 2 or F.ndim != 2:
        raise ConfigError("brane file must contain two rectangular blocks")
    return basis, F


def cmd_brane_check(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    basis, F = _parse_brane_file(args.input)
    if basis.shape[1] % 4 != 0:
        raise ConfigError("ambient dimension must be a multiple of 4")
    n = basis.shape[1] // 4
    fiber = standard_fiber(n)
    families = fiber_families(fiber)
    if args.family not in families:
        raise ConfigError("family must be BBB or ABA")
    try:
        datum = LinearBraneDatum(basis, F)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    samples = sample_zetas("full")
    tol = cfg["tol"] if cfg["tol"] else 1e-10
    verdict, info = hyperbrane_condition(datum, families[args.family],
                                         samples, tol=tol)
    payload = {
        "family": args.family,
        "hyperbrane": verdict,
        "worst_defect": FLOAT_FMT % info["worst"],
        "defects": [
            {"zeta": [FLOAT_FMT % c for c in z],
             "defect": FLOAT_FMT % dv}
            for z, dv in sorted(info["defects"].items())
        ],
    }
    text = json.dumps(payload, indent=2) + "\n"
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hklab",
        description="spectral laboratory for flat hyperkahler fibers and "
                    "constant-flux torus Dirac operators")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=None,
                       help="quaternionic dimension of the fiber")
        p.add_argument("--N", type=int, default=None,
                       help="lattice sites per axis")
        p.add_argument("--m", type=int, default=None,
                       help="flux multiplier of the gauge field")
        p.add_argument("--k", type=int, default=None,
                       help="number of eigenvalues per slice")
        p.add_argument("--zetas", type=str, default=None,
                       help="axes | fibonacci | j | list:a,b,c;...")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol", type=float, default=None,
                       help="tolerance override for checks")
        p.add_argument("--tau", type=float, default=None,
                       help="kernel threshold fraction of the first gap")
        p.add_argument("--workers", type=int, default=None,
                       help="worker pool size (env HKLAB_WORKERS)")
        p.add_argument("--out", type=str, default=None,
                       help="artifact output path")
        p.add_argument("--config", type=str, default=None,
                       help="flat key=value config file")

    p = sub.add_parser("verify", help="run identity and theorem checks")
    p.add_argument("--suite", choices=("fiber", "torus", "all"), default="all")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="eigenvalue sweep over twistor points")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("index", help="even/odd kernel index of the flux Dirac")
    common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("decompose", help="primitive decomposition of a fiber "
                                         "element file")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("brane-check", help="hyperbrane condition for a "
                                           "subspace/field-strength file")
    p.add_argument("--input", required=True)
    p.add_argument("--family", choices=("BBB", "ABA"), required=True)
    common(p)
    p.set_defaults(func=cmd_brane_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
