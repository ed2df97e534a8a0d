"""Batch front end: mask generation, single-image completion, benchmarking.

Subcommands
-----------
mask       write a sampling mask PNG (0 = missing, 255 = observed)
complete   inpaint one image with qlnf or tqlna, report PSNR/SSIM
benchmark  sweep a directory of images over sampling rates and methods,
           emitting one CSV row per (image, method, sr)

Parameter precedence: command-line flags override ``key=value`` lines from
--config, which override built-in defaults.  All randomness flows from
--seed, so identical invocations produce identical results (the
wall_seconds CSV column excepted).
"""

import argparse
import csv
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .imaging import (compare_images, gen_mask, image_to_quaternion,
                      load_image, load_mask, psnr, quaternion_to_image,
                      save_image, save_mask, ssim)
from .problem import CompletionProblem
from .qlnf import QlnfConfig, solve_qlnf
from .tqlna import TqlnaConfig, solve_tqlna

CSV_FIELDS = ["image", "method", "sr", "r_or_d", "lambda", "psnr_db", "ssim",
              "wall_seconds", "iterations", "status"]

SOLVER_METHODS = ("qlnf", "tqlna")
ALL_METHODS = SOLVER_METHODS + ("zero_fill",)

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff"}

# Overridable parameters: name -> (type, default).  None defaults mean
# "derive from the method defaults at run time".
PARAM_SPEC = {
    "method": (str, None),
    "sr": (str, None),
    "mask": (str, None),
    "seed": (int, 0),
    "lam": (float, None),
    "epsilon": (float, 0.1),
    "rank_d": (int, 10),
    "trunc_r": (int, 1),
    "rho": (float, 1.5),
    "beta0": (float, 0.003),
    "beta_max": (float, 1e7),
    "tol": (float, 1e-3),
    "max_iter": (int, None),
    "inner_tol": (float, 1e-4),
    "inner_max": (int, 500),
    "workers": (int, None),
}

# Accepted config-file spellings for parameters whose flag differs.
KEY_ALIASES = {"lambda": "lam", "rank-d": "rank_d", "trunc-r": "trunc_r",
               "beta-max": "beta_max", "max-iter": "max_iter",
               "inner-tol": "inner_tol", "inner-max": "inner_max"}


class CliError(Exception):
    """User-facing error; maps to exit code 2."""


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = KEY_ALIASES.get(key, key.replace("-", "_"))
        if key not in PARAM_SPEC:
            raise CliError(f"{path}:{lineno}: unknown parameter {key!r}")
        typ, _ = PARAM_SPEC[key]
        try:
            values[key] = typ(value)
        except ValueError as exc:
            raise CliError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def _merge_params(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit command-line flags."""
    merged = {name: default for name, (_, default) in PARAM_SPEC.items()}
    if getattr(args, "config", None):
        merged.update(_read_config_file(args.config))
    for name in PARAM_SPEC:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    if merged["workers"] is None:
        merged["workers"] = int(os.environ.get("QUATCOMP_WORKERS", "1"))
    return merged


def _parse_sr_value(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise CliError(f"bad sampling rate {text!r}") from exc
    if value > 1.0:
        value /= 100.0
    if not 0.0 <= value <= 1.0:
        raise CliError(f"sampling rate {text!r} must lie in [0, 1] (or 0..100 %)")
    return value


def _parse_sr_list(text: str) -> list:
    return [_parse_sr_value(part) for part in text.split(",") if part.strip()]


def _solver_config(method: str, params: dict):
    if method == "qlnf":
        lam = params["lam"] if params["lam"] is not None else 1.25e-5
        max_iter = params["max_iter"] if params["max_iter"] is not None else 200
        return QlnfConfig(d=params["rank_d"], lam=lam, epsilon=params["epsilon"],
                          tol=params["tol"], max_iter=max_iter,
                          seed=params["seed"])
    if method == "tqlna":
        outer_max = params["max_iter"] if params["max_iter"] is not None else 50
        return TqlnaConfig(r=params["trunc_r"], lam=params["lam"],
                           epsilon=params["epsilon"],
                           rho=params["rho"], beta0=params["beta0"],
                           beta_max=params["beta_max"], inner_tol=params["inner_tol"],
                           outer_tol=params["tol"], inner_max=params["inner_max"],
                           outer_max=outer_max)
    raise CliError(f"unknown method {method!r}")


def _run_method(method: str, problem: CompletionProblem, params: dict):
    """Returns (recovered quaternion matrix, iterations, wall_seconds)."""
    if method == "zero_fill":
        return problem.M_obs, 0, 0.0
    config = _solver_config(method, params)
    start = time.perf_counter()
    if method == "qlnf":
        result = solve_qlnf(problem, config)
    else:
        result = solve_tqlna(problem, config)
    wall = time.perf_counter() - start
    return result.X, result.iterations, wall


def _method_tag(method: str, params: dict):
    """(r_or_d, lambda) CSV values for a method."""
    if method == "qlnf":
        lam = params["lam"] if params["lam"] is not None else 1.25e-5
        return str(params["rank_d"]), repr(lam)
    if method == "tqlna":
        lam = params["lam"]
        return str(params["trunc_r"]), "auto" if lam is None else repr(lam)
    return "", ""


def _format_metric(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6f}"


def _write_rows(path: str, rows: list, append: bool = False) -> None:
    mode = "a" if append and Path(path).exists() else "w"
    with open(path, mode, newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_FIELDS)
        if mode == "w":
            writer.writeheader()
        writer.writerows(rows)


def cmd_mask(args: argparse.Namespace) -> int:
    params = _merge_params(args)
    if params["sr"] is None:
        raise CliError("mask requires --sr")
    sr = _parse_sr_value(params["sr"])
    W = gen_mask(args.rows, args.cols, sr, params["seed"])
    try:
        save_mask(args.out, W)
    except OSError as exc:
        raise CliError(f"cannot write mask {args.out}: {exc}") from exc
    print(f"wrote {args.out}: {int(W.sum())} of {W.size} entries observed "
          f"(sr={sr:g}, seed={params['seed']})")
    return 0


def _load_inputs(args, params):
    try:
        img = load_image(args.input)
    except OSError as exc:
        raise CliError(f"cannot read input image {args.input}: {exc}") from exc
    if (params["sr"] is None) == (params["mask"] is None):
        raise CliError("provide exactly one of --sr or --mask")
    if params["sr"] is not None:
        sr = _parse_sr_value(params["sr"])
        W = gen_mask(img.shape[0], img.shape[1], sr, params["seed"])
    else:
        try:
            W = load_mask(params["mask"])
        except OSError as exc:
            raise CliError(f"cannot read mask {params['mask']}: {exc}") from exc
        if W.shape != img.shape[:2]:
            raise CliError(f"mask {W.shape} does not match image {img.shape[:2]}")
        sr = float(W.mean())
    return img, W, sr


def cmd_complete(args: argparse.Namespace) -> int:
    params = _merge_params(args)
    method = params["method"]
    if method not in SOLVER_METHODS:
        raise CliError(f"--method must be one of {SOLVER_METHODS}")
    img, W, sr = _load_inputs(args, params)

    problem = CompletionProblem(M_obs=image_to_quaternion(img), W=W)
    X, iterations, wall = _run_method(method, problem, params)
    recovered = quaternion_to_image(X)
    try:
        save_image(args.output, recovered)
    except OSError as exc:
        raise CliError(f"cannot write output image {args.output}: {exc}") from exc

    truth = None
    if args.truth is not None:
        try:
            truth = load_image(args.truth)
        except OSError as exc:
            raise CliError(f"cannot read ground truth {args.truth}: {exc}") from exc
    elif params["sr"] is not None:
        truth = img  # synthetic degradation: the input is the reference

    if truth is not None:
        report = compare_images(truth, recovered)
        baseline_img = quaternion_to_image(problem.M_obs)
        base = compare_images(truth, baseline_img)
        print(f"{method}: PSNR {_format_metric(report.psnr_db)} dB, "
              f"SSIM {report.ssim:.4f} (zero-fill baseline "
              f"{_format_metric(base.psnr_db)} dB / {base.ssim:.4f}), "
              f"{iterations} iterations, {wall:.2f}s")
        if args.csv:
            csv_path = args.csv
            r_or_d, lam_str = _method_tag(method, params)
            rows = [
                {"image": str(args.input), "method": method, "sr": f"{sr:.6f}",
                 "r_or_d": r_or_d, "lambda": lam_str,
                 "psnr_db": _format_metric(report.psnr_db),
                 "ssim": f"{report.ssim:.6f}", "wall_seconds": f"{wall:.3f}",
                 "iterations": str(iterations), "status": "ok"},
                {"image": str(args.input), "method": "zero_fill", "sr": f"{sr:.6f}",
                 "r_or_d": "", "lambda": "",
                 "psnr_db": _format_metric(base.psnr_db),
                 "ssim": f"{base.ssim:.6f}", "wall_seconds": "0.000",
                 "iterations": "0", "status": "ok"},
            ]
            _write_rows(csv_path, rows, append=True)
    else:
        print(f"{method}: wrote {args.output} ({iterations} iterations, "
              f"{wall:.2f}s); no ground truth, metrics skipped")
    return 0


def _benchmark_task(task: dict) -> dict:
    """One (image, method, sr) benchmark cell; returns a CSV row."""
    row = {"image": task["name"], "method": task["method"],
           "sr": f"{task['sr']:.6f}", "r_or_d": task["r_or_d"],
           "lambda": task["lam_str"], "psnr_db": "", "ssim": "",
           "wall_seconds": "", "iterations": "", "status": "ok"}
    try:
        img = load_image(task["path"])
        W = gen_mask(img.shape[0], img.shape[1], task["sr"], task["mask_seed"])
        problem = CompletionProblem(M_obs=image_to_quaternion(img), W=W)
        X, iterations, wall = _run_method(task["method"], problem, task["params"])
        recovered = quaternion_to_image(X)
        row["psnr_db"] = _format_metric(psnr(img, recovered))
        row["ssim"] = f"{ssim(img, recovered):.6f}"
        row["wall_seconds"] = f"{wall:.3f}"
        row["iterations"] = str(iterations)
    except Exception as exc:  # per-image failures become error rows
        row["status"] = f"error: {exc}"
    return row


def cmd_benchmark(args: argparse.Namespace) -> int:
    params = _merge_params(args)
    methods = [m.strip() for m in (params["method"] or "qlnf,tqlna,zero_fill").split(",")
               if m.strip()]
    for method in methods:
        if method not in ALL_METHODS:
            raise CliError(f"unknown method {method!r}; choose from {ALL_METHODS}")
    sr_list = _parse_sr_list(params["sr"] or "0.1,0.25,0.5")
    if not sr_list:
        raise CliError("no sampling rates given")
    csv_path = args.csv

    directory = Path(args.dir)
    if not directory.is_dir():
        raise CliError(f"not a directory: {directory}")
    images = sorted(p for p in directory.iterdir()
                    if p.suffix.lower() in IMAGE_SUFFIXES)
    if not images:
        _write_rows(csv_path, [])
        print(f"warning: no images found in {directory}; wrote header-only CSV",
              file=sys.stderr)
        return 0

    tasks = []
    for img_idx, path in enumerate(images):
        for sr_idx, sr in enumerate(sr_list):
            mask_seed = params["seed"] + 1009 * img_idx + sr_idx
            for method in methods:
                r_or_d, lam_str = _method_tag(method, params)
                tasks.append({"path": str(path), "name": path.name,
                              "method": method, "sr": sr, "mask_seed": mask_seed,
                              "params": params, "r_or_d": r_or_d,
                              "lam_str": lam_str})

    workers = max(1, params["workers"])
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_benchmark_task, tasks))
    else:
        rows = [_benchmark_task(task) for task in tasks]

    rows.sort(key=lambda row: (row["image"], row["method"], float(row["sr"])))
    _write_rows(csv_path, rows)
    failures = sum(1 for row in rows if row["status"] != "ok")
    print(f"wrote {csv_path}: {len(rows)} rows ({failures} failures)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatcomp",
        description="Low-rank quaternion matrix completion for color images.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=None,
                       help="base seed for mask generation (default 0)")
        p.add_argument("--config", default=None,
                       help="key=value file; flags override its entries")

    def add_solver_flags(p):
        p.add_argument("--lambda", dest="lam", type=float, default=None,
                       help="penalty weight (default: 1.25e-5 for qlnf, "
                            "data-scaled for tqlna)")
        p.add_argument("--epsilon", type=float, default=None,
                       help="log-norm offset (default 0.1)")
        p.add_argument("--rank-d", dest="rank_d", type=int, default=None,
                       help="qlnf factor width d (default 10)")
        p.add_argument("--trunc-r", dest="trunc_r", type=int, default=None,
                       help="tqlna truncation r (default 1)")
        p.add_argument("--rho", type=float, default=None,
                       help="tqlna penalty growth factor (default 1.5)")
        p.add_argument("--beta0", type=float, default=None,
                       help="tqlna initial penalty (default 0.003)")
        p.add_argument("--beta-max", dest="beta_max", type=float, default=None,
                       help="tqlna penalty cap (default 1e7)")
        p.add_argument("--tol", type=float, default=None,
                       help="relative stopping tolerance (default 1e-3)")
        p.add_argument("--max-iter", dest="max_iter", type=int, default=None,
                       help="iteration cap (qlnf sweeps / tqlna outer steps)")
        p.add_argument("--inner-tol", dest="inner_tol", type=float, default=None,
                       help="tqlna inner ADMM tolerance, relative (default 1e-4)")
        p.add_argument("--inner-max", dest="inner_max", type=int, default=None,
                       help="tqlna inner ADMM iteration cap (default 500)")

    p_mask = sub.add_parser("mask", help="generate a sampling mask PNG")
    p_mask.add_argument("out", help="output mask path (PNG)")
    p_mask.add_argument("--rows", type=int, required=True)
    p_mask.add_argument("--cols", type=int, required=True)
    p_mask.add_argument("--sr", default=None,
                        help="sampling rate in [0,1] (or a percentage)")
    add_common(p_mask)
    p_mask.set_defaults(func=cmd_mask)

    p_comp = sub.add_parser("complete", help="inpaint a single image")
    p_comp.add_argument("input", help="input image (ground truth when --sr is used)")
    p_comp.add_argument("output", help="recovered image path (PNG)")
    p_comp.add_argument("--method", default=None, choices=SOLVER_METHODS)
    p_comp.add_argument("--sr", default=None,
                        help="sampling rate; generates the mask from --seed")
    p_comp.add_argument("--mask", default=None, help="mask PNG (0=missing)")
    p_comp.add_argument("--truth", default=None,
                        help="ground-truth image when the input is already degraded")
    p_comp.add_argument("--csv", default=None, help="append a metrics row here")
    p_comp.add_argument("--workers", type=int, default=None, help=argparse.SUPPRESS)
    add_solver_flags(p_comp)
    add_common(p_comp)
    p_comp.set_defaults(func=cmd_complete)

    p_bench = sub.add_parser("benchmark", help="sweep images x methods x SRs")
    p_bench.add_argument("dir", help="directory of test images")
    p_bench.add_argument("--method", default=None,
                         help="comma list from qlnf,tqlna,zero_fill "
                              "(default all three)")
    p_bench.add_argument("--sr", default=None,
                         help="comma list of sampling rates (default 0.1,0.25,0.5)")
    p_bench.add_argument("--csv", default=None, required=True,
                         help="output CSV path")
    p_bench.add_argument("--workers", type=int, default=None,
                         help="parallel worker processes "
                              "(default $QUATCOMP_WORKERS or 1)")
    p_bench.add_argument("--mask", default=None, help=argparse.SUPPRESS)
    add_solver_flags(p_bench)
    add_common(p_bench)
    p_bench.set_defaults(func=cmd_benchmark)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
