"""Command-line front end.

Subcommands: tune (entropy curve and best window width), analyze (export
cubes), ridges (export ridge tracks), reconstruct (export retrieved
modes), bench (benchmark tables and the perturbation study).

Every run resolves its configuration from defaults, then an optional
key=value config file (--config), then explicit flags, and emits the
resolved values. File outputs are deterministic: identical invocations
produce byte-identical artifacts (timings go to stderr only).

Exit codes: 0 success, 1 usage error (bad flags, bad input files),
2 computation error.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import (PipelineConfig, default_grid_kind,
                    _resolve_grid, _streamed_squeeze,
                    perturbation_study, run_pipeline)
from .core import WindowSpec, build_grid
from .entropy import tune_alpha
from .errors import ChirpcubeError
from .io import (SignalFormatError, load_signal, save_cube, save_modes,
                 save_ridges, save_rmse, write_pgm)
from .signals import BENCHMARK_NAMES, benchmark
from .transform import magnitude_cube, wlct_cube
from .xray import gaussian_xray_window, xray_cube

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


#: option name -> (type, default); config-file keys use the same names
_OPTIONS = {
    "signal": (str, None),
    "variant": (int, None),
    "alpha": (float, None),
    "nc": (int, None),
    "grid": (str, None),
    "r0": (float, None),
    "a0": (float, None),
    "da": (float, None),
    "hop": (int, 1),
    "dgamma": (float, None),
    "dxi": (float, None),
    "epsilon": (float, 1e-4),
    "xray": (str, None),  # default: "on" for bench y2, otherwise "off"
    "n0": (int, 64),
    "dv": (float, None),
    "k": (int, 2),
    "seed": (int, 0),
    "snr": (float, 15.0),
    "perturb": (str, "off"),
    "cube": (str, "mag"),
    "out": (str, None),
}

_GRID_CHOICES = ("uniform", "dyadic", "uniform-pos", "dyadic-pos")


def _build_parser() -> _Parser:
    parser = _Parser(prog="chirpcube", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key=value file; flags override it")
        p.add_argument("--signal",
                       help=f"one of {'|'.join(BENCHMARK_NAMES)} or a file "
                            "(.csv with t,re,im rows, or raw float64 pairs "
                            "with a .json sidecar)")
        p.add_argument("--variant", type=int, choices=(1, 2, 5, 6))
        p.add_argument("--alpha", type=float,
                       help="window width; omit to tune by entropy")
        p.add_argument("--nc", type=int, help="number of chirp bins")
        p.add_argument("--grid", choices=_GRID_CHOICES,
                       help="chirp-axis layout (default: uniform for "
                            "variants 2/6, dyadic for 1/5)")
        p.add_argument("--r0", type=float, help="chirp-axis half-range")
        p.add_argument("--a0", type=float, help="dyadic base scale")
        p.add_argument("--da", type=float, help="dyadic exponent step")
        p.add_argument("--hop", type=int, help="frame decimation (default 1)")
        p.add_argument("--dgamma", type=float, help="squeeze chirprate step")
        p.add_argument("--dxi", type=float, help="squeeze frequency step")
        p.add_argument("--epsilon", type=float,
                       help="relative magnitude floor for the mask "
                            "(default 1e-4)")
        p.add_argument("--xray", choices=("on", "off"),
                       help="squeeze the smoothed magnitude instead of "
                            "the raw transform (default off)")
        p.add_argument("--n0", type=int, help="smoothing half-width in bins")
        p.add_argument("--dv", type=float,
                       help="smoothing offset step (default 2*dt)")
        p.add_argument("--k", type=int, help="number of ridges (default 2)")
        p.add_argument("--seed", type=int, help="perturbation seed")
        p.add_argument("--snr", type=float,
                       help="perturbation SNR in dB (default 15)")
        p.add_argument("--perturb", choices=("on", "off"),
                       help="bench: also run the ridge-perturbation study")
        p.add_argument("--cube", choices=("mag", "complex", "none"),
                       help="analyze: which transform cube to export")
        p.add_argument("--out", help="directory for output artifacts")
        return p

    add("tune", "entropy curve over window widths").set_defaults(func=_cmd_tune)
    add("analyze", "export transform/smoothed/squeezed cubes").set_defaults(
        func=_cmd_analyze)
    add("ridges", "extract and export ridge tracks").set_defaults(
        func=_cmd_ridges)
    add("reconstruct", "retrieve modes along ridges").set_defaults(
        func=_cmd_reconstruct)
    add("bench", "benchmark tables / perturbation study").set_defaults(
        func=_cmd_bench)
    return parser


def _read_config_file(path: str) -> dict:
    entries = {}
    p = Path(path)
    if not p.exists():
        raise _UsageError(f"config file {path} does not exist")
    for lineno, line in enumerate(p.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _OPTIONS:
            raise _UsageError(f"{path}:{lineno}: expected <option>=<value> "
                              f"with a known option, got {line!r}")
        caster, _ = _OPTIONS[key]
        try:
            entries[key] = caster(value.strip())
        except ValueError:
            raise _UsageError(f"{path}:{lineno}: bad value for {key}: "
                              f"{value.strip()!r}") from None
    return entries


def _resolve(args) -> dict:
    resolved = {name: default for name, (_, default) in _OPTIONS.items()}
    if args.config:
        resolved.update(_read_config_file(args.config))
    for name in _OPTIONS:
        value = getattr(args, name, None)
        if value is not None:
            resolved[name] = value
    if resolved["grid"] is not None and resolved["grid"] not in _GRID_CHOICES:
        raise _UsageError(f"grid must be one of {_GRID_CHOICES}")
    if resolved["variant"] is not None and resolved["variant"] not in (1, 2, 5, 6):
        raise _UsageError("variant must be one of 1, 2, 5, 6")
    if resolved["xray"] not in (None, "on", "off"):
        raise _UsageError("xray must be on or off")
    return resolved


def _config_lines(resolved: dict) -> str:
    return "".join(
        f"{name}={'none' if resolved[name] is None else resolved[name]}\n"
        for name in sorted(_OPTIONS)
    )


def _emit_config(resolved: dict, out: Path | None) -> None:
    text = _config_lines(resolved)
    sys.stdout.write("# resolved configuration\n" + text)
    if out is not None:
        (out / "config.txt").write_text(text)


def _out_dir(resolved: dict) -> Path | None:
    if resolved["out"] is None:
        return None
    out = Path(resolved["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _get_signal(resolved: dict):
    name = resolved["signal"]
    if name is None:
        raise _UsageError("--signal is required")
    if name in BENCHMARK_NAMES:
        return benchmark(name)
    return load_signal(name)


def _require_variant(resolved: dict) -> int:
    if resolved["variant"] is None:
        raise _UsageError("--variant is required")
    return resolved["variant"]


def _plain_signal(sig):
    return sig.signal if hasattr(sig, "signal") else sig


def _truth(sig):
    return sig if hasattr(sig, "inst_chirp") else None


def _pipeline_config(resolved: dict, variant: int,
                     method: str) -> PipelineConfig:
    return PipelineConfig(
        variant=variant,
        method=method,
        alpha=resolved["alpha"],
        grid_kind=resolved["grid"],
        n_chirp=resolved["nc"],
        r0=resolved["r0"],
        a0=resolved["a0"],
        da=resolved["da"],
        hop=resolved["hop"],
        d_gamma=resolved["dgamma"],
        d_xi=resolved["dxi"],
        epsilon_rel=resolved["epsilon"],
        xray_n0=resolved["n0"],
        xray_dv=resolved["dv"],
        k=resolved["k"],
        keep_squeezed=True,
    )


def _settle_xray(resolved: dict, default: str = "off") -> None:
    if resolved["xray"] is None:
        resolved["xray"] = default


def _method(resolved: dict) -> str:
    return "sxwlct" if resolved["xray"] == "on" else "swlct"


def _tune_grid(x, resolved: dict, variant: int, truth=None):
    kind = resolved["grid"]
    if kind is None:
        kind = default_grid_kind(variant, truth)
    return build_grid(
        x.n, x.dt, t0=x.t0, n_chirp=resolved["nc"], kind=kind,
        hop=resolved["hop"] * 4, r0=resolved["r0"], a0=resolved["a0"],
        da=resolved["da"], d_gamma=resolved["dgamma"], d_xi=resolved["dxi"],
        epsilon_rel=resolved["epsilon"],
    )


def _cmd_tune(args) -> int:
    resolved = _resolve(args)
    _settle_xray(resolved)
    out = _out_dir(resolved)
    variant = _require_variant(resolved)
    sig = _get_signal(resolved)
    x = _plain_signal(sig)
    _emit_config(resolved, out)
    grid = _tune_grid(x, resolved, variant, truth=_truth(sig))
    result = tune_alpha(x, variant, grid)
    lines = ["alpha,entropy"]
    lines += ["%.17g,%.17g" % (a, e)
              for a, e in zip(result.alphas, result.entropies)]
    lines.append("alpha_opt=%.17g" % result.alpha_opt)
    text = "\n".join(lines) + "\n"
    sys.stdout.write("# entropy curve\n" + text)
    if out is not None:
        (out / "tune.csv").write_text(text)
    return 0


def _resolve_alpha(x, resolved: dict, variant: int, truth=None) -> float:
    if resolved["alpha"] is not None:
        return resolved["alpha"]
    grid = _tune_grid(x, resolved, variant, truth)
    return tune_alpha(x, variant, grid).alpha_opt


def _cmd_analyze(args) -> int:
    resolved = _resolve(args)
    _settle_xray(resolved)
    out = _out_dir(resolved)
    variant = _require_variant(resolved)
    sig = _get_signal(resolved)
    x = _plain_signal(sig)
    _emit_config(resolved, out)

    alpha = _resolve_alpha(x, resolved, variant, _truth(sig))
    spec = WindowSpec(variant, alpha)
    cfg = _pipeline_config(resolved, variant, _method(resolved))
    grid = _resolve_grid(x, cfg, _truth(sig))
    squeezed = _streamed_squeeze(x, spec, grid, cfg)

    sys.stdout.write("alpha=%.17g\n" % alpha)
    if out is None:
        sys.stderr.write("note: no --out directory, cubes not written\n")
        return 0

    if resolved["cube"] != "none":
        cube = wlct_cube(x, spec, grid)
        if resolved["cube"] == "mag":
            cube = magnitude_cube(cube)
        save_cube(out / "wlct", cube)
        if resolved["xray"] == "on":
            mag = cube if resolved["cube"] == "mag" else magnitude_cube(cube)
            win = gaussian_xray_window(
                resolved["n0"],
                resolved["dv"] if resolved["dv"] is not None
                else 2.0 * grid.dt,
            )
            save_cube(out / "xray", xray_cube(mag, spec, grid, win))
    save_cube(out / "squeezed", squeezed)
    energy = np.abs(squeezed.values)
    write_pgm(out / "squeezed_tf.pgm", energy.max(axis=0))
    write_pgm(out / "squeezed_cf.pgm", energy.max(axis=2))
    return 0


def _run_and_export(args, want_modes: bool) -> int:
    resolved = _resolve(args)
    _settle_xray(resolved)
    out = _out_dir(resolved)
    variant = _require_variant(resolved)
    sig = _get_signal(resolved)
    _emit_config(resolved, out)
    cfg = _pipeline_config(resolved, variant, _method(resolved))
    report = run_pipeline(sig, cfg)
    sys.stdout.write("alpha=%.17g\n" % report.alpha)
    sys.stderr.write("wall_time_s=%.3f\n" % report.wall_time_s)
    if out is not None:
        save_ridges(out / "ridges.csv", report.ridges)
        if want_modes:
            save_modes(out / "modes.csv", report.modes)
            if report.rmse is not None:
                save_rmse(out / "rmse.csv", report.rmse)
    if want_modes and report.rmse is not None:
        for i, value in enumerate(report.rmse):
            sys.stdout.write("rmse[%d]=%.6g\n" % (i, value))
    return 0


def _cmd_ridges(args) -> int:
    return _run_and_export(args, want_modes=False)


def _cmd_reconstruct(args) -> int:
    return _run_and_export(args, want_modes=True)


def _bench_variants(resolved: dict):
    if resolved["variant"] is not None:
        return (resolved["variant"],)
    return (1, 5, 2, 6)


def _cmd_bench(args) -> int:
    resolved = _resolve(args)
    out = _out_dir(resolved)
    name = resolved["signal"] or "x1"
    if name not in BENCHMARK_NAMES:
        raise _UsageError(
            f"bench needs a built-in signal ({'|'.join(BENCHMARK_NAMES)})"
        )
    resolved["signal"] = name
    sig = benchmark(name)
    _settle_xray(resolved, default="on" if name == "y2" else "off")
    _emit_config(resolved, out)

    rows = []
    if name == "z3":
        # long signal: report tuned window widths only
        rows.append("signal,variant,alpha_opt")
        for variant in _bench_variants(resolved):
            grid = _tune_grid(sig.signal, resolved, variant, truth=sig)
            result = tune_alpha(sig.signal, variant, grid)
            rows.append("z3,%d,%.17g" % (variant, result.alpha_opt))
            sys.stderr.write(f"tuned variant {variant}\n")
    else:
        method = _method(resolved)
        rows.append("signal,variant,method,alpha,rmse_1,rmse_2")
        for variant in _bench_variants(resolved):
            cfg = _pipeline_config(resolved, variant, method)
            report = run_pipeline(sig, cfg)
            rows.append("%s,%d,%s,%.17g,%.6g,%.6g" % (
                name, variant, method, report.alpha,
                report.rmse[0], report.rmse[1],
            ))
            sys.stderr.write("variant %d done in %.1f s\n"
                             % (variant, report.wall_time_s))

    if resolved["perturb"] == "on" and name != "z3":
        variant = resolved["variant"] or 2
        cfg = _pipeline_config(resolved, variant, _method(resolved))
        study = perturbation_study(sig, cfg, snr_db=resolved["snr"],
                                   seed=resolved["seed"])
        rows.append("# perturbation: snr_db=%g seed=%d" % (
            study.snr_db, study.seed))
        rows.append("median_clean,median_perturbed,ratio,max_error_t,"
                    "crossing_t")
        rows.append("%.6g,%.6g,%.6g,%.6g,%.6g" % (
            study.median_clean, study.median_perturbed, study.ratio,
            study.max_error_time, study.crossing_time))

    text = "\n".join(rows) + "\n"
    sys.stdout.write(text)
    if out is not None:
        (out / "bench.csv").write_text(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            raise _UsageError("a subcommand is required "
                              "(tune|analyze|ridges|reconstruct|bench)")
        return args.func(args) or 0
    except _UsageError as exc:
        print(f"chirpcube: error: {exc}", file=sys.stderr)
        return 1
    except SignalFormatError as exc:
        print(f"chirpcube: bad signal input: {exc}", file=sys.stderr)
        return 1
    except ChirpcubeError as exc:
        print(f"chirpcube: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"chirpcube: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return 0 if code in (0, None) else 1


if __name__ == "__main__":
    sys.exit(main())
