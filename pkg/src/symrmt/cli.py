"""Command-line front end.

    symrmt sample    --family AIII --rank 3 --L 0 --count 1000 --seed 7
    symrmt density   --input draws.csv --reference arcsine
    symrmt kernel    --limit bessel --beta 2 --a 0 --grid 0.1:3:0.1
    symrmt correlate --beta 1 --rank 10 --points 0.1,0.3
    symrmt verify    --suite smoke

Settings come from flags, then a flat key=value ``--config`` file, then
built-in defaults. Exit codes: 0 success, 1 failed gate or I/O error,
2 usage or configuration error.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import io as tables
from .ensembles import FAMILIES, CircularFamilyError, EnsembleSpec, sample_thetas, table_params

COMMANDS = ("sample", "density", "kernel", "correlate", "verify")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = None
    R: int = None
    L: int = 0
    beta: float = None
    a: float = None
    b: float = None
    n_samples: int = 1000
    seed: int = 0
    threads: int = None
    method: str = "mc"
    grid: tuple = None
    limit: str = None
    regime: str = "bulk"
    z0: float = None
    points: tuple = ()
    input: str = None
    column: str = "x"
    reference: str = None
    bins: int = 50
    range: tuple = None
    suite: str = "smoke"
    out: str = None
    format: str = "csv"
    emit_plot_script: bool = False
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing


def parse_grid(text):
    """'min:max:step' -> (min, max, step)."""
    try:
        lo, hi, step = (float(t) for t in str(text).split(":"))
    except ValueError:
        raise ConfigError(f"grid must look like min:max:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise ConfigError(f"grid {text!r} needs step > 0 and max >= min")
    return lo, hi, step


def grid_values(spec):
    lo, hi, step = spec
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def _floats(text):
    try:
        return tuple(float(t) for t in str(text).split(",") if t.strip())
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _bool(text):
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


# flag dest -> (RunConfig field, converter)
KEYS = {
    "family": ("family", str), "rank": ("R", int), "L": ("L", int),
    "beta": ("beta", float), "a": ("a", float), "b": ("b", float),
    "count": ("n_samples", int), "seed": ("seed", int), "threads": ("threads", int),
    "method": ("method", str), "grid": ("grid", parse_grid), "limit": ("limit", str),
    "regime": ("regime", str), "z0": ("z0", float), "points": ("points", _floats),
    "input": ("input", str), "column": ("column", str), "reference": ("reference", str),
    "bins": ("bins", int), "range": ("range", _floats), "suite": ("suite", str),
    "out": ("out", str), "format": ("format", str), "emit_plot_script": ("emit_plot_script", _bool),
}


def build_parser():
    p = argparse.ArgumentParser(prog="symrmt", description="Compact symmetric-space random matrix ensembles.")
    sub = p.add_subparsers(dest="command", metavar="command")
    S = argparse.SUPPRESS

    def common(sp):
        sp.add_argument("--config", help="flat key=value file (flags win)")
        sp.add_argument("--out", default=S, help="output path (default stdout)")
        sp.add_argument("--format", default=S, choices=("csv", "jsonl"))

    def params(sp):
        sp.add_argument("--family", default=S, choices=FAMILIES)
        sp.add_argument("--rank", default=S, type=int, help="rank R")
        sp.add_argument("--L", default=S, type=int)
        sp.add_argument("--beta", default=S, type=float)
        sp.add_argument("--a", default=S, type=float)
        sp.add_argument("--b", default=S, type=float)

    sp = sub.add_parser("sample", help="eigenangles from matrix draws (mc) or the Jacobi measure (mcmc)")
    common(sp), params(sp)
    sp.add_argument("--count", default=S, type=int)
    sp.add_argument("--seed", default=S, type=int)
    sp.add_argument("--threads", default=S, type=int)
    sp.add_argument("--method", default=S, choices=("mc", "mcmc"))

    sp = sub.add_parser("density", help="histogram of a sample column with a reference curve")
    common(sp), params(sp)
    sp.add_argument("--input", default=S, help="CSV/JSONL from 'sample' (default stdin)")
    sp.add_argument("--column", default=S, choices=("x", "theta", "xi"))
    sp.add_argument("--reference", default=S, choices=("arcsine", "uniform", "uniform-theta", "edge"))
    sp.add_argument("--bins", default=S, type=int)
    sp.add_argument("--range", default=S, help="lo,hi")
    sp.add_argument("--emit-plot-script", dest="emit_plot_script", action="store_true", default=S)

    sp = sub.add_parser("kernel", help="kernel values on a grid")
    common(sp), params(sp)
    sp.add_argument("--limit", default=S, choices=("sine", "bessel"))
    sp.add_argument("--regime", default=S, choices=("bulk", "hard_edge_plus", "hard_edge_minus"))
    sp.add_argument("--z0", default=S, type=float, help="rescale a finite kernel around x = z0")
    sp.add_argument("--grid", default=S, help="min:max:step for both arguments (write --grid=-1:1:0.1 for a negative min)")
    sp.add_argument("--emit-plot-script", dest="emit_plot_script", action="store_true", default=S)

    sp = sub.add_parser("correlate", help="n-level correlation at listed points")
    common(sp), params(sp)
    sp.add_argument("--limit", default=S, choices=("sine", "bessel"))
    sp.add_argument("--points", default=S, help="comma-separated points")

    sp = sub.add_parser("verify", help="run an acceptance suite, JSON report")
    common(sp)
    sp.add_argument("--suite", default=S, choices=("smoke", "full"))
    return p


def read_config_file(path):
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror}") from None
    for n, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        k, v = (t.strip() for t in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in KEYS:
            raise ConfigError(f"{path}:{n}: unknown key {k!r}")
        out[k] = v
    return out


def parse_config(argv):
    """argv (without program name) -> validated RunConfig."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command is None:
        raise ConfigError("missing command; choose one of " + ", ".join(COMMANDS))
    given = {k: v for k, v in vars(ns).items() if k not in ("command", "config")}
    from_file = read_config_file(ns.config) if getattr(ns, "config", None) else {}
    merged = dict(from_file)
    merged.update(given)
    cfg = RunConfig(command=ns.command)
    for key, value in merged.items():
        name, conv = KEYS[key]
        try:
            setattr(cfg, name, conv(value) if isinstance(value, str) and conv is not str else value)
        except ValueError:
            raise ConfigError(f"bad value {value!r} for {key}") from None
    _validate(cfg, set(merged))
    return cfg


def _validate(cfg, keys):
    if cfg.format not in ("csv", "jsonl"):
        raise ConfigError("format must be csv or jsonl")
    if cfg.family is not None:
        if cfg.family not in FAMILIES:
            raise ConfigError(f"unknown family {cfg.family!r}")
        clash = sorted(k for k in ("beta", "a", "b") if k in keys)
        if clash:
            raise ConfigError(f"--family fixes (beta, a, b); drop --{', --'.join(clash)}")
        if cfg.R is None:
            raise ConfigError("--family needs --rank")
        try:
            spec = EnsembleSpec(cfg.family, cfg.R, cfg.L)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if not spec.circular:
            cfg.beta, cfg.a, cfg.b = table_params(spec)
    cmd = cfg.command
    if cmd == "sample":
        if cfg.method == "mc" and cfg.family is None:
            raise ConfigError("sample --method mc needs --family")
        if cfg.method == "mcmc":
            if cfg.family is not None and EnsembleSpec(cfg.family, cfg.R, cfg.L).circular:
                raise ConfigError(f"{cfg.family} has no Jacobi measure; use --method mc")
            _need_jacobi(cfg)
        if cfg.n_samples < 1:
            raise ConfigError("--count must be positive")
    if cmd in ("kernel", "correlate"):
        if cfg.limit is None:
            _need_jacobi(cfg)
        elif cfg.beta not in (1, 2, 4):
            raise ConfigError("limit kernels need --beta 1, 2 or 4")
        if cfg.limit == "bessel":
            if cfg.a is None:
                cfg.a = 0.0
            if cfg.regime == "bulk":
                cfg.regime = "hard_edge_plus"
        if cfg.limit == "sine":
            cfg.regime = "bulk"
    if cmd == "kernel" and cfg.grid is None:
        raise ConfigError("kernel needs --grid min:max:step")
    if cmd == "correlate" and not cfg.points:
        raise ConfigError("correlate needs --points")
    if cmd == "density" and cfg.reference == "edge":
        if cfg.beta is None or cfg.a is None or cfg.R is None:
            raise ConfigError("--reference edge needs --family (or --beta/--a) and --rank")
    if cfg.emit_plot_script and not cfg.out:
        raise ConfigError("--emit-plot-script needs --out")
    if cfg.seed < 0:
        raise ConfigError("--seed must be nonnegative")


def _need_jacobi(cfg):
    missing = [k for k in ("beta", "R") if getattr(cfg, k) is None]
    if missing:
        raise ConfigError("need --family or --beta/--a/--b with --rank")
    if cfg.beta not in (1, 2, 4):
        raise ConfigError("--beta must be 1, 2 or 4")
    cfg.a = 0.0 if cfg.a is None else cfg.a
    cfg.b = 0.0 if cfg.b is None else cfg.b


# ---------------------------------------------------------------------------
# commands


def _cmd_sample(cfg):
    if cfg.method == "mcmc":
        from .mcmc import mcmc_jacobi
        from .ensembles import rng_stream

        x = np.sort(mcmc_jacobi(cfg.R, cfg.beta, cfg.a, cfg.b, cfg.n_samples,
                                rng=rng_stream(cfg.seed, 0)), axis=1)[:, ::-1]
        th = np.arccos(np.clip(x, -1, 1))
    else:
        spec = EnsembleSpec(cfg.family, cfg.R, cfg.L)
        threads = cfg.threads or os.cpu_count() or 1
        th = sample_thetas(spec, cfg.n_samples, seed=cfg.seed, threads=threads)
    rows = [(i, j, float(t), float(np.cos(t))) for i, row in enumerate(th) for j, t in enumerate(row)]
    return ["draw", "level", "theta", "x"], rows


def _cmd_density(cfg, stdin, stderr):
    from . import stats

    if cfg.input:
        cols, rows = tables.load_table(cfg.input)
    else:
        cols, rows = tables.read_table(stdin)
    if cfg.column == "xi":
        idx = cols.index("theta")
        theta = np.array([r[idx] for r in rows], dtype=float)
        data = stats.edge_levels(theta, cfg.R)
        # edge_levels keeps xi < R/4 only
        hi = min(3.0, cfg.R / 4) if cfg.range is None else cfg.range[1]
        data = data[data <= hi]
        cfg.range = cfg.range or (0.0, hi)
    else:
        if cfg.column not in cols:
            raise ConfigError(f"input has no column {cfg.column!r}")
        idx = cols.index(cfg.column)
        data = np.array([r[idx] for r in rows], dtype=float)
    rng_ = cfg.range
    ref_cdf = ref_pdf = None
    if cfg.reference == "arcsine":
        ref_cdf, ref_pdf, rng_ = stats.arcsine_cdf, lambda t: 1 / (np.pi * np.sqrt(1 - t * t)), rng_ or (-1.0, 1.0)
    elif cfg.reference == "uniform":
        ref_cdf, ref_pdf, rng_ = stats.uniform_cdf(-1, 1), lambda t: 0.5 + 0 * t, rng_ or (-1.0, 1.0)
    elif cfg.reference == "uniform-theta":
        ref_cdf, ref_pdf, rng_ = stats.uniform_cdf(0, np.pi), lambda t: 1 / np.pi + 0 * t, rng_ or (0.0, np.pi)
    elif cfg.reference == "edge":
        from .kernels_limit import edge_density

        rng_ = rng_ or (0.0, 3.0)
        ref_cdf = stats.edge_cdf(cfg.beta, cfg.a, rng_[1])
        total = _edge_mass(cfg.beta, cfg.a, rng_[1])
        ref_pdf = lambda t: edge_density(cfg.beta, cfg.a, t) / total
    h = stats.empirical_density(data, bins=cfg.bins, range=tuple(rng_) if rng_ else None)
    cols = ["bin_left", "bin_right", "density"]
    if ref_pdf is not None:
        cols.append("reference")
        ref = ref_pdf(h.centers)
        rows = [(float(l), float(r), float(d), float(f)) for l, r, d, f in zip(h.edges[:-1], h.edges[1:], h.density, ref)]
        ks = stats.ks_distance(data, ref_cdf)
        stderr.write(f"ks_distance = {ks:.6g} (n = {data.size})\n")
    else:
        rows = [(float(l), float(r), float(d)) for l, r, d in zip(h.edges[:-1], h.edges[1:], h.density)]
    return cols, rows


def _edge_mass(beta, a, hi, panels=600):
    from .kernels_limit import edge_density
    from .specfun import gauss_legendre_rule

    rule = gauss_legendre_rule(8)
    edges = np.linspace(0.0, hi, panels + 1)
    mid, half = 0.5 * (edges[1:] + edges[:-1]), 0.5 * np.diff(edges)
    t = mid[:, None] + half[:, None] * rule.nodes[None, :]
    return float(np.sum(edge_density(beta, a, t) * rule.weights[None, :] * half[:, None]))


def _kernel_function(cfg):
    """f(x, y) -> tuple of values, plus the value column names."""
    from .kernels_limit import LimitKernelSpec, LocalCoords, limit_block

    beta = int(cfg.beta)
    names = ["K"] if beta == 2 else ["S", "Iminus", "D", "ST"]
    if cfg.limit is not None:
        f = limit_block(LimitKernelSpec(beta, cfg.regime, cfg.a or 0.0, cfg.b or 0.0))
    else:
        from .kernels_finite import block_function, cd_kernel
        from .qdet import ChangeOfVariables, rescale_matrix_kernel, rescale_scalar_kernel

        if beta == 2:
            f = lambda x, y: float(cd_kernel(cfg.R, cfg.a, cfg.b, x, y))
        else:
            f = block_function(beta, cfg.R, cfg.a, cfg.b)
        if cfg.z0 is not None:
            lc = LocalCoords(cfg.z0, cfg.R)
            cov = ChangeOfVariables(lc.x, lc.dx)
            f = rescale_scalar_kernel(f, cov) if beta == 2 else rescale_matrix_kernel(f, cov)
    if beta == 2:
        return (lambda x, y: (float(f(x, y)),)), names
    return (lambda x, y: tuple(float(v) for v in f(x, y).as_array().ravel())), names


def _cmd_kernel(cfg):
    f, names = _kernel_function(cfg)
    g = grid_values(cfg.grid)
    rows = [(float(x), float(y)) + f(x, y) for x in g for y in g]
    return ["xi", "eta"] + names, rows


def _cmd_correlate(cfg):
    from .qdet import correlation
    from .kernels_limit import LimitKernelSpec, limit_block

    beta = int(cfg.beta)
    if cfg.limit is not None:
        kern = limit_block(LimitKernelSpec(beta, cfg.regime, cfg.a or 0.0, cfg.b or 0.0))
    elif beta == 2:
        from .kernels_finite import cd_kernel

        kern = lambda x, y: float(cd_kernel(cfg.R, cfg.a, cfg.b, x, y))
    else:
        from .kernels_finite import block_function

        kern = block_function(beta, cfg.R, cfg.a, cfg.b)
    value = correlation(beta, kern, cfg.points)
    return ["n", "points", "value"], [(len(cfg.points), " ".join(tables.fmt(float(p)) for p in cfg.points), value)]


def _plot_script(cfg, cols):
    path = cfg.out
    if cfg.command == "density":
        body = [f"plot '{path}' using (($1+$2)/2):3 with steps title 'empirical'"]
        if "reference" in cols:
            body[0] += f", '' using (($1+$2)/2):4 with lines title 'reference'"
    else:
        body = ["set view map", f"splot '{path}' using 1:2:3 with image title '{cols[2]}'"]
    return "\n".join(["set datafile separator ','", "set datafile commentschars '#'",
                      "set key autotitle columnhead"] + body) + "\n"


def run(cfg, stdout=None, stdin=None, stderr=None):
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    stderr = stderr or sys.stderr
    if cfg.command == "verify":
        from .verify import run_suite

        report = run_suite(cfg.suite, log=lambda line: stderr.write(line + "\n"))
        text = json.dumps(report, indent=2) + "\n"
        _emit(cfg, text, stdout)
        return 0 if all(r["pass"] for r in report) else 1
    if cfg.command == "sample":
        cols, rows = _cmd_sample(cfg)
    elif cfg.command == "density":
        cols, rows = _cmd_density(cfg, stdin, stderr)
    elif cfg.command == "kernel":
        cols, rows = _cmd_kernel(cfg)
    else:
        cols, rows = _cmd_correlate(cfg)
    _emit(cfg, tables.table_to_string(cols, rows, cfg.format), stdout)
    if cfg.emit_plot_script:
        _write(cfg.out + ".gp", _plot_script(cfg, cols))
    return 0


def _write(path, text):
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise IOError(f"cannot write {path}: {e.strerror}") from None


def _emit(cfg, text, stdout):
    if cfg.out:
        _write(cfg.out, text)
    else:
        stdout.write(text)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        build_parser().print_usage(sys.stderr)
        sys.stderr.write("symrmt: error: missing command; choose one of " + ", ".join(COMMANDS) + "\n")
        return 2
    try:
        cfg = parse_config(argv)
    except ConfigError as e:
        sys.stderr.write(f"symrmt: error: {e}\n")
        return 2
    except CircularFamilyError as e:
        sys.stderr.write(f"symrmt: error: {e}\n")
        return 2
    try:
        return run(cfg)
    except ConfigError as e:
        sys.stderr.write(f"symrmt: error: {e}\n")
        return 2
    except (IOError, OSError) as e:
        sys.stderr.write(f"symrmt: error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
