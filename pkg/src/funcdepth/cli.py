"""Command-line interface.

Subcommands: depth, screen, trimmed-mean, simulate, resample-check,
generate. Every flag can also be given in a ``--config`` file of
``key=value`` lines; flags on the command line win.

Exit codes: 0 success, 1 usage or configuration error, 2 invalid data,
3 numerical failure.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import io
from .depth import STANDARD_METHODS, parse_method, rank_order, ranks_from_order
from .exceptions import ConfigError, NotFactorizableError, ValidationError
from .gp import GpSpec
from .resampling import (
    Partition,
    random_partition,
    rank_agreement_study,
    resampled_depth_values,
)
from .robust import trim_count
from .sample import canonical_grid
from .simulation import ContaminationConfig, StudyConfig, generate_model, run_study

log = logging.getLogger("funcdepth")

AGREEMENT_METHODS = ("BD2", "cBD", "GBD", "cGBD", "GBD_I", "GBD_O")


@dataclass
class RunConfig:
    input: str = None
    output: str = None
    mean_out: str = None
    table_out: str = None
    ei_out: str = None
    corr_out: str = None
    labels_out: str = None
    method: str = "GBD"
    methods: str = None
    J: int = None
    models: str = "0,1,2,3,4,5,6"
    model: int = 0
    n: int = 150
    q: float = 0.1
    M: float = 25.0
    alpha: float = 0.2
    R: int = 200
    V: int = 30
    K: int = 1
    B: int = 50
    mu: float = 2.0
    k_points: int = 2
    peak_length: float = 2 / 30
    seed: int = None
    workers: int = 1


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(key, text):
    kind = _TYPES[key]
    if kind is str:
        return text
    try:
        return kind(text)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {text!r}") from None


def load_config(path):
    """Parse a ``key=value`` file; blank lines and ``#`` comments are skipped."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, val = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _TYPES:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _convert(key, val)
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add(p, *keys):
    for key in keys:
        flag = "--" + key.replace("_", "-")
        kind = _TYPES[key]
        p.add_argument(flag, dest=key, type=kind if kind is not str else str,
                       default=argparse.SUPPRESS)


def build_parser():
    parser = _Parser(prog="funcdepth", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="key=value file with default flag values")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("depth", help="depth and rank of every curve in a CSV")
    _add(p, "input", "output", "method", "J", "K", "seed")

    for name, help_ in (("screen", "flag the least deep curves and trim them"),
                        ("trimmed-mean", "emit only the depth-trimmed mean curve")):
        p = sub.add_parser(name, help=help_)
        _add(p, "input", "output", "method", "J", "alpha", "K", "seed")
        if name == "screen":
            _add(p, "mean_out")

    p = sub.add_parser("simulate", help="contamination study: adjusted errors per model and method")
    _add(p, "output", "table_out", "ei_out", "models", "methods", "n", "q", "M",
         "alpha", "R", "V", "K", "k_points", "peak_length", "seed", "workers")

    p = sub.add_parser("resample-check", help="full vs resampled rank agreement")
    _add(p, "output", "corr_out", "methods", "n", "K", "B", "V", "mu", "seed", "workers")

    p = sub.add_parser("generate", help="write one simulated sample as CSV")
    _add(p, "output", "labels_out", "model", "n", "q", "M", "V", "k_points",
         "peak_length", "seed")
    return parser


def resolve(args):
    """Merge defaults, config file and flags into one RunConfig."""
    values = {}
    if args.config:
        values.update(load_config(args.config))
    values.update({k: v for k, v in vars(args).items() if k in _TYPES})
    return RunConfig(**values)


def _need(cfg, *keys):
    for key in keys:
        if getattr(cfg, key) is None:
            raise ConfigError(f"--{key.replace('_', '-')} is required")


def _split(text, default):
    if text is None:
        return tuple(default)
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _method(cfg):
    return parse_method(cfg.method, cfg.J)


def _depths_for(cfg, sample):
    """Full-sample depth (K = 1) or resampled depth with a seeded partition."""
    meth = _method(cfg)
    if cfg.K == 1:
        partition = Partition.single(sample.n_curves)
    else:
        _need(cfg, "seed")
        rng = np.random.default_rng(cfg.seed)
        partition = random_partition(sample.n_curves, cfg.K, rng)
    return resampled_depth_values(sample, partition, [meth])[meth.label]


def _write(text, dest):
    if dest is None:
        sys.stdout.write(text)
    else:
        with open(dest, "w", newline="") as fh:
            fh.write(text)


def cmd_depth(cfg):
    _need(cfg, "input")
    sample = io.read_curves(cfg.input)
    depths = _depths_for(cfg, sample)
    ranks = ranks_from_order(rank_order(depths))
    _write(io.write_rows(["id", "depth", "rank"],
                         io.depth_table_rows(sample.ids, depths, ranks)), cfg.output)


def _screen(cfg, sample):
    depths = _depths_for(cfg, sample)
    order = rank_order(depths)
    keep = sample.n_curves - trim_count(sample.n_curves, cfg.alpha)
    flagged = np.zeros(sample.n_curves, dtype=bool)
    flagged[order[keep:]] = True
    mean = sample.values[order[:keep]].mean(axis=0)
    return depths, ranks_from_order(order), flagged, mean


def cmd_screen(cfg):
    _need(cfg, "input")
    sample = io.read_curves(cfg.input)
    depths, ranks, flagged, est = _screen(cfg, sample)
    rows = [(cid, d, r, int(f)) for cid, d, r, f in zip(sample.ids, depths, ranks, flagged)]
    _write(io.write_rows(["id", "depth", "rank", "flagged"], rows), cfg.output)
    if cfg.mean_out:
        io.write_curve_rows(sample.grid, ["trimmed_mean"], [est], cfg.mean_out)
    log.info("flagged: %s", ",".join(np.asarray(sample.ids)[flagged]))


def cmd_trimmed_mean(cfg):
    _need(cfg, "input")
    sample = io.read_curves(cfg.input)
    *_, est = _screen(cfg, sample)
    _write(io.write_curve_rows(sample.grid, ["trimmed_mean"], [est]), cfg.output)


def study_config(cfg):
    return StudyConfig(
        models=tuple(int(m) for m in _split(cfg.models, ())),
        methods=_split(cfg.methods, STANDARD_METHODS),
        n=cfg.n, q=cfg.q, M=cfg.M, alpha=cfg.alpha, R=cfg.R, V=cfg.V,
        K=cfg.K, seed=cfg.seed, k_points=cfg.k_points, peak_length=cfg.peak_length,
    )


def cmd_simulate(cfg):
    _need(cfg, "seed")
    report = run_study(study_config(cfg), n_jobs=cfg.workers)
    _write(io.study_text(report), cfg.output)
    if cfg.table_out:
        io.write_rows(*io.study_table_rows(report), dest=cfg.table_out)
    if cfg.ei_out:
        io.write_rows(*io.ei_dump_rows(report), dest=cfg.ei_out)


def cmd_resample_check(cfg):
    _need(cfg, "seed")
    reports = rank_agreement_study(
        methods=_split(cfg.methods, AGREEMENT_METHODS), n=cfg.n, n_parts=cfg.K,
        n_repeats=cfg.B, n_points=cfg.V, spec=GpSpec(mu=cfg.mu), seed=cfg.seed,
        n_jobs=cfg.workers,
    )
    rows = []
    for label, rep in reports.items():
        rows.extend([label, *row] for row in io.agreement_rows(rep)[1])
    _write(io.write_rows(["method", "position", "mean_rank", "sd_rank"], rows), cfg.output)
    if cfg.corr_out:
        io.write_rows(*io.agreement_correlation_rows(reports), dest=cfg.corr_out)


def cmd_generate(cfg):
    _need(cfg, "seed")
    contamination = ContaminationConfig(
        model_id=cfg.model, q=cfg.q, M=cfg.M, peak_length=cfg.peak_length,
        k_points=cfg.k_points,
    )
    labeled = generate_model(contamination, cfg.n, canonical_grid(cfg.V),
                             np.random.default_rng(cfg.seed))
    _write(io.write_curves(labeled.sample), cfg.output)
    if cfg.labels_out:
        rows = zip(labeled.sample.ids, labeled.contaminated.astype(int), labeled.signs)
        io.write_rows(["id", "contaminated", "sign"], rows, dest=cfg.labels_out)


COMMANDS = {
    "depth": cmd_depth,
    "screen": cmd_screen,
    "trimmed-mean": cmd_trimmed_mean,
    "simulate": cmd_simulate,
    "resample-check": cmd_resample_check,
    "generate": cmd_generate,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = resolve(args)
        COMMANDS[args.command](cfg)
    except (ConfigError, OSError) as exc:
        print(f"funcdepth: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"funcdepth: invalid data: {exc}", file=sys.stderr)
        return 2
    except NotFactorizableError as exc:
        print(f"funcdepth: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
