"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import random
import statistics
import sys
import time
from dataclasses import dataclass, field

from .core import (DecompositionError, ParseError, SlabDecomposition, format_slab_text,
                   parse_slab_text)
from .deamort import WorstCaseConfig, WorstCaseMatrix
from .decompose import decompose
from .dynmatrix import (NEVER, AmortizedMatrix, MatrixConfig, format_trace_text,
                        parse_trace_text)
from .gen import gen_bounded_width, gen_disjoint_slabs, gen_trace
from .oracle import (ContractionError, dense_from_slabs, format_dense_text,
                     format_witness_text, naive_canonical, naive_strips, parse_dense_text,
                     parse_witness_text, verify_contraction_width)
from .pointloc import BACKENDS

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
ENGINES = ("amortized", "worstcase", "dense")


class InputError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    inputs: list = field(default_factory=list)
    output: str | None = None
    n: int | None = None
    d: int | None = None
    k: int | None = None
    seed: int = 0
    threshold: float | None = None
    epoch: int | None = None
    budget: int | None = None
    engine: str = "amortized"
    backend: str = "baseline"
    csv: str | None = None
    hash_seed: int | None = None
    mode: str | None = None
    ops: int = 1000
    query_ratio: float = 0.5

    def validate(self):
        for name in ("n", "epoch", "budget"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise InputError(f"--{name} must be >= 1")
        if self.threshold is not None and self.threshold < 1:
            raise InputError("--threshold must be >= 1")
        if self.d is not None and self.d < 0:
            raise InputError("--d must be >= 0")
        if self.k is not None and self.k < 0:
            raise InputError("--k must be >= 0")
        if self.ops < 0 or not 0.0 <= self.query_ratio <= 1.0:
            raise InputError("need --ops >= 0 and --query-ratio in [0, 1]")
        if self.engine not in ENGINES:
            raise InputError(f"unknown engine {self.engine!r}")
        if self.backend not in BACKENDS:
            raise InputError(f"unknown backend {self.backend!r}")

    def make_engine(self, init: SlabDecomposition, engine: str | None = None):
        engine = engine or self.engine
        n = init.n
        if engine == "dense":
            return dense_from_slabs(n, init)
        if engine == "worstcase":
            return WorstCaseMatrix(n, init, WorstCaseConfig(
                epoch=self.epoch, budget=self.budget, hash_seed=self.hash_seed,
                backend=self.backend, record_work=self.csv is not None))
        return AmortizedMatrix(n, init, MatrixConfig(
            threshold=self.threshold, hash_seed=self.hash_seed, backend=self.backend))


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _write(path: str | None, text: str, out):
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_trace(path: str, n: int) -> list:
    ops = parse_trace_text(_read(path))
    for idx, (_, i, j) in enumerate(ops):
        if not (1 <= i <= n and 1 <= j <= n):
            raise InputError(f"op {idx}: cell ({i}, {j}) outside [1, {n}]^2")
    return ops


# -- subcommands ------------------------------------------------------------------

def cmd_gen(cfg: CliConfig, out) -> int:
    n = cfg.n or 16
    if cfg.mode == "slabs":
        dec = gen_disjoint_slabs(n, cfg.k if cfg.k is not None else n, cfg.seed)
        _write(cfg.output, format_slab_text(dec), out)
    elif cfg.mode == "width":
        m, seq = gen_bounded_width(n, cfg.d if cfg.d is not None else 1, cfg.seed)
        _write(cfg.output, format_dense_text(m), out)
        if cfg.inputs:
            _write(cfg.inputs[0], format_witness_text(seq), out)
    elif cfg.mode == "strips":
        # a witnessed matrix written as unit-width slabs, ready for decompose/run
        m, _ = gen_bounded_width(n, cfg.d if cfg.d is not None else 1, cfg.seed)
        _write(cfg.output, format_slab_text(_strips_of(m)), out)
    else:
        _write(cfg.output, format_trace_text(gen_trace(n, cfg.ops, cfg.seed, cfg.query_ratio)), out)
    return EXIT_OK


def _strips_of(m) -> SlabDecomposition:
    return SlabDecomposition(m.n, [(a, b, j, j) for j in range(1, m.n + 1)
                                   for a, b in naive_strips(m, j)])


def cmd_decompose(cfg: CliConfig, out) -> int:
    dec = parse_slab_text(_read(cfg.inputs[0]))
    canon = decompose(dec.n, dec)
    text = format_slab_text(canon)
    if cfg.output is None:
        out.write(text)
    else:
        _write(cfg.output, text, out)
        out.write(f"K={len(dec)} R={len(canon)}\n")
    return EXIT_OK


def cmd_run(cfg: CliConfig, out) -> int:
    init = parse_slab_text(_read(cfg.inputs[0]))
    ops = _load_trace(cfg.inputs[1], init.n)
    eng = cfg.make_engine(init)
    lines = []
    work = []
    for kind, i, j in ops:
        if kind == "Q":
            lines.append(str(eng.query(i, j)))
        else:
            work.append(eng.update(i, j))
    out.write("".join(x + "\n" for x in lines))
    if cfg.csv:
        with open(cfg.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["update", "work_units"])
            w.writerows(enumerate(work))
    return EXIT_OK


def cmd_verify(cfg: CliConfig, out) -> int:
    if cfg.mode == "oracle":
        init = parse_slab_text(_read(cfg.inputs[0]))
        ops = _load_trace(cfg.inputs[1], init.n)
        ref = dense_from_slabs(init.n, init)
        eng = cfg.make_engine(init)
        for idx, (kind, i, j) in enumerate(ops):
            if kind == "Q":
                got, want = eng.query(i, j), ref.query(i, j)
                if got != want:
                    out.write(f"FAIL op {idx}: Q {i} {j} engine={got} oracle={want}\n")
                    return EXIT_FAIL
            else:
                eng.update(i, j)
                ref.update(i, j)
        out.write(f"PASS {len(ops)} ops\n")
        return EXIT_OK
    if cfg.mode == "canonical":
        dec = parse_slab_text(_read(cfg.inputs[0]))
        m = dense_from_slabs(dec.n, dec)
        want = naive_canonical(m).as_set()
        got = decompose(dec.n, dec).as_set()
        if got != want:
            out.write(f"FAIL decompose differs from naive: {sorted(got ^ want)[:3]}\n")
            return EXIT_FAIL
        if len(cfg.inputs) > 1:
            claimed = parse_slab_text(_read(cfg.inputs[1]))
            if claimed.n != dec.n:
                out.write(f"FAIL expected file has n={claimed.n}, input has n={dec.n}\n")
                return EXIT_FAIL
            try:
                cm = dense_from_slabs(claimed.n, claimed)
            except DecompositionError as e:
                out.write(f"FAIL expected file: {e}\n")
                return EXIT_FAIL
            diff = (cm.bits != m.bits).nonzero()
            if len(diff[0]):
                i, j = int(diff[0][0]) + 1, int(diff[1][0]) + 1
                out.write(f"FAIL cell ({i}, {j}): expected file has {cm.get(i, j)}, "
                          f"input has {m.get(i, j)}\n")
                return EXIT_FAIL
            if claimed.as_set() != want:
                s = sorted(claimed.as_set() - want) or sorted(want - claimed.as_set())
                a, _, c, _ = s[0]
                out.write(f"FAIL slab {tuple(s[0])} at cell ({a}, {c}) is not canonical\n")
                return EXIT_FAIL
        out.write(f"PASS |R|={len(want)}\n")
        return EXIT_OK
    # witness
    m = parse_dense_text(_read(cfg.inputs[0]))
    seq = parse_witness_text(_read(cfg.inputs[1]))
    width = verify_contraction_width(m, seq)
    d = cfg.d if cfg.d is not None else width
    if width > d:
        out.write(f"FAIL width {width} > d={d}\n")
        return EXIT_FAIL
    out.write(f"PASS width {width} <= d={d}\n")
    return EXIT_OK


BENCH_COLUMNS = ["n", "engine", "backend", "ops", "mean_ns_query", "mean_ns_update",
                 "max_work_units_update", "R", "d_2n_2_plus_1"]


def bench_rows(ns, engines, backend="baseline", ops=20000, updates=2000, k=None, d=1,
               seed=0, reps=5, hash_seed=0):
    """One row per (n, engine): median-of-reps timings on a random slab instance."""
    rows = []
    for n in ns:
        init = gen_disjoint_slabs(n, k if k is not None else min(n, 1 << 14), seed)
        rng = random.Random(seed)
        qs = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(ops)]
        us = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(updates)]
        for engine in engines:
            if engine == "dense" and n > 1 << 13:
                continue
            cfg = CliConfig("bench", engine=engine, backend=backend, hash_seed=hash_seed)
            eng = cfg.make_engine(init)
            query = eng.query
            for i, j in qs[:1000]:
                query(i, j)
            qt = []
            for _ in range(reps):
                t0 = time.perf_counter_ns()
                for i, j in qs:
                    query(i, j)
                qt.append((time.perf_counter_ns() - t0) / len(qs))
            update = eng.update
            max_work = 0
            t0 = time.perf_counter_ns()
            for i, j in us:
                w = update(i, j)
                if w > max_work:
                    max_work = w
            ut = (time.perf_counter_ns() - t0) / max(1, len(us))
            if engine == "dense":
                canon = len(naive_canonical(eng))
            elif engine == "worstcase":
                canon = len(eng.active.slabs)
            else:
                canon = len(eng.slabs)
            rows.append({"n": n, "engine": engine, "backend": backend, "ops": ops,
                         "mean_ns_query": round(statistics.median(qt), 1),
                         "mean_ns_update": round(ut, 1), "max_work_units_update": max_work,
                         "R": canon, "d_2n_2_plus_1": d * (2 * n - 2) + 1})
    return rows


def cmd_bench(cfg: CliConfig, out, lo=10, hi=20, ops=20000, reps=5,
              engines=("amortized", "worstcase")) -> int:
    ns = [cfg.n] if cfg.n is not None else [1 << e for e in range(lo, hi + 1)]
    rows = bench_rows(ns, engines, cfg.backend, ops=ops, k=cfg.k, d=cfg.d or 1,
                      seed=cfg.seed, reps=reps, hash_seed=cfg.hash_seed or 0)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS)
    w.writeheader()
    w.writerows(rows)
    _write(cfg.csv, buf.getvalue(), out)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------------

def _threshold(text: str) -> float:
    if text in ("never", "inf"):
        return NEVER
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("threshold must be an integer or 'never'") from None
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slabmatrix",
                                description="Dynamic binary matrices stored as slab sets.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threshold", type=_threshold)
    common.add_argument("--epoch", type=int)
    common.add_argument("--budget", type=int)
    common.add_argument("--engine", default="amortized", choices=ENGINES)
    common.add_argument("--backend", default="baseline", choices=BACKENDS)
    common.add_argument("--csv")
    common.add_argument("--hash-seed", type=int)
    common.add_argument("-o", "--output")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate slabs, witnessed matrices or traces")
    g.add_argument("mode", choices=("slabs", "width", "strips", "trace"))
    g.add_argument("--witness", help="witness output path (width mode)")
    g.add_argument("--ops", type=int, default=1000, help="trace length")
    g.add_argument("--query-ratio", type=float, default=0.5)

    dcmp = sub.add_parser("decompose", parents=[common], help="canonical slab decomposition")
    dcmp.add_argument("input")

    r = sub.add_parser("run", parents=[common], help="replay a trace, print query answers")
    r.add_argument("init")
    r.add_argument("trace")

    v = sub.add_parser("verify", parents=[common], help="check against the oracles")
    v.add_argument("mode", choices=("oracle", "canonical", "witness"))
    v.add_argument("inputs", nargs="+")

    b = sub.add_parser("bench", parents=[common], help="timing table as CSV")
    b.add_argument("--lo", type=int, default=10, help="smallest log2 n")
    b.add_argument("--hi", type=int, default=20, help="largest log2 n")
    b.add_argument("--ops", type=int, default=20000)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--engines", default="amortized,worstcase",
                   help="comma-separated subset of " + ",".join(ENGINES))
    return p


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    inputs = []
    mode = getattr(ns, "mode", None)
    if ns.command == "gen" and ns.witness:
        inputs = [ns.witness]
    elif ns.command == "decompose":
        inputs = [ns.input]
    elif ns.command == "run":
        inputs = [ns.init, ns.trace]
    elif ns.command == "verify":
        inputs = ns.inputs
    cfg = CliConfig(ns.command, inputs, ns.output, ns.n, ns.d, ns.k, ns.seed, ns.threshold,
                    ns.epoch, ns.budget, ns.engine, ns.backend, ns.csv, ns.hash_seed, mode)
    if ns.command == "gen":
        cfg.ops, cfg.query_ratio = ns.ops, ns.query_ratio
    return cfg


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        cfg.validate()
        if cfg.command == "verify":
            need = 1 if cfg.mode == "canonical" else 2
            if len(cfg.inputs) < need:
                raise InputError(f"verify {cfg.mode} needs {need} input files")
        if cfg.command == "gen":
            return cmd_gen(cfg, out)
        if cfg.command == "decompose":
            return cmd_decompose(cfg, out)
        if cfg.command == "run":
            return cmd_run(cfg, out)
        if cfg.command == "verify":
            return cmd_verify(cfg, out)
        engines = tuple(e for e in ns.engines.split(",") if e)
        bad = [e for e in engines if e not in ENGINES]
        if bad or not engines:
            raise InputError(f"unknown engine(s) {bad}")
        return cmd_bench(cfg, out, ns.lo, ns.hi, ns.ops, ns.reps, engines)
    except (InputError, ParseError, DecompositionError, ContractionError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
