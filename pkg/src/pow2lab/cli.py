"""Command-line front end: ``pow2lab check|solve|mfs|g|maximal|extend``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass

from .admissibility import InvariantViolation, graph_solve, to_dot
from .graphs import Graph6Error, canonical_graph6, parse_graph6, read_graph6_stream, write_graph6
from .search import (
    CheckpointError,
    GTable,
    GRecord,
    MfsSet,
    compute_g,
    extend_search,
    find_mfs,
    maximal_admissible,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3

log = logging.getLogger("pow2lab")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    subcommand: str
    source: str | None = None
    out: str | None = None
    fmt: str = "json"
    workers: int = 1
    budget: int = 64
    lll: bool = True
    exhaustive: bool = False
    checkpoint: str | None = None
    mfs_cache: str | None = None
    min_degree: int | None = None
    edges: int | None = None

    def validate(self):
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.budget < 1:
            raise UsageError("--budget must be at least 1")
        if self.source and self.source != "-" and not os.path.exists(self.source):
            raise UsageError(f"input {self.source} does not exist")
        if self.mfs_cache and not os.path.exists(self.mfs_cache):
            raise UsageError(f"MFS cache {self.mfs_cache} does not exist")


@contextmanager
def _input(cfg: RunConfig):
    if cfg.source and cfg.source != "-":
        with open(cfg.source) as fh:
            yield fh
    else:
        yield sys.stdin


@contextmanager
def _output(cfg: RunConfig):
    if cfg.out and cfg.out != "-":
        with open(cfg.out, "w") as fh:
            yield fh
    else:
        yield sys.stdout


def _emit(fh, obj):
    fh.write(json.dumps(obj, sort_keys=False) + "\n")


def cmd_check(cfg: RunConfig, use_cache: bool = False) -> int:
    mfs = MfsSet.load(cfg.mfs_cache) if cfg.mfs_cache else None
    cache: dict[str, dict] = {}
    total = yes = 0
    with _input(cfg) as src, _output(cfg) as out:
        for _, g in read_graph6_stream(src):
            total += 1
            key = canonical_graph6(g) if use_cache else None
            if key is not None and key in cache:
                rec = dict(cache[key], graph6=write_graph6(g))
                rec.pop("labels", None)
                rec["cached"] = True
            else:
                hit = mfs.contained_in(g) if mfs is not None else None
                if hit is not None:
                    rec = {"graph6": write_graph6(g), "admissible": False, "status": "forbidden-subgraph",
                           "families_count": 0, "branches": 0, "millis": 0.0,
                           "contains": write_graph6(hit)}
                else:
                    v = graph_solve(g, lll=cfg.lll, budget=cfg.budget)
                    rec = v.record()
                if key is not None:
                    cache[key] = rec
            if rec["admissible"]:
                yes += 1
            _emit(out, rec)
    print(f"{total} graphs, {yes} admissible, {total - yes} inadmissible", file=sys.stderr)
    return EXIT_OK


def _single_graph(cfg: RunConfig, graph6: str | None):
    if graph6:
        return parse_graph6(graph6)
    with _input(cfg) as src:
        for _, g in read_graph6_stream(src):
            return g
    raise UsageError("no graph given")


def cmd_solve(cfg: RunConfig, graph6: str | None = None, dump_system: bool = False) -> int:
    g = _single_graph(cfg, graph6)
    v = graph_solve(g, lll=cfg.lll, budget=cfg.budget)
    with _output(cfg) as out:
        if dump_system:
            out.write(v.system.dump() if v.system is not None else "EQ:\nNEQ:\n0\n")
        if cfg.fmt == "dot":
            if v.witness is None:
                out.write(f"// {v.status}\n")
            out.write(to_dot(g, v.witness))
        elif cfg.fmt == "text":
            out.write(f"{write_graph6(g)}: {v.status}\n")
            for fam in v.families:
                out.write("  " + fam.render() + "\n")
            if v.witness is not None:
                out.write(f"labels: {' '.join(map(str, v.witness))}\n")
        else:
            rec = v.record()
            rec["families"] = [fam.render() for fam in v.families]
            _emit(out, rec)
    return EXIT_OK


def cmd_mfs(cfg: RunConfig, u: int) -> int:
    if not 5 <= u <= 11:
        raise UsageError("u must lie in 5..11")

    def progress(n, done, total):
        log.info("order %d: %d/%d", n, done, total)

    found = find_mfs(u, workers=cfg.workers, checkpoint=cfg.checkpoint, progress=progress)
    path = cfg.out or f"mfs_{u}.g6"
    found.save(path)
    counts = found.counts()
    print(json.dumps({str(k): v for k, v in counts.items()}))
    print(f"wrote {len(found)} graphs to {path}", file=sys.stderr)
    return EXIT_OK


def cmd_g(cfg: RunConfig, n: int, g_prev: int | None = None, lower: int | None = None) -> int:
    if n < 1:
        raise UsageError("n must be positive")
    table = GTable.load(cfg.out) if cfg.out and os.path.exists(cfg.out) else GTable()
    if g_prev is not None:
        table.put(GRecord(n - 1, g_prev, proof="supplied"))
    mfs = MfsSet.load(cfg.mfs_cache) if cfg.mfs_cache else None
    rec = compute_g(n, table, lower_hint=lower, mfs=mfs, exhaustive=cfg.exhaustive or None)
    if cfg.out:
        table.save(cfg.out)
    print(json.dumps({"n": rec.n, "g": rec.value, "status": rec.status, "proof": rec.proof,
                      "upper": rec.upper, "witnesses": len(rec.witnesses)}))
    return EXIT_OK


def cmd_maximal(cfg: RunConfig, n: int, g_prev: int | None = None) -> int:
    mfs = MfsSet.load(cfg.mfs_cache) if cfg.mfs_cache else None
    e = cfg.edges
    if e is None:
        table = GTable()
        e = compute_g(n, table, mfs=mfs, exhaustive=cfg.exhaustive or None).value
        if n > 1 and g_prev is None:
            g_prev = table.values().get(n - 1)
    found = maximal_admissible(n, e, mfs, g_prev, cfg.min_degree)
    with _output(cfg) as out:
        for g, labels in found:
            _emit(out, {"graph6": write_graph6(g), "edges": g.m, "labels": labels})
    print(f"{len(found)} admissible graphs of order {n} with {e} edges", file=sys.stderr)
    return EXIT_OK


def cmd_extend(cfg: RunConfig, degree: int) -> int:
    mfs = MfsSet.load(cfg.mfs_cache) if cfg.mfs_cache else None
    with _input(cfg) as src:
        base = [g for _, g in read_graph6_stream(src)]
    found = extend_search(base, degree, cfg.edges, mfs)
    with _output(cfg) as out:
        for g, labels in found:
            _emit(out, {"graph6": write_graph6(g), "edges": g.m, "labels": labels})
    print(f"{len(found)} admissible extensions", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="source", help="graph6 input file ('-' for stdin)")
    common.add_argument("--out", help="output path")
    common.add_argument("--format", dest="fmt", choices=("json", "text", "dot"), default="json")
    common.add_argument("--workers", type=int, default=int(os.environ.get("POW2LAB_WORKERS", "1")))
    common.add_argument("--budget", type=int, default=64, help="instantiation attempts per family")
    common.add_argument("--no-lll", dest="lll", action="store_false")
    common.add_argument("--exhaustive", action="store_true", help="allow searches beyond desk scale (n > 11)")
    common.add_argument("--checkpoint", help="append-only checkpoint file")
    common.add_argument("--mfs-cache", help="graph6 file of known forbidden subgraphs")
    common.add_argument("--min-degree", type=int)
    common.add_argument("--edges", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="pow2lab", description="Graphs labelled with power-of-two edge sums.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    c = sub.add_parser("check", parents=[common], help="verdict per graph6 line")
    c.add_argument("--cache", action="store_true", help="reuse verdicts of isomorphic inputs")
    s = sub.add_parser("solve", parents=[common], help="families and witness for one graph")
    s.add_argument("graph6", nargs="?")
    s.add_argument("--dump-system", action="store_true")
    m = sub.add_parser("mfs", parents=[common], help="minimal forbidden subgraphs up to order u")
    m.add_argument("u", type=int)
    g = sub.add_parser("g", parents=[common], help="compute g(n)")
    g.add_argument("n", type=int)
    g.add_argument("--g-prev", type=int, help="known value of g(n-1)")
    g.add_argument("--lower", type=int, help="known lower bound for g(n)")
    mx = sub.add_parser("maximal", parents=[common], help="admissible graphs with g(n) edges")
    mx.add_argument("n", type=int)
    mx.add_argument("--g-prev", type=int)
    ex = sub.add_parser("extend", parents=[common], help="extend graphs by one vertex")
    ex.add_argument("--degree", type=int, required=True)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig(args.subcommand, args.source, args.out, args.fmt, args.workers, args.budget,
                    args.lll, args.exhaustive, args.checkpoint, args.mfs_cache, args.min_degree, args.edges)
    try:
        cfg.validate()
        if cfg.subcommand == "check":
            return cmd_check(cfg, use_cache=args.cache)
        if cfg.subcommand == "solve":
            return cmd_solve(cfg, args.graph6, args.dump_system)
        if cfg.subcommand == "mfs":
            return cmd_mfs(cfg, args.u)
        if cfg.subcommand == "g":
            return cmd_g(cfg, args.n, args.g_prev, args.lower)
        if cfg.subcommand == "maximal":
            return cmd_maximal(cfg, args.n, args.g_prev)
        if cfg.subcommand == "extend":
            return cmd_extend(cfg, args.degree)
    except UsageError as exc:
        print(f"pow2lab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Graph6Error as exc:
        print(f"pow2lab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvariantViolation, CheckpointError) as exc:
        print(f"pow2lab: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except KeyboardInterrupt:
        print("pow2lab: interrupted", file=sys.stderr)
        return 130
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
