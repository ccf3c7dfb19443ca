"""Command line entry point: ``tcarank analyze|tca|census|synth|map``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import PeelConfig, as_fraction
from .coherence import partition_by_first_axis
from .datasets import FORMATS, DatasetSpec, parse_dataset, write_csv_borda
from .errors import InputError, InvariantViolation, NoCoherentPrefix
from .peeling import peel
from .report import build_bundle, lattice_fraction, render_report
from .shuffle import shuffle_census
from .svgmap import map_coordinates, render_svg_map
from .synth import generate_synthetic
from .tca import RestartPolicy, run_tca


def _add_input(sp):
    sp.add_argument("path")
    sp.add_argument("--format", default="order-lines", choices=FORMATS)
    sp.add_argument("--labels", default="auto",
                    help="header, sidecar, auto, or a comma-separated list")


def _add_engine(sp):
    sp.add_argument("--engine", default="auto", choices=("auto", "enumerate", "ascent"))
    sp.add_argument("--restarts", type=int, default=64,
                    help="row seeds for the ascent engine (column seeds are always used)")
    sp.add_argument("--seed", type=int, default=0)


def _profile(args):
    labels = args.labels
    if labels not in ("header", "sidecar", "auto"):
        labels = tuple(x.strip() for x in labels.split(","))
    return parse_dataset(DatasetSpec(args.path, args.format, labels))


def _policy(args):
    return RestartPolicy(n_rows=args.restarts, seed=args.seed)


def _emit(text, out_dir, name):
    if out_dir:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _items(p, spec):
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if tok in p.items:
            out.append(p.items.index(tok))
        elif tok.isdigit() and int(tok) < p.d:
            out.append(int(tok))
        else:
            raise InputError(f"unknown item {tok!r}")
    return tuple(sorted(set(out)))


def cmd_analyze(args):
    p = _profile(args)
    cfg = PeelConfig(as_fraction(args.min_group_frac), args.max_iters, args.engine,
                     _policy(args))
    res = peel(p, cfg)
    bundle = build_bundle(p, res, with_map=args.map, engine=args.engine)
    ext = "md" if args.style == "markdown" else "txt"
    _emit(render_report(bundle, args.style), args.out_dir, f"report.{ext}")
    if args.map and args.out_dir and bundle.voter_map is not None:
        for which in ("voters", "items"):
            _emit(render_svg_map(bundle.voter_map, which), args.out_dir, f"map_{which}.svg")


def cmd_tca(args):
    p = _profile(args)
    ax = run_tca(p, 1, args.engine, _policy(args)).first
    lines = [f"n = {p.n}, d = {p.d}, engine = {ax.method}, maximizers = {ax.ties}",
             f"delta1 = {ax.delta} = {lattice_fraction(ax.delta, p.d)} ({float(ax.delta):.4f})",
             "J1 = {" + ",".join(p.items[j] for j in ax.J1) + "}",
             "J2 = {" + ",".join(p.items[j] for j in ax.J2) + "}",
             f"f1(nega) = {ax.f_nega}",
             "g1: " + " ".join(f"{p.items[j]}={ax.g[j]}" for j in range(p.d))]
    try:
        part = partition_by_first_axis(p, ax)
        lines.append("clusters: " + " ".join(f"{c.alpha}:{c.size}" for c in part.clusters))
    except InputError:
        pass
    _emit("\n".join(lines) + "\n", args.out_dir, "tca.txt")


def cmd_census(args):
    p = _profile(args)
    J1 = _items(p, args.J1)
    if args.voters:
        ids = [int(x) for x in args.voters.split(",") if x.strip()]
    else:
        ids = [int(i) for i in p.row_ids]
    cen = shuffle_census(p, ids, J1)
    lines = [f"{len(cen.entries)} types over {cen.total} voters, J1 = "
             + "{" + ",".join(p.items[j] for j in J1) + "}"]
    lines += [f"{{{','.join(map(str, k))}}}  T={sum(k)}  {c}" for k, c in cen.entries]
    _emit("\n".join(lines) + "\n", args.out_dir, "census.txt")


def _cluster_arg(s):
    try:
        a, n = s.split(":")
        return int(a), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected alpha:size, got {s!r}") from None


def cmd_synth(args):
    syn = generate_synthetic(args.d1, args.d2, args.cluster, seed=args.seed, noise=args.noise)
    if args.out:
        write_csv_borda(syn.profile, args.out)
    else:
        write_csv_borda(syn.profile, sys.stdout)


def cmd_map(args):
    p = _profile(args)
    m = map_coordinates(p, engine=args.engine, title=Path(args.path).name)
    _emit(render_svg_map(m, args.which), args.out_dir, f"map_{args.which}.svg")


def build_parser():
    ap = argparse.ArgumentParser(prog="tcarank", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", help="peel coherent groups and print a report")
    _add_input(a)
    _add_engine(a)
    a.add_argument("--min-group-frac", default="0.01")
    a.add_argument("--max-iters", type=int, default=20)
    a.add_argument("--style", default="text", choices=("text", "markdown"))
    a.add_argument("--no-map", dest="map", action="store_false")
    a.add_argument("--out-dir")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tca", help="first TCA axis of a profile")
    _add_input(t)
    _add_engine(t)
    t.add_argument("--out-dir")
    t.set_defaults(func=cmd_tca)

    c = sub.add_parser("census", help="riffle-shuffle census for a voter subset")
    _add_input(c)
    c.add_argument("--J1", required=True, help="comma-separated item labels or indices")
    c.add_argument("--voters", help="comma-separated voter ids (default: all)")
    c.add_argument("--out-dir")
    c.set_defaults(func=cmd_census)

    s = sub.add_parser("synth", help="write a synthetic profile as csv-borda")
    s.add_argument("--d1", type=int, required=True)
    s.add_argument("--d2", type=int, required=True)
    s.add_argument("--cluster", type=_cluster_arg, action="append", required=True,
                   help="alpha:size, repeatable")
    s.add_argument("--noise", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_synth)

    m = sub.add_parser("map", help="SVG map of the first two TCA axes")
    _add_input(m)
    m.add_argument("--which", default="voters", choices=("voters", "items"))
    m.add_argument("--engine", default="auto", choices=("auto", "enumerate", "ascent"))
    m.add_argument("--out-dir")
    m.set_defaults(func=cmd_map)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InvariantViolation as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    except (InputError, NoCoherentPrefix, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
