"""Collect a peel run into a report bundle and render it as text or markdown."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingAxis
from .peeling import PeelResult, group_summary
from .ranks import Profile, first_order_marginals
from .shuffle import marginals_census_check, shuffle_census
from .svgmap import map_coordinates


@dataclass(frozen=True, eq=False)
class ClusterDetail:
    group: int
    alpha: int
    marginals: object
    census: object
    check: object


@dataclass(frozen=True, eq=False)
class ReportBundle:
    profile: Profile
    result: PeelResult
    summaries: tuple
    clusters: tuple
    voter_map: object = None   # MapData of the full profile, or None


def build_bundle(p: Profile, result: PeelResult, with_map=True, engine="auto") -> ReportBundle:
    summaries = tuple(group_summary(g, p.n) for g in result.groups)
    details = []
    for g in result.groups:
        for c in g.clusters:
            sub = p.subset(c.voter_ids)
            m = first_order_marginals(sub)
            cen = shuffle_census(p, c.voter_ids, g.J1, c.alpha)
            details.append(ClusterDetail(g.index, c.alpha, m, cen,
                                         marginals_census_check(m, cen)))
    vmap = None
    if with_map:
        try:
            vmap = map_coordinates(p, engine=engine, title="TCA map")
        except MissingAxis:
            vmap = None
    return ReportBundle(p, result, summaries, tuple(details), vmap)


def lattice_fraction(x: Fraction, d):
    """``x`` written over ``d(d-1)`` when that is exact, e.g. ``48/90``."""
    den = d * (d - 1)
    num = x * den
    if num.denominator == 1:
        return f"{num.numerator}/{den}"
    return str(x)


def _pct(x):
    return f"{100 * float(x):.2f}%"


def _bucket_string(buckets, items):
    parts = []
    for b in buckets:
        names = [items[j] for j in b]
        parts.append(names[0] if len(names) == 1 else "{" + ",".join(names) + "}")
    return " > ".join(parts)


def _group_lines(s, d, md):
    items = s.items
    out = []
    h = "### " if md else ""
    out.append(f"{h}cohG({s.index})  n = {s.size} ({_pct(s.share)})")
    out.append("")
    lat = lattice_fraction(s.delta1, d)
    shown = str(s.delta1) if lat == str(s.delta1) else f"{s.delta1} = {lat}"
    out.append(f"Cross(cohG({s.index}))={100 * float(s.cross):.1f}%   "
               f"delta1 = {shown} ({float(s.delta1):.4f})")
    out.append(f"buckets: {_bucket_string(s.buckets, items)}")
    out.append("")
    order = sorted(range(len(items)), key=lambda j: (-s.beta[j], j))
    if md:
        out += ["| item | beta | stderr | g1 |", "|---|---|---|---|"]
        out += [f"| {items[j]} | {float(s.beta[j]):.2f} | {s.stderr[j]:.3f} | "
                f"{float(s.g1[j]):.3f} |" for j in order]
    else:
        out.append(f"{'item':>8} {'beta':>7} {'stderr':>7} {'g1':>7}")
        out += [f"{items[j]:>8} {float(s.beta[j]):7.2f} {s.stderr[j]:7.3f} "
                f"{float(s.g1[j]):7.3f}" for j in order]
    out.append("")
    if md:
        out += ["| alpha | size | delta1 | lattice | T | Cross |", "|---|---|---|---|---|---|"]
        out += [f"| {a} | {n} | {dl} | {lattice_fraction(dl, d)} | {T} | {c} |"
                for a, n, dl, T, c in s.roster]
    else:
        out.append(f"{'alpha':>5} {'size':>6} {'delta1':>8} {'lattice':>8} "
                   f"{'(dec)':>7} {'T':>4} {'Cross':>6}")
        out += [f"{a:>5} {n:>6} {str(dl):>8} {lattice_fraction(dl, d):>8} "
                f"{float(dl):7.4f} {T:>4} {str(c):>6}" for a, n, dl, T, c in s.roster]
    return out


def _census_lines(details, group, md):
    out = []
    for det in details:
        if det.group != group:
            continue
        total = det.census.total
        out.append(f"census cohC_{group}({det.alpha}): {total} voters, "
                   f"{len(det.census.entries)} types")
        for key, cnt in det.census.entries:
            bullet = "- " if md else "  "
            out.append(f"{bullet}{{{','.join(map(str, key))}}}  T={sum(key)}  {cnt}")
    return out


def render_report(b: ReportBundle, style="text") -> str:
    md = style == "markdown"
    p, r = b.profile, b.result
    d = p.d
    out = []
    out.append(("# " if md else "") + f"Coherent groups: n = {p.n}, d = {d}")
    out.append("")
    out.append(f"items: {', '.join(p.items)}")
    out.append(f"groups: {len(r.groups)}")
    out.append("")
    for s in b.summaries:
        out += _group_lines(s, d, md)
        out.append("")
        out += _census_lines(b.clusters, s.index, md)
        out.append("")
    noisy = r.noisy
    out.append(("## " if md else "") + f"noisyG: {len(noisy)} voters"
               + (f" ({_pct(Fraction(len(noisy), p.n))})" if noisy else ""))
    if noisy:
        out.append("ids: " + " ".join(str(i) for i in noisy))
    out.append("")
    out.append(("## " if md else "") + "trace")
    for rec in r.trace:
        sizes = " ".join(f"{a}:{n}" for a, n in sorted(rec.cluster_sizes.items()))
        verdicts = " ".join(f"{v.alpha}{'+' if v.coherent else '-'}" for v in rec.verdicts)
        flag = "  (tie-break used)" if rec.tie_broken else ""
        out.append(f"iter {rec.iteration}: n={rec.n_in} J1={{{','.join(p.items[j] for j in rec.J1)}}} "
                   f"delta1={rec.delta1} {rec.outcome} size={rec.group_size}{flag}")
        out.append(f"  clusters {sizes}")
        out.append(f"  verdicts {verdicts}")
    return "\n".join(out) + "\n"
