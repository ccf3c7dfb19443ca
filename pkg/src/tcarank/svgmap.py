"""TCA maps: coordinates on the first two axes and a plain SVG 1.1 renderer."""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import InputError, MissingAxis
from .ranks import Profile
from .tca import run_tca


@dataclass(frozen=True)
class MapPoint:
    x: object           # exact Fraction
    y: object
    label: str
    count: int
    ids: tuple = ()


@dataclass(frozen=True)
class MapData:
    voters: tuple
    items: tuple
    deltas: tuple       # dispersions of the axes used
    axes: tuple = (1, 2)
    title: str = ""


def _label(orderings, count):
    distinct = list(OrderedDict.fromkeys(orderings))
    if len(distinct) == 1:
        return distinct[0] + (str(count) if count > 1 else "")
    return f"{count} ballots"


def map_coordinates(p: Profile, axes=(1, 2), engine="auto", title="") -> MapData:
    """Voter (f) and item (g) coordinates; coincident voters share one point."""
    need = max(axes)
    res = run_tca(p, need, engine)
    if len(res.axes) < need:
        raise MissingAxis(f"only {len(res.axes)} nontrivial axes; map needs axis {need}")
    ax_x, ax_y = res.axes[axes[0] - 1], res.axes[axes[1] - 1]
    fx, fy = ax_x.f, ax_y.f
    groups = OrderedDict()
    for i in range(p.n):
        groups.setdefault((fx[i], fy[i]), []).append(i)
    voters = []
    for (x, y), members in groups.items():
        label = _label([p.ordering_label(i) for i in members], len(members))
        voters.append(MapPoint(x, y, label, len(members),
                               tuple(int(p.row_ids[i]) for i in members)))
    gx, gy = ax_x.g, ax_y.g
    items = tuple(MapPoint(gx[j], gy[j], p.items[j], 1) for j in range(p.d))
    return MapData(tuple(voters), items, (ax_x.delta, ax_y.delta), tuple(axes), title)


def _fmt(v):
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg_map(m: MapData, which="voters", width=640, height=480) -> str:
    """Deterministic SVG text for the voter or item cloud of ``m``."""
    if which not in ("voters", "items"):
        raise InputError("which must be 'voters' or 'items'")
    pts = m.voters if which == "voters" else m.items
    pad = 48
    xs = [float(p.x) for p in pts] + [0.0]
    ys = [float(p.y) for p in pts] + [0.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    sx = (width - 2 * pad) / ((x1 - x0) or 1.0)
    sy = (height - 2 * pad) / ((y1 - y0) or 1.0)

    def X(v):
        return pad + (v - x0) * sx

    def Y(v):
        return height - pad - (v - y0) * sy

    a, b = m.axes
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{_fmt(pad)}" y1="{_fmt(Y(0.0))}" x2="{_fmt(width - pad)}" '
        f'y2="{_fmt(Y(0.0))}" stroke="#999" stroke-width="0.5"/>',
        f'<line x1="{_fmt(X(0.0))}" y1="{_fmt(pad)}" x2="{_fmt(X(0.0))}" '
        f'y2="{_fmt(height - pad)}" stroke="#999" stroke-width="0.5"/>',
        f'<text x="{_fmt(width - pad)}" y="{_fmt(Y(0.0) - 4)}" font-size="10" '
        f'text-anchor="end">axis {a} ({_fmt(float(m.deltas[0]))})</text>',
        f'<text x="{_fmt(X(0.0) + 4)}" y="{_fmt(pad - 6)}" font-size="10">'
        f'axis {b} ({_fmt(float(m.deltas[1]))})</text>',
    ]
    if m.title:
        out.append(f'<text x="{_fmt(width / 2)}" y="16" font-size="12" '
                   f'text-anchor="middle">{escape(m.title)}</text>')
    for p in pts:
        cx, cy = X(float(p.x)), Y(float(p.y))
        if which == "voters":
            out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2.5" fill="#1f4e9c"/>')
        else:
            out.append(f'<rect x="{_fmt(cx - 3)}" y="{_fmt(cy - 3)}" width="6" height="6" '
                       f'fill="#b2182b"/>')
        out.append(f'<text x="{_fmt(cx + 4)}" y="{_fmt(cy - 4)}" font-size="8">'
                   f'{escape(p.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
