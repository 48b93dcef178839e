"""Two-dimensional pictures of regions and bounds.

The figure is written with matplotlib (Agg, no display needed) and a sibling
CSV lists the exact vertices of every drawn layer, so the numbers behind the
picture never have to be read off the image.  SVG output is byte-stable:
the id salt is fixed and the date stamp is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
from matplotlib.figure import Figure  # noqa: E402

from .errors import InvalidArgumentError  # noqa: E402
from .io import rows_csv  # noqa: E402
from .ratpoly import Polytope, frac_str, vertices  # noqa: E402

LAYERS = ("exact", "tcb", "ddb1", "ddb2")
MAX_EXTENT = 8

_STYLE = {
    "exact": dict(color="#1f5fbf", lw=1.6, ls="-"),
    "tcb": dict(color="#555555", lw=1.2, ls=":"),
    "ddb1": dict(color="#c0392b", lw=1.4, ls="--"),
    "ddb2": dict(color="#27884a", lw=1.4, ls="-."),
}
_LABEL = {"exact": "exact region", "tcb": "total capacity", "ddb1": "dual distance I", "ddb2": "dual distance II"}


@dataclass
class PlotSpec:
    axes: tuple[str, str] = ("l1", "l2")
    size: tuple[float, float] = (5.0, 5.0)
    clip: tuple[Fraction, Fraction] | None = None
    title: str | None = None
    layers: dict[str, Polytope] = field(default_factory=dict)

    def __post_init__(self):
        for name, P in self.layers.items():
            if name not in LAYERS:
                raise InvalidArgumentError(f"unknown layer {name!r}; choose from {', '.join(LAYERS)}")
            if P.dim != 2:
                raise InvalidArgumentError(f"layer {name!r} has {P.dim} free axes, need exactly 2")
        if self.clip is not None and not all(c > 0 for c in self.clip):
            raise InvalidArgumentError(f"clip box must be positive, got {self.clip}")
        if not all(s > 0 for s in self.size):
            raise InvalidArgumentError(f"canvas size must be positive, got {self.size}")


def _clip_box(polys: dict[str, list]) -> tuple[Fraction, Fraction]:
    xs = [v[0] for vs in polys.values() for v in vs]
    ys = [v[1] for vs in polys.values() for v in vs]
    xm = max(xs, default=Fraction(0)) * Fraction(6, 5)
    ym = max(ys, default=Fraction(0)) * Fraction(6, 5)
    return (min(xm, Fraction(MAX_EXTENT)) or Fraction(1), min(ym, Fraction(MAX_EXTENT)) or Fraction(1))


def _ticks(limit: Fraction, notable: Sequence[Fraction]) -> list[Fraction]:
    ts = {Fraction(t) for t in range(floor(limit) + 1)}
    ts |= {v for v in notable if 0 < v <= limit and v.denominator != 1}
    return sorted(ts)


def render(spec: PlotSpec, out: str | Path) -> tuple[Path, Path]:
    """Draw ``spec.layers`` and write ``out`` plus ``out`` with a .csv suffix."""
    out = Path(out)
    polys = {name: vertices(P) for name, P in spec.layers.items()}
    xmax, ymax = spec.clip if spec.clip is not None else _clip_box(polys)

    fig = Figure(figsize=spec.size)
    ax = fig.add_subplot(1, 1, 1)
    notable_x, notable_y = [], []
    empty = []
    for name in LAYERS:
        if name not in polys:
            continue
        vs = polys[name]
        st = _STYLE[name]
        if not vs:
            empty.append(name)
            continue
        xs = [float(v[0]) for v in vs] + [float(vs[0][0])]
        ys = [float(v[1]) for v in vs] + [float(vs[0][1])]
        if name == "exact":
            if len(vs) >= 3:
                ax.fill(xs[:-1], ys[:-1], color=st["color"], alpha=0.35, lw=0)
            notable_x += [v[0] for v in vs]
            notable_y += [v[1] for v in vs]
        if len(vs) == 1:
            ax.plot(xs[:1], ys[:1], marker="o", color=st["color"], ls="none", label=_LABEL[name])
        else:
            ax.plot(xs, ys, label=_LABEL[name], **st)

    if empty:
        ax.text(0.5, 0.5, "\n".join(f"{n}: empty region" for n in empty) if empty != ["exact"] else "empty region",
                transform=ax.transAxes, ha="center", va="center", fontsize=11)

    xt, yt = _ticks(xmax, notable_x), _ticks(ymax, notable_y)
    ax.set_xticks([float(t) for t in xt], [frac_str(t) for t in xt])
    ax.set_yticks([float(t) for t in yt], [frac_str(t) for t in yt])
    ax.set_xlim(0, float(xmax))
    ax.set_ylim(0, float(ymax))
    ax.set_xlabel(spec.axes[0])
    ax.set_ylabel(spec.axes[1])
    ax.set_aspect("equal", adjustable="box")
    ax.grid(True, lw=0.3, alpha=0.5)
    if spec.title:
        ax.set_title(spec.title)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(loc="upper right", fontsize=8, frameon=False)
    fig.tight_layout()

    fmt = out.suffix.lstrip(".").lower() or "svg"
    with matplotlib.rc_context({"svg.hashsalt": "servicerate", "svg.fonttype": "path"}):
        meta = {"Date": None} if fmt == "svg" else None
        fig.savefig(out, format=fmt, metadata=meta)

    rows = [("layer", spec.axes[0], spec.axes[1])]
    for name in LAYERS:
        for v in polys.get(name, ()):
            rows.append((name, frac_str(v[0]), frac_str(v[1])))
    csv_path = out.with_suffix(".csv")
    csv_path.write_text(rows_csv(rows))
    return out, csv_path
