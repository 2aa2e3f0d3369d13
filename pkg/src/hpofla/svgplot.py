"""Static SVG renderers for the three standard views.

Hand-built 800x600 documents with no external assets. Element roles are kept
countable: <circle> only marks scatter points, <line> only the regression
line or the bisector, and every box glyph is a <rect class="box"> with its
whiskers and median drawn as <path>. All coordinates go through one fixed
formatter so equal inputs give byte-identical files.
"""

from .analyses import FitnessBinning, FdcResult, LocalityProfile, NeutralityProfile

W, H = 800, 600
ML, MR, MT, MB = 65.0, 25.0, 30.0, 55.0
PX0, PX1 = ML, W - MR
PY0, PY1 = H - MB, MT  # pixel y grows downward

POINT_COLOR = "#444444"
LINE_COLOR = "#1f6fb4"
BOX_COLOR = "#5b8db8"


def _c(v: float) -> str:
    return format(float(v), ".2f")


def _label(v: float) -> str:
    return format(float(v), ".4g")


class _Axes:
    def __init__(self, xmin, xmax, ymin, ymax):
        self.xmin, self.xmax = float(xmin), float(xmax)
        self.ymin, self.ymax = float(ymin), float(ymax)

    def x(self, v: float) -> float:
        return PX0 + (float(v) - self.xmin) / (self.xmax - self.xmin) * (PX1 - PX0)

    def y(self, v: float) -> float:
        return PY0 + (float(v) - self.ymin) / (self.ymax - self.ymin) * (PY1 - PY0)


def _frame(ax: _Axes, xlabel: str, ylabel: str) -> list[str]:
    parts = [
        f'<rect x="{_c(PX0)}" y="{_c(PY1)}" width="{_c(PX1 - PX0)}" '
        f'height="{_c(PY0 - PY1)}" fill="none" stroke="#222222" stroke-width="1"/>'
    ]
    ticks = 4
    tick_paths = []
    for i in range(ticks + 1):
        xv = ax.xmin + (ax.xmax - ax.xmin) * i / ticks
        px = ax.x(xv)
        tick_paths.append(f"M{_c(px)},{_c(PY0)}v6")
        parts.append(
            f'<text x="{_c(px)}" y="{_c(PY0 + 20)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_label(xv)}</text>'
        )
        yv = ax.ymin + (ax.ymax - ax.ymin) * i / ticks
        py = ax.y(yv)
        tick_paths.append(f"M{_c(PX0)},{_c(py)}h-6")
        parts.append(
            f'<text x="{_c(PX0 - 9)}" y="{_c(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_label(yv)}</text>'
        )
    parts.insert(1, f'<path d="{" ".join(tick_paths)}" stroke="#222222" fill="none"/>')
    parts.append(
        f'<text x="{_c((PX0 + PX1) / 2)}" y="{_c(H - 12)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{_c((PY0 + PY1) / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 16 {_c((PY0 + PY1) / 2)})">{ylabel}</text>'
    )
    return parts


def _document(parts: list[str]) -> str:
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">\n'
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>\n'
        f"{body}\n</svg>\n"
    )


def _box_glyph(ax: _Axes, cx: float, half_w: float, box) -> list[str]:
    x0, x1 = ax.x(cx - half_w), ax.x(cx + half_w)
    parts = [
        # whiskers: min..q1 and q3..max
        f'<path d="M{_c(ax.x(cx))},{_c(ax.y(box.lo))}V{_c(ax.y(box.q1))} '
        f'M{_c(ax.x(cx))},{_c(ax.y(box.q3))}V{_c(ax.y(box.hi))}" '
        f'stroke="{BOX_COLOR}" fill="none"/>',
        f'<rect class="box" x="{_c(x0)}" y="{_c(ax.y(box.q3))}" '
        f'width="{_c(x1 - x0)}" height="{_c(ax.y(box.q1) - ax.y(box.q3))}" '
        f'fill="#dce8f2" stroke="{BOX_COLOR}"/>',
        f'<path d="M{_c(x0)},{_c(ax.y(box.median))}H{_c(x1)}" '
        f'stroke="{BOX_COLOR}" stroke-width="2" fill="none"/>',
    ]
    return parts


def render_fdc_svg(result: FdcResult) -> str:
    """Scatter of (distance, fitness) plus the regression line, if defined."""
    xs = [p[0] for p in result.points]
    ys = [p[1] for p in result.points]
    xmax = max(xs) if xs and max(xs) > 0 else 1.0
    ymax = max(ys) if ys and max(ys) > 0 else 1.0
    ax = _Axes(0.0, xmax, 0.0, ymax)
    parts = _frame(ax, "distance to nearest optimum", "fitness")
    for x, y in result.points:
        parts.append(
            f'<circle cx="{_c(ax.x(x))}" cy="{_c(ax.y(y))}" r="2.5" '
            f'fill="{POINT_COLOR}" fill-opacity="0.6"/>'
        )
    seg = _clip_line(result.slope, result.intercept, 0.0, xmax, 0.0, ymax)
    if seg is not None:
        (xa, ya), (xb, yb) = seg
        parts.append(
            f'<line x1="{_c(ax.x(xa))}" y1="{_c(ax.y(ya))}" '
            f'x2="{_c(ax.x(xb))}" y2="{_c(ax.y(yb))}" '
            f'stroke="{LINE_COLOR}" stroke-width="1.5"/>'
        )
    return _document(parts)


def _clip_line(slope, intercept, xmin, xmax, ymin, ymax):
    """Visible segment of y = intercept + slope * x inside the data window."""
    if slope is None or intercept is None:
        return None
    if slope == 0.0:
        if ymin <= intercept <= ymax:
            return (xmin, intercept), (xmax, intercept)
        return None
    lo = (ymin - intercept) / slope
    hi = (ymax - intercept) / slope
    xa = max(xmin, min(lo, hi))
    xb = min(xmax, max(lo, hi))
    if xa > xb:
        return None
    return (xa, intercept + slope * xa), (xb, intercept + slope * xb)


def render_locality_svg(profile: LocalityProfile, binning: FitnessBinning) -> str:
    """Box glyph of neighbor-mean fitness per bin, with the bisector line."""
    top = binning.max_fitness
    ax = _Axes(0.0, top, 0.0, top)
    parts = _frame(ax, "fitness bin", "neighbor mean fitness")
    half_w = 0.35 * binning.step
    for k, box in enumerate(profile.bins):
        if box is None:
            continue
        parts.extend(_box_glyph(ax, binning.center(k), half_w, box))
    parts.append(
        f'<line x1="{_c(ax.x(0.0))}" y1="{_c(ax.y(0.0))}" '
        f'x2="{_c(ax.x(top))}" y2="{_c(ax.y(top))}" '
        f'stroke="#999999" stroke-dasharray="5,4"/>'
    )
    return _document(parts)


def render_neutrality_svg(profile: NeutralityProfile, binning: FitnessBinning) -> str:
    """Box glyph of the neutral-neighbor count per bin."""
    tops = [b.hi for b in profile.bins if b is not None]
    ymax = max(tops) if tops and max(tops) > 0 else 1.0
    ax = _Axes(0.0, binning.max_fitness, 0.0, ymax)
    parts = _frame(ax, "fitness bin", "neutral neighbors")
    half_w = 0.35 * binning.step
    for k, box in enumerate(profile.bins):
        if box is None:
            continue
        parts.extend(_box_glyph(ax, binning.center(k), half_w, box))
    return _document(parts)
