"""
Sweep CSV reading/writing and a plain SVG line chart.

The SVG is written by hand (no plotting library) so that identical input
gives identical bytes.
"""

import csv
import io
import math
from fractions import Fraction

from .sweep import CurveKind
from .tradeoff import format_rational

HEADER = ["alpha", "d_beta", "alpha_bar", "gamma_bar", "kind", "alpha_exact", "d_beta_exact"]
DECIMALS = 6

COLORS = {
    CurveKind.FUNCTIONAL: "#1f77b4",
    CurveKind.EXACT: "#d62728",
    CurveKind.SHARING: "#2ca02c",
}
DASHES = {CurveKind.FUNCTIONAL: None, CurveKind.EXACT: None, CurveKind.SHARING: "6,4"}


class CSVFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def decimal(x: Fraction) -> str:
    """Fixed-point string, rounded half-even in exact arithmetic."""
    r = round(Fraction(x) * 10 ** DECIMALS)
    sign = "-" if r < 0 else ""
    whole, frac = divmod(abs(r), 10 ** DECIMALS)
    return f"{sign}{whole}.{frac:0{DECIMALS}d}"


def write_csv(points, d: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for pt in points:
        w.writerow([decimal(pt.alpha), decimal(d * pt.beta), decimal(pt.alpha_bar),
                    decimal(pt.gamma_bar), pt.kind.value, format_rational(pt.alpha),
                    format_rational(d * pt.beta)])
    return buf.getvalue()


def read_csv(text: str) -> list:
    """Parse sweep CSV into dict rows; raises CSVFormatError with a line number."""
    reader = csv.reader(io.StringIO(text))
    rows = []
    try:
        header = next(reader)
    except StopIteration:
        raise CSVFormatError(1, "empty file, expected a header row") from None
    if header != HEADER:
        raise CSVFormatError(1, f"expected header {','.join(HEADER)}")
    for fields in reader:
        lineno = reader.line_num
        if not fields:
            continue
        if len(fields) != len(HEADER):
            raise CSVFormatError(lineno, f"expected {len(HEADER)} fields, got {len(fields)}")
        row = dict(zip(HEADER, fields))
        try:
            for key in HEADER[:4]:
                row[key] = float(row[key])
                if not math.isfinite(row[key]):
                    raise ValueError(f"{key} is not finite")
            row["kind"] = CurveKind(row["kind"])
            row["alpha_exact"] = Fraction(row["alpha_exact"])
            row["d_beta_exact"] = Fraction(row["d_beta_exact"])
        except (ValueError, ZeroDivisionError) as exc:
            raise CSVFormatError(lineno, str(exc)) from None
        rows.append(row)
    return rows


def nice_ticks(lo: float, hi: float, count: int = 5) -> list:
    """Round tick positions covering [lo, hi]."""
    if hi <= lo:
        hi = lo + 1
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    start = math.floor(lo / step) * step
    ticks = [round(start, 10)]
    while ticks[-1] < hi - step * 1e-9:
        ticks.append(round(start + len(ticks) * step, 10))
    if len(ticks) == 1:
        ticks.append(round(start + step, 10))
    return ticks


def _num(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _label(v: float) -> str:
    s = f"{v:.4g}"
    return "0" if s == "-0" else s


def render_svg(rows, normalized: bool = False, width: int = 640, height: int = 480) -> str:
    xkey, ykey = ("alpha_bar", "gamma_bar") if normalized else ("alpha", "d_beta")
    xname, yname = ("normalized storage", "normalized repair bandwidth") if normalized \
        else ("storage alpha", "repair bandwidth d*beta")
    xs = [r[xkey] for r in rows]
    ys = [r[ykey] for r in rows]
    xt = nice_ticks(min(xs, default=0.0), max(xs, default=1.0))
    yt = nice_ticks(min(ys, default=0.0), max(ys, default=1.0))
    left, right, top, bottom = 70, 150, 20, 50
    pw, ph = width - left - right, height - top - bottom
    x0, x1, y0, y1 = xt[0], xt[-1], yt[0], yt[-1]

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        '<g font-family="sans-serif" font-size="11" fill="black">',
    ]
    for t in xt:
        x = _num(px(t))
        out.append(f'<line x1="{x}" y1="{top}" x2="{x}" y2="{top + ph}" stroke="#dddddd"/>')
        out.append(f'<text x="{x}" y="{top + ph + 16}" text-anchor="middle">{_label(t)}</text>')
    for t in yt:
        y = _num(py(t))
        out.append(f'<line x1="{left}" y1="{y}" x2="{left + pw}" y2="{y}" stroke="#dddddd"/>')
        out.append(f'<text x="{left - 6}" y="{y}" text-anchor="end" '
                   f'dominant-baseline="middle">{_label(t)}</text>')
    out.append(f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>')
    out.append(f'<text x="{left + pw / 2:g}" y="{height - 10}" text-anchor="middle">{xname}</text>')
    out.append(f'<text x="16" y="{top + ph / 2:g}" text-anchor="middle" '
               f'transform="rotate(-90 16 {top + ph / 2:g})">{yname}</text>')
    out.append('</g>')

    legend_y = top + 10
    for kind in CurveKind:
        pts = sorted((r[xkey], r[ykey]) for r in rows if r["kind"] is kind)
        if not pts:
            continue
        coords = " ".join(f"{_num(px(x))},{_num(py(y))}" for x, y in pts)
        dash = f' stroke-dasharray="{DASHES[kind]}"' if DASHES[kind] else ""
        out.append(f'<polyline points="{coords}" fill="none" stroke="{COLORS[kind]}" '
                   f'stroke-width="2"{dash}/>')
        lx = left + pw + 15
        out.append(f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 25}" y2="{legend_y}" '
                   f'stroke="{COLORS[kind]}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{lx + 32}" y="{legend_y}" font-family="sans-serif" '
                   f'font-size="11" dominant-baseline="middle">{kind.value}</text>')
        legend_y += 18
    out.append('</svg>')
    return "\n".join(out) + "\n"

