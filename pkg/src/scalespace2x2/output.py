"""Deterministic CSV, JSON and SVG writers for response curves."""
from __future__ import annotations

import io
import json
import math
from typing import Mapping, Sequence

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def csv_text(columns: Mapping[str, Sequence[float]]) -> str:
    names = list(columns)
    data = [np.asarray(columns[n], dtype=float) for n in names]
    out = io.StringIO()
    out.write(",".join(names) + "\n")
    for row in zip(*data):
        out.write(",".join(fmt(v) for v in row) + "\n")
    return out.getvalue()


def read_signal_csv(text: str) -> np.ndarray:
    """Parse a single-column CSV of floats; blank lines are ignored."""
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if "," in line:
            raise ValueError(f"line {lineno}: expected a single column, got {line!r}")
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"line {lineno}: not a number: {line!r}") from None
    if len(values) < 3:
        raise ValueError(f"signal needs at least 3 samples, got {len(values)}")
    return np.array(values)


def signal_csv_text(x) -> str:
    return "".join(fmt(v) + "\n" for v in np.asarray(x, dtype=float))


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def json_text(obj) -> str:
    """JSON with non-finite floats mapped to null."""
    return json.dumps(_clean(obj), indent=2, ensure_ascii=False) + "\n"


def svg_text(
    x: Sequence[float],
    series: Mapping[str, Sequence[float]],
    title: str = "",
    width: int = 640,
    height: int = 400,
) -> str:
    """Standalone SVG line plot, one polyline per series."""
    x = np.asarray(x, dtype=float)
    ys = {k: np.asarray(v, dtype=float) for k, v in series.items()}
    finite = np.concatenate([v[np.isfinite(v)] for v in ys.values()] or [np.zeros(1)])
    lo, hi = float(finite.min()), float(finite.max())
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    left, right, top, bottom = 60, 20, 30, 40
    pw, ph = width - left - right, height - top - bottom

    def px(v):
        return left + pw * (v - x[0]) / (x[-1] - x[0])

    def py(v):
        return top + ph * (hi - v) / (hi - lo)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{left}" y="{height - 12}" font-size="11">{fmt(x[0])}</text>',
        f'<text x="{left + pw}" y="{height - 12}" text-anchor="end" font-size="11">{fmt(x[-1])}</text>',
        f'<text x="{left - 4}" y="{top + 4}" text-anchor="end" font-size="11">{hi:.3g}</text>',
        f'<text x="{left - 4}" y="{top + ph}" text-anchor="end" font-size="11">{lo:.3g}</text>',
    ]
    for i, (name, y) in enumerate(ys.items()):
        color = PALETTE[i % len(PALETTE)]
        ok = np.isfinite(y)
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x[ok], y[ok]))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(
            f'<text x="{left + pw - 4}" y="{top + 14 + 14 * i}" text-anchor="end" '
            f'font-size="11" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
