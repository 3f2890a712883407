"""Self-contained SVG rendering of ROC curves (no external references)."""

from __future__ import annotations

import os
from typing import Sequence

from .roc import RocCurve, auc_trapezoid

# Unit square geometry.
PLOT_X, PLOT_Y, PLOT_SIZE = 60, 20, 400
LEGEND_X = PLOT_X + PLOT_SIZE + 20
WIDTH, HEIGHT = 700, 480

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
)


def _x(fpr: float) -> float:
    return PLOT_X + fpr * PLOT_SIZE


def _y(tpr: float) -> float:
    return PLOT_Y + (1.0 - tpr) * PLOT_SIZE


def _polyline(curve: RocCurve, color: str) -> str:
    coords = " ".join(f"{_x(p.fpr):.2f},{_y(p.tpr):.2f}" for p in curve.points)
    return (
        f'<polyline points="{coords}" fill="none" stroke="{color}" '
        'stroke-width="1.6"/>'
    )


def emit_svg(
    labeled_curves: Sequence[tuple[str, RocCurve]], path, title: str | None = None
) -> None:
    """Write ROC curves to a standalone SVG 1.1 file.

    Each entry of ``labeled_curves`` is a (label, curve) pair; legend entries
    show the label with the curve's trapezoid AUC to 3 decimals.  The plot
    always carries FPR/TPR axes and the random-classifier diagonal.
    """
    if not labeled_curves:
        raise ValueError("no curves to draw")
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{PLOT_X}" y="{PLOT_Y}" width="{PLOT_SIZE}" height="{PLOT_SIZE}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    if title:
        lines.append(
            f'<text x="{PLOT_X + PLOT_SIZE / 2:.0f}" y="14" font-size="13" '
            f'text-anchor="middle" font-family="sans-serif">{_escape(title)}</text>'
        )
    # Axis ticks every 0.2.
    for i in range(6):
        v = i / 5.0
        x, y = _x(v), _y(v)
        lines.append(
            f'<line x1="{x:.2f}" y1="{PLOT_Y + PLOT_SIZE}" x2="{x:.2f}" '
            f'y2="{PLOT_Y + PLOT_SIZE + 5}" stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{x:.2f}" y="{PLOT_Y + PLOT_SIZE + 18}" font-size="11" '
            f'text-anchor="middle" font-family="sans-serif">{v:.1f}</text>'
        )
        lines.append(
            f'<line x1="{PLOT_X - 5}" y1="{y:.2f}" x2="{PLOT_X}" y2="{y:.2f}" '
            'stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{PLOT_X - 8}" y="{y + 4:.2f}" font-size="11" '
            f'text-anchor="end" font-family="sans-serif">{v:.1f}</text>'
        )
    lines.append(
        f'<text x="{PLOT_X + PLOT_SIZE / 2:.0f}" y="{PLOT_Y + PLOT_SIZE + 38}" '
        'font-size="12" text-anchor="middle" font-family="sans-serif">FPR</text>'
    )
    lines.append(
        f'<text x="18" y="{PLOT_Y + PLOT_SIZE / 2:.0f}" font-size="12" '
        'text-anchor="middle" font-family="sans-serif" '
        f'transform="rotate(-90 18 {PLOT_Y + PLOT_SIZE / 2:.0f})">TPR</text>'
    )
    # Random-classifier diagonal.
    lines.append(
        f'<line x1="{_x(0):.2f}" y1="{_y(0):.2f}" x2="{_x(1):.2f}" y2="{_y(1):.2f}" '
        'stroke="#999999" stroke-width="1" stroke-dasharray="5,4"/>'
    )
    for i, (label, curve) in enumerate(labeled_curves):
        color = PALETTE[i % len(PALETTE)]
        lines.append(_polyline(curve, color))
        ly = PLOT_Y + 14 + 18 * i
        lines.append(
            f'<line x1="{LEGEND_X}" y1="{ly - 4}" x2="{LEGEND_X + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        lines.append(
            f'<text x="{LEGEND_X + 28}" y="{ly}" font-size="12" '
            f'font-family="sans-serif">{_escape(label)} '
            f"(AUC={auc_trapezoid(curve):.3f})</text>"
        )
    lines.append("</svg>")
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
