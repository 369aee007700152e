"""Minimal self-contained SVG rendering for spectra and sweep curves.

Output is deterministic text so figures can be diffed alongside the CSV.
"""

from __future__ import annotations

import numpy as np

__all__ = ["heatmap_svg", "line_chart_svg"]


def _viridis_like(t: float) -> str:
    # piecewise-linear dark blue -> teal -> yellow
    stops = [(0.0, (68, 1, 84)), (0.5, (33, 145, 140)), (1.0, (253, 231, 37))]
    for (t0, c0), (t1, c1) in zip(stops, stops[1:]):
        if t <= t1:
            u = (t - t0) / (t1 - t0)
            rgb = [round(a + (b - a) * u) for a, b in zip(c0, c1)]
            return "#{:02x}{:02x}{:02x}".format(*rgb)
    return "#fde725"


def heatmap_svg(
    values,
    x_axis,
    y_axis,
    title: str = "",
    xlabel: str = "signal (nm)",
    ylabel: str = "idler (nm)",
    max_cells: int = 128,
) -> str:
    """Heatmap of ``values[i, j]`` with i along x and j along y.

    Large matrices are block-averaged down to at most ``max_cells`` per side.
    """
    v = np.asarray(values, dtype=float)
    x = np.asarray(x_axis, dtype=float)
    y = np.asarray(y_axis, dtype=float)
    fx = max(1, int(np.ceil(v.shape[0] / max_cells)))
    fy = max(1, int(np.ceil(v.shape[1] / max_cells)))
    nx, ny = v.shape[0] // fx, v.shape[1] // fy
    v = v[: nx * fx, : ny * fy].reshape(nx, fx, ny, fy).mean(axis=(1, 3))
    x = x[: nx * fx].reshape(nx, fx).mean(axis=1)
    y = y[: ny * fy].reshape(ny, fy).mean(axis=1)
    vmax = v.max() if v.max() > 0 else 1.0

    size, margin = 400, 60
    cw, ch = size / nx, size / ny
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 2 * margin}" '
        f'height="{size + 2 * margin}" viewBox="0 0 {size + 2 * margin} {size + 2 * margin}">',
        f'<rect width="100%" height="100%" fill="white"/>',
    ]
    for i in range(nx):
        for j in range(ny):
            px = margin + i * cw
            py = margin + size - (j + 1) * ch
            out.append(
                f'<rect x="{px:.3f}" y="{py:.3f}" width="{cw + 0.05:.3f}" '
                f'height="{ch + 0.05:.3f}" fill="{_viridis_like(v[i, j] / vmax)}"/>'
            )
    out += [
        f'<rect x="{margin}" y="{margin}" width="{size}" height="{size}" '
        f'fill="none" stroke="black"/>',
        f'<text x="{margin + size / 2}" y="{margin / 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<text x="{margin + size / 2}" y="{size + 1.7 * margin}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="{margin / 3}" y="{margin + size / 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" transform="rotate(-90 {margin / 3} '
        f'{margin + size / 2})">{ylabel}</text>',
        f'<text x="{margin}" y="{size + 1.3 * margin}" font-family="sans-serif" '
        f'font-size="10">{x[0]:.2f}</text>',
        f'<text x="{margin + size}" y="{size + 1.3 * margin}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{x[-1]:.2f}</text>',
        f'<text x="{margin - 4}" y="{margin + size}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y[0]:.2f}</text>',
        f'<text x="{margin - 4}" y="{margin + 10}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y[-1]:.2f}</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def line_chart_svg(
    x,
    series: dict[str, np.ndarray],
    title: str = "",
    xlabel: str = "wavelength (nm)",
    ylabel: str = "",
) -> str:
    """Line chart of one or more named series sharing the x axis."""
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    x = np.asarray(x, dtype=float)
    ys = {k: np.asarray(v, dtype=float) for k, v in series.items()}
    lo = min(float(v.min()) for v in ys.values())
    hi = max(float(v.max()) for v in ys.values())
    if hi == lo:
        hi = lo + 1.0
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    w, h, m = 480, 320, 60
    xr = (x.max() - x.min()) or 1.0

    def px(xv):
        return m + (xv - x.min()) / xr * w

    def py(yv):
        return m + h - (yv - lo) / (hi - lo) * h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w + 2 * m}" height="{h + 2 * m}" '
        f'viewBox="0 0 {w + 2 * m} {h + 2 * m}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<rect x="{m}" y="{m}" width="{w}" height="{h}" fill="none" stroke="black"/>',
    ]
    for k, (name, y) in enumerate(ys.items()):
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        color = colors[k % len(colors)]
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        out.append(
            f'<text x="{m + w - 4}" y="{m + 14 + 14 * k}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{name}</text>'
        )
    out += [
        f'<text x="{m + w / 2}" y="{m / 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">{title}</text>',
        f'<text x="{m + w / 2}" y="{h + 1.7 * m}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="{m / 3}" y="{m + h / 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 {m / 3} {m + h / 2})">{ylabel}</text>',
        f'<text x="{m}" y="{h + 1.3 * m}" font-family="sans-serif" font-size="10">'
        f"{x.min():.0f}</text>",
        f'<text x="{m + w}" y="{h + 1.3 * m}" text-anchor="end" font-family="sans-serif" '
        f'font-size="10">{x.max():.0f}</text>',
        f'<text x="{m - 4}" y="{m + h}" text-anchor="end" font-family="sans-serif" '
        f'font-size="10">{lo:.4f}</text>',
        f'<text x="{m - 4}" y="{m + 10}" text-anchor="end" font-family="sans-serif" '
        f'font-size="10">{hi:.4f}</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"
