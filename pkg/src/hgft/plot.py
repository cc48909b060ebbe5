"""Static SVG rendering of the images of circles and rays under ``f``."""

from __future__ import annotations

import numpy as np

from .series import HarmonicFunction, eval_harmonic

DEFAULT_CIRCLES = (0.2, 0.4, 0.6, 0.8, 0.95)
SAMPLES_PER_CURVE = 512
CANVAS = 600


def image_curves(
    f: HarmonicFunction,
    circles=DEFAULT_CIRCLES,
    rays: int = 8,
    samples: int = SAMPLES_PER_CURVE,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Images of ``|z| = r`` for each ``r`` in ``circles`` and of ``rays`` radii."""
    theta = 2.0 * np.pi * np.arange(samples + 1) / samples
    circ = [eval_harmonic(f, r * np.exp(1j * theta)) for r in circles]
    reach = max(circles) if len(circles) else 0.95
    t = np.linspace(0.0, reach, samples)
    ray_imgs = [
        eval_harmonic(f, t * np.exp(2j * np.pi * j / rays)) for j in range(rays)
    ]
    return circ, ray_imgs


def _path(points: np.ndarray, scale: float, closed: bool) -> str:
    c = CANVAS / 2.0
    xs = c + scale * points.real
    ys = c - scale * points.imag
    body = " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(xs, ys))
    tag = "polygon" if closed else "polyline"
    return f'<{tag} points="{body}"/>'


def render_svg(
    f: HarmonicFunction,
    circles=DEFAULT_CIRCLES,
    rays: int = 8,
    covering: float | None = None,
    samples: int = SAMPLES_PER_CURVE,
) -> str:
    """SVG document text; byte-identical for identical inputs."""
    if len(circles) < 1 or rays < 1:
        raise ValueError("need at least one circle and one ray")
    circ, ray_imgs = image_curves(f, circles, rays, samples)
    extent = max(float(np.abs(c).max()) for c in circ + ray_imgs)
    if covering is not None:
        extent = max(extent, covering)
    scale = 0.45 * CANVAS / max(extent, 1e-12)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
        f'<g id="axes" stroke="#bbbbbb" stroke-width="0.5">'
        f'<line x1="0" y1="{CANVAS / 2}" x2="{CANVAS}" y2="{CANVAS / 2}"/>'
        f'<line x1="{CANVAS / 2}" y1="0" x2="{CANVAS / 2}" y2="{CANVAS}"/></g>',
    ]
    if covering is not None:
        lines.append(
            f'<circle id="covering" cx="{CANVAS / 2}" cy="{CANVAS / 2}" r="{scale * covering:.3f}" '
            'fill="#e8f0ff" stroke="#3366cc" stroke-dasharray="4 3" stroke-width="1"/>'
        )
    lines.append('<g id="circles" fill="none" stroke="#aa2222" stroke-width="1">')
    lines.extend(_path(c[:-1], scale, closed=True) for c in circ)
    lines.append("</g>")
    lines.append('<g id="rays" fill="none" stroke="#226622" stroke-width="0.8">')
    lines.extend(_path(r, scale, closed=False) for r in ray_imgs)
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
