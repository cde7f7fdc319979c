"""Deterministic SVG rendering of rasters, curves, and intersection data."""

from __future__ import annotations

import math

from .amoeba import AmoebaRaster, Window
from .spine import _clip_ray
from .tropical import TropicalCurve

_SIZE = 640.0


def _fmt(x: float) -> str:
    return f"{x:.4f}"


class SvgCanvas:
    """Window-coordinate drawing surface (y axis flipped for SVG)."""

    def __init__(self, window: Window):
        self.window = window
        span = max(window.x_max - window.x_min, window.y_max - window.y_min)
        self.scale = _SIZE / span
        self.width = (window.x_max - window.x_min) * self.scale
        self.height = (window.y_max - window.y_min) * self.scale
        self.parts: list[str] = []

    def map(self, x: float, y: float) -> tuple[float, float]:
        return ((x - self.window.x_min) * self.scale,
                (self.window.y_max - y) * self.scale)

    def rect(self, x0, y0, x1, y1, fill, opacity=1.0):
        (a, b), (c, d) = self.map(x0, y1), self.map(x1, y0)
        self.parts.append(
            f'<rect x="{_fmt(a)}" y="{_fmt(b)}" width="{_fmt(c - a)}" '
            f'height="{_fmt(d - b)}" fill="{fill}" fill-opacity="{opacity:g}"/>')

    def line(self, p, q, stroke, width=1.5, dashed=False):
        a, b = self.map(*p)
        c, d = self.map(*q)
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        self.parts.append(
            f'<line x1="{_fmt(a)}" y1="{_fmt(b)}" x2="{_fmt(c)}" y2="{_fmt(d)}" '
            f'stroke="{stroke}" stroke-width="{width:g}"{dash}/>')

    def dot(self, p, fill, r=4.0):
        a, b = self.map(*p)
        self.parts.append(f'<circle cx="{_fmt(a)}" cy="{_fmt(b)}" r="{r:g}" fill="{fill}"/>')

    def polygon(self, pts, stroke, width=2.0):
        if len(pts) < 2:
            return
        coords = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (self.map(*p) for p in pts))
        self.parts.append(
            f'<polygon points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width:g}"/>')

    def document(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'width="{_fmt(self.width)}" height="{_fmt(self.height)}" '
                f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">')
        bg = f'<rect width="100%" height="100%" fill="white"/>'
        return "\n".join([head, bg, *self.parts, "</svg>"]) + "\n"


def draw_raster(canvas: SvgCanvas, raster: AmoebaRaster, fill: str, opacity=0.5):
    w = raster.window
    mem = raster.membership
    for iy in range(w.ny):
        ix = 0
        col = mem[:, iy]
        y0 = w.y_min + iy * w.hy
        while ix < w.nx:
            if col[ix]:
                start = ix
                while ix < w.nx and col[ix]:
                    ix += 1
                canvas.rect(w.x_min + start * w.hx, y0,
                            w.x_min + ix * w.hx, y0 + w.hy, fill, opacity)
            else:
                ix += 1


def draw_mask(canvas: SvgCanvas, mask, window: Window, fill: str, opacity=0.85):
    for iy in range(window.ny):
        ix = 0
        col = mask[:, iy]
        y0 = window.y_min + iy * window.hy
        while ix < window.nx:
            if col[ix]:
                start = ix
                while ix < window.nx and col[ix]:
                    ix += 1
                canvas.rect(window.x_min + start * window.hx, y0,
                            window.x_min + ix * window.hx, y0 + window.hy,
                            fill, opacity)
            else:
                ix += 1


def draw_curve(canvas: SvgCanvas, curve: TropicalCurve, stroke: str,
               width=2.0, dashed=False):
    w = canvas.window
    pad = 0.05 * (w.x_max - w.x_min)
    for base, d, t_max, _wt, _dual, _key in curve.segments():
        if t_max is None:
            clip = _clip_ray(base, d, w, pad)
            if clip is None:
                continue
            lo, hi = clip
        else:
            lo, hi = 0.0, float(t_max)
        p = (float(base[0]) + lo * d[0], float(base[1]) + lo * d[1])
        q = (float(base[0]) + hi * d[0], float(base[1]) + hi * d[1])
        canvas.line(p, q, stroke, width, dashed)
