"""Minimal SVG 1.1 rendering of region maps and threshold curves."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .classifier import RegionMap, ThresholdPoint

WIDTH, HEIGHT = 640, 440
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 30, 60
MARKOVIAN_FILL = "#f4d6a0"
NM_FILL = "#9cc3e6"
CURVE_STROKE = "#1a3fa0"


def _num(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


class _Frame:
    def __init__(self, u_max: float):
        self.u_max = u_max
        self.w = WIDTH - LEFT - RIGHT
        self.h = HEIGHT - TOP - BOTTOM

    def x(self, phi: float) -> float:
        return LEFT + self.w * phi / (2 * math.pi)

    def y(self, u: float) -> float:
        return TOP + self.h * (1.0 - u / self.u_max)


def _axes(frame: _Frame) -> list[str]:
    out = [f'<rect x="{LEFT}" y="{TOP}" width="{frame.w}" height="{frame.h}" fill="none" stroke="black"/>']
    for k, label in enumerate(("0", "&#960;/2", "&#960;", "3&#960;/2", "2&#960;")):
        x = frame.x(k * math.pi / 2)
        out.append(f'<line x1="{_num(x)}" y1="{TOP + frame.h}" x2="{_num(x)}" y2="{TOP + frame.h + 5}" stroke="black"/>')
        out.append(f'<text x="{_num(x)}" y="{TOP + frame.h + 20}" text-anchor="middle">{label}</text>')
    n_ticks = int(math.floor(frame.u_max / 0.5))
    for k in range(n_ticks + 1):
        u = 0.5 * k
        y = frame.y(u)
        out.append(f'<line x1="{LEFT - 5}" y1="{_num(y)}" x2="{LEFT}" y2="{_num(y)}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{_num(y + 4)}" text-anchor="end">{_num(u)}</text>')
    out.append(f'<text x="{LEFT + frame.w / 2}" y="{HEIGHT - 15}" text-anchor="middle">&#966;</text>')
    out.append(f'<text x="18" y="{TOP + frame.h / 2}" text-anchor="middle" '
               f'transform="rotate(-90 18 {TOP + frame.h / 2})">&#915;t_d</text>')
    return out


def _polyline(frame: _Frame, curve: Sequence[ThresholdPoint]) -> str:
    pts = " ".join(f"{_num(frame.x(tp.phi))},{_num(frame.y(min(tp.u_star, frame.u_max)))}" for tp in curve)
    return f'<polyline points="{pts}" fill="none" stroke="{CURVE_STROKE}" stroke-width="2.5" shape-rendering="geometricPrecision"/>'


def _document(body: list[str], title: str) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12" shape-rendering="crispEdges">',
        f"<title>{title}</title>",
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def render_map(rmap: RegionMap, curve: Sequence[ThresholdPoint] | None = None) -> str:
    """Colour every grid cell by verdict and overlay the threshold curve.

    Runs of equal verdicts along ``u`` are merged into one rectangle per column.
    """
    phis, us = rmap.phi_axis, rmap.u_axis
    frame = _Frame(float(us[-1]))
    mask = rmap.markovian()
    # cell edges halfway between nodes, clipped to the plot box
    phi_edges = np.concatenate(([phis[0]], 0.5 * (phis[1:] + phis[:-1]), [phis[-1]]))
    u_edges = np.concatenate(([0.0], 0.5 * (us[1:] + us[:-1]), [us[-1]]))
    body = []
    for i, row in enumerate(mask):
        x0, x1 = frame.x(phi_edges[i]), frame.x(phi_edges[i + 1])
        j = 0
        while j < len(row):
            k = j
            while k + 1 < len(row) and row[k + 1] == row[j]:
                k += 1
            y_top, y_bottom = frame.y(u_edges[k + 1]), frame.y(u_edges[j])
            fill = MARKOVIAN_FILL if row[j] else NM_FILL
            body.append(f'<rect x="{_num(x0)}" y="{_num(y_top)}" width="{_num(x1 - x0)}" '
                        f'height="{_num(y_bottom - y_top)}" fill="{fill}" stroke="none"/>')
            j = k + 1
    if curve:
        body.append(_polyline(frame, curve))
    body += _axes(frame)
    body.append(f'<rect x="{LEFT + 10}" y="{TOP + 8}" width="12" height="12" fill="{MARKOVIAN_FILL}" stroke="black"/>')
    body.append(f'<text x="{LEFT + 28}" y="{TOP + 18}">Markovian</text>')
    body.append(f'<rect x="{LEFT + 110}" y="{TOP + 8}" width="12" height="12" fill="{NM_FILL}" stroke="black"/>')
    body.append(f'<text x="{LEFT + 128}" y="{TOP + 18}">non-Markovian</text>')
    return _document(body, "Markovian and non-Markovian regions, window [0, 2 t_d]")


def render_threshold(curve: Sequence[ThresholdPoint], u_max: float) -> str:
    frame = _Frame(u_max)
    body = [_polyline(frame, curve)] + _axes(frame)
    return _document(body, "Threshold in gamma t_d versus phase, window [0, 2 t_d]")
