"""Column polyominoes of words: perimeter identity and rendering.

A word (x0, ..., x_m) materializes as the union of unit cells
{(i, h) : 0 <= i <= m, 1 <= h <= x_i}: column i is a stack of x_i cells on a
common baseline.  The perimeter (number of unit boundary edges) is computed
two independent ways:

* :func:`perimeter_decomposed` -- the decomposition P = Q + x0 + x_m + 2n
  with Q the sum of absolute gaps;
* :func:`perimeter_edge_count` -- literal geometry: an edge is on the
  boundary iff exactly one of its two adjacent cells belongs to the union.

Their equality over all words is one of the library's acceptance checks.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

RENDER_MAX_HEIGHT = 10**4


class PerimeterBreakdown(NamedTuple):
    """Perimeter split P = Q + x0 + x_m + 2n (Q gap sum, R = P - 2n vertical part)."""

    Q: int
    R: int
    P: int


def _check_word(word: Sequence[int]) -> np.ndarray:
    letters = np.asarray(word, dtype=np.int64)
    if letters.ndim != 1 or letters.size == 0:
        raise ValueError("a word is a nonempty 1-D sequence of letters")
    if letters.min() < 1:
        raise ValueError("letters must be positive integers")
    return letters


def perimeter_decomposed(word: Sequence[int]) -> PerimeterBreakdown:
    """Exact breakdown of the perimeter of a word's polyomino.

    For a single-letter word Q = 0 and P = 2*x0 + 2.
    """
    letters = _check_word(word)
    n = letters.size
    q = int(np.abs(np.diff(letters)).sum()) if n > 1 else 0
    r = q + int(letters[0]) + int(letters[-1])
    return PerimeterBreakdown(Q=q, R=r, P=r + 2 * n)


def perimeter_edge_count(word: Sequence[int]) -> int:
    """Count boundary edges of the cell union directly (geometry oracle).

    Builds the occupancy grid and counts, separately for vertical and
    horizontal unit edges, the positions where occupancy changes between the
    two adjacent cells (outside counts as empty).
    """
    letters = _check_word(word)
    n = letters.size
    height = int(letters.max())
    grid = np.zeros((n + 2, height + 2), dtype=bool)  # zero padding = outside
    cols = np.arange(1, height + 1)
    grid[1 : n + 1, 1 : height + 1] = cols[None, :] <= letters[:, None]
    vertical = np.count_nonzero(grid[:-1, :] != grid[1:, :])
    horizontal = np.count_nonzero(grid[:, :-1] != grid[:, 1:])
    return int(vertical + horizontal)


def render_polyomino(word: Sequence[int], cell_px: float = 24.0) -> str:
    """Self-contained SVG drawing of the word's polyomino.

    Unit cells are filled squares; the boundary is overdrawn as one path with
    a move-to/line-to pair per boundary edge, so the number of ``L`` commands
    in the path equals the perimeter.  Words taller than 10**4 are refused.
    """
    letters = _check_word(word)
    if letters.max() > RENDER_MAX_HEIGHT:
        raise ValueError(f"render refuses letters above {RENDER_MAX_HEIGHT}")
    n = letters.size
    height = int(letters.max())
    margin = cell_px
    width_px = n * cell_px + 2 * margin
    height_px = height * cell_px + 2 * margin

    def sx(x: float) -> float:
        return margin + x * cell_px

    def sy(y: float) -> float:  # flip: baseline at the bottom
        return height_px - margin - y * cell_px

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px:.0f}" '
        f'height="{height_px:.0f}" viewBox="0 0 {width_px:.0f} {height_px:.0f}">',
        f'<rect width="{width_px:.0f}" height="{height_px:.0f}" fill="white"/>',
        '<g fill="#9ecae1" stroke="#6baed6" stroke-width="1">',
    ]
    for i, x in enumerate(letters):
        for h in range(int(x)):
            parts.append(
                f'<rect x="{sx(i):.2f}" y="{sy(h + 1):.2f}" '
                f'width="{cell_px:.2f}" height="{cell_px:.2f}"/>'
            )
    parts.append("</g>")

    cells = {(i, h) for i, x in enumerate(letters) for h in range(1, int(x) + 1)}
    edges = []
    for i, h in sorted(cells):
        # vertical edges: left of (i,h) vs (i-1,h), right vs (i+1,h)
        if (i - 1, h) not in cells:
            edges.append(((i, h - 1), (i, h)))
        if (i + 1, h) not in cells:
            edges.append(((i + 1, h - 1), (i + 1, h)))
        # horizontal edges: below vs (i,h-1), above vs (i,h+1)
        if (i, h - 1) not in cells:
            edges.append(((i, h - 1), (i + 1, h - 1)))
        if (i, h + 1) not in cells:
            edges.append(((i, h), (i + 1, h)))
    d = " ".join(
        f"M {sx(ax):.2f} {sy(ay):.2f} L {sx(bx):.2f} {sy(by):.2f}"
        for (ax, ay), (bx, by) in edges
    )
    parts.append(f'<path d="{d}" stroke="#08306b" stroke-width="2.5" fill="none"/>')
    parts.append(
        f'<text x="{margin:.0f}" y="{margin * 0.7:.0f}" font-family="monospace" '
        f'font-size="12">word={",".join(str(int(x)) for x in letters)} '
        f"P={perimeter_decomposed(letters).P}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
