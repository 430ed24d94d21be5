"""Globally adaptive 7/15-point Gauss-Kronrod quadrature on intervals and its tensor form on the unit square."""

import heapq
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from ..defaults import AREA_MAX_CELLS, QUAD_MAX_INTERVALS, QUAD_TOL

log = logging.getLogger(__name__)

# Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes
XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-XGK[:-1], XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([WGK[:-1], WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
for _k, _w in zip((1, 3, 5), WG[:3]):
    GAUSS_WEIGHTS[_k] = _w
    GAUSS_WEIGHTS[14 - _k] = _w
GAUSS_WEIGHTS[7] = WG[3]

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Interval:
    left: float
    right: float
    value: complex
    error: float


@dataclass(frozen=True)
class AdaptiveResult:
    value: complex
    error: float
    evaluations: int
    converged: bool
    intervals: int


def gk15(f: Integrand, left: float, right: float) -> Interval:
    """One 15-point Kronrod rule with |K15 - G7| as error estimate"""
    half = 0.5 * (right - left)
    center = 0.5 * (right + left)
    fx = np.asarray(f(center + half * NODES), dtype=complex)
    kronrod = half * np.dot(KRONROD_WEIGHTS, fx)
    gauss = half * np.dot(GAUSS_WEIGHTS, fx)
    return Interval(left, right, complex(kronrod), float(abs(kronrod - gauss)))


def _deterministic_sum(intervals: Iterable[Interval]) -> complex:
    ordered = sorted(intervals, key=lambda item: item.left)
    return complex(math.fsum(item.value.real for item in ordered), math.fsum(item.value.imag for item in ordered))


def integrate_adaptive(
    f: Integrand,
    a: float,
    b: float,
    tol: float = QUAD_TOL,
    breakpoints: Optional[Iterable[float]] = None,
    max_intervals: int = QUAD_MAX_INTERVALS,
    min_intervals: int = 1,
) -> AdaptiveResult:
    """Integrate f over [a, b] by bisecting the interval with the largest error estimate.

    Stops once the summed error estimate is below max(tol, 1e-14 * |value|). Running
    out of intervals returns the best estimate with converged=False.
    """
    if a == b:
        return AdaptiveResult(0j, 0.0, 1, True, 0)
    if b < a:
        flipped = integrate_adaptive(f, b, a, tol, breakpoints, max_intervals, min_intervals)
        return AdaptiveResult(-flipped.value, flipped.error, flipped.evaluations, flipped.converged, flipped.intervals)

    cuts = sorted({a, b, *(x for x in (breakpoints or ()) if a < x < b)})
    edges: List[float] = []
    for lo, hi in zip(cuts, cuts[1:]):
        edges.extend(np.linspace(lo, hi, min_intervals + 1)[:-1].tolist())
    edges.append(b)

    heap: List[Tuple[float, int, Interval]] = []
    for counter, (lo, hi) in enumerate(zip(edges, edges[1:])):
        piece = gk15(f, lo, hi)
        heap.append((-piece.error, counter, piece))
    heapq.heapify(heap)
    counter = len(heap)
    evaluations = 15 * len(heap)

    while True:
        total_error = math.fsum(item.error for _, _, item in heap)
        value = _deterministic_sum(item for _, _, item in heap)
        if total_error <= max(tol, 1e-14 * abs(value)):
            return AdaptiveResult(value, total_error, evaluations, True, len(heap))
        if len(heap) >= max_intervals:
            log.warning(f"quadrature stopped at {len(heap)} intervals with error estimate {total_error:.3e} > tol {tol:.1e}")
            return AdaptiveResult(value, total_error, evaluations, False, len(heap))

        _, _, worst = heapq.heappop(heap)
        mid = 0.5 * (worst.left + worst.right)
        if not worst.left < mid < worst.right:
            log.warning(f"quadrature interval [{worst.left}, {worst.right}] cannot be bisected further")
            heapq.heappush(heap, (0.0, counter, Interval(worst.left, worst.right, worst.value, 0.0)))
            counter += 1
            continue
        for piece in (gk15(f, worst.left, mid), gk15(f, mid, worst.right)):
            heapq.heappush(heap, (-piece.error, counter, piece))
            counter += 1
        evaluations += 30


SquareIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CubatureResult:
    value: complex
    error: float
    evaluations: int
    converged: bool
    cells: int


def tensor_gk15(f: SquareIntegrand, cells: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """K15 x K15 rule on each cell (t0, t1, s0, s1) with |KK - GK| and |KK - KG| as per-direction errors.

    f receives the node arrays t and s, both of shape (n, 15), and returns values of
    shape (n, 15, 15) indexed [cell, t node, s node].
    """
    t_half = 0.5 * (cells[:, 1] - cells[:, 0])
    s_half = 0.5 * (cells[:, 3] - cells[:, 2])
    t = (0.5 * (cells[:, 1] + cells[:, 0]))[:, None] + t_half[:, None] * NODES
    s = (0.5 * (cells[:, 3] + cells[:, 2]))[:, None] + s_half[:, None] * NODES
    fx = np.asarray(f(t, s), dtype=complex)
    area = t_half * s_half
    kk = area * np.einsum("i,j,nij->n", KRONROD_WEIGHTS, KRONROD_WEIGHTS, fx)
    gk = area * np.einsum("i,j,nij->n", GAUSS_WEIGHTS, KRONROD_WEIGHTS, fx)
    kg = area * np.einsum("i,j,nij->n", KRONROD_WEIGHTS, GAUSS_WEIGHTS, fx)
    return kk, np.abs(kk - gk), np.abs(kk - kg)


def _bisected(cell: np.ndarray, along_t: bool) -> Optional[List[Tuple[float, float, float, float]]]:
    t0, t1, s0, s1 = (float(x) for x in cell)
    if along_t:
        mid = 0.5 * (t0 + t1)
        return [(t0, mid, s0, s1), (mid, t1, s0, s1)] if t0 < mid < t1 else None
    mid = 0.5 * (s0 + s1)
    return [(t0, t1, s0, mid), (t0, t1, mid, s1)] if s0 < mid < s1 else None


def integrate_unit_square(
    f: SquareIntegrand,
    tol: float = QUAD_TOL,
    max_cells: int = AREA_MAX_CELLS,
    min_splits: int = 2,
) -> CubatureResult:
    """Integrate f(t, s) over [0, 1]^2 with tensor Gauss-Kronrod cells refined in batches.

    Every pass bisects the worst cells that together carry half of the error estimate,
    each along its direction with the larger estimate, and evaluates all the children in
    one call of f. Stops like integrate_adaptive.
    """
    edges = np.linspace(0.0, 1.0, min_splits + 1)
    cells = np.array([(a, b, c, d) for a, b in zip(edges, edges[1:]) for c, d in zip(edges, edges[1:])])
    values, t_err, s_err = tensor_gk15(f, cells)
    evaluations = NODES.size ** 2 * len(cells)

    while True:
        errors = t_err + s_err
        total_error = math.fsum(errors)
        value = complex(math.fsum(values.real), math.fsum(values.imag))
        if total_error <= max(tol, 1e-14 * abs(value)):
            return CubatureResult(value, total_error, evaluations, True, len(cells))
        room = max_cells - len(cells)
        if room <= 0:
            log.warning(f"cubature stopped at {len(cells)} cells with error estimate {total_error:.3e} > tol {tol:.1e}")
            return CubatureResult(value, total_error, evaluations, False, len(cells))

        order = np.argsort(-errors, kind="stable")
        count = min(int(np.searchsorted(np.cumsum(errors[order]), 0.5 * total_error)) + 1, room)
        split = np.zeros(len(cells), dtype=bool)
        children: List[Tuple[float, float, float, float]] = []
        for index in order[:count]:
            halves = _bisected(cells[index], bool(t_err[index] >= s_err[index]))
            if halves is None:
                log.warning(f"cubature cell {cells[index].tolist()} cannot be bisected further")
                t_err[index] = s_err[index] = 0.0
                continue
            split[index] = True
            children.extend(halves)
        if not children:
            continue

        new_cells = np.array(children)
        new_values, new_t, new_s = tensor_gk15(f, new_cells)
        evaluations += NODES.size ** 2 * len(new_cells)
        keep = ~split
        cells = np.concatenate([cells[keep], new_cells])
        values = np.concatenate([values[keep], new_values])
        t_err = np.concatenate([t_err[keep], new_t])
        s_err = np.concatenate([s_err[keep], new_s])
