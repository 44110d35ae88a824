"""Achievable-rate region of the two conferencing superposition schemes.

Scheme 1 (single conferencing round, 3 layers): the fast message rides the
two lower layers, the slow message the top layer; the conferencing budget pi
relaxes the fast constraint.  Scheme 2 (d_max rounds, d_max+1 layers): the
fast message rides the bottom layer and slow parts unlock round by round; the
total of all conferenced parts must fit in pi.

The region sweep works in cumulative-power space with vectorised closed
forms; the per-allocation evaluators go through the log-determinant path so
the two routes cross-check each other.  Boundaries carry witness allocations
so that every reported point can be re-derived.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .gaussian_mi import (
    PowerAllocation,
    cf_chain_term,
    cf_cum_vs_y,
    cf_cum_vs_y_cond,
    cf_final_term,
    cf_final_term_corrected,
    cf_scheme1_slow,
    scheme1_terms,
    scheme2_terms,
)
from .model import NetworkConfig, Region, validate_config

__all__ = [
    "SchemeOneEvaluation",
    "SchemeTwoEvaluation",
    "BoundaryWitness",
    "BoundaryPoint",
    "eval_scheme1",
    "eval_scheme2",
    "inner_boundary",
    "inner_region",
    "rate_transfer_closure",
    "best_slow_rate_scheme2",
]

_EPS = 1e-12


@dataclass(frozen=True)
class SchemeOneEvaluation:
    alloc: PowerAllocation
    r_fast_cap: float
    r_sum_cap: float


@dataclass(frozen=True)
class SchemeTwoEvaluation:
    alloc: PowerAllocation
    r_fast_cap: float
    r_sum_cap: float
    conf_load: float
    feasible: bool


def eval_scheme1(
    alloc: PowerAllocation, cfg: NetworkConfig, corrected: bool = False
) -> SchemeOneEvaluation:
    """Fast cap and sum cap of scheme 1 for one allocation.

    corrected=False keeps the slow term conditioned on the depth-1 auxiliary
    exactly as the analysis prints it; corrected=True conditions on the full
    decoded depth-2 level instead.
    """
    t = scheme1_terms(alloc, cfg)
    r_fast = min(t.i_u2_y, t.i_u2_y_given_u1 + cfg.pi)
    slow = t.i_x_slow_given_u2 if corrected else t.i_x_slow_given_u1
    return SchemeOneEvaluation(alloc=alloc, r_fast_cap=r_fast, r_sum_cap=r_fast + slow)


def eval_scheme2(
    alloc: PowerAllocation, cfg: NetworkConfig, corrected: bool = False
) -> SchemeTwoEvaluation:
    """Fast cap, sum cap, and conferencing load of scheme 2 for one allocation.

    corrected=False keeps the final term's neighbour-input side information
    exactly as the analysis prints it; corrected=True restricts it to the
    conferenced levels (see SchemeTwoTerms).
    """
    t = scheme2_terms(alloc, cfg)
    final = t.i_final_corrected if corrected else t.i_final
    return SchemeTwoEvaluation(
        alloc=alloc,
        r_fast_cap=t.i_u_y,
        r_sum_cap=t.conf_load + final,
        conf_load=t.conf_load,
        feasible=t.conf_load <= cfg.pi + _EPS,
    )


# ---------------------------------------------------------------------------
# Vectorised closed-form sweeps (cumulative-power space)
# ---------------------------------------------------------------------------

def _scheme1_table(cfg: NetworkConfig, n: int, corrected: bool):
    """All (r_fast, r_sum) values on the 3-layer sub-simplex grid of step 1/n.

    Returns (r_fast, r_sum, B) with B of shape (m, 3) holding cumulative
    powers; points with total power below 1 are included since interference
    scales with the allocation too.
    """
    i, j, k = np.meshgrid(np.arange(n + 1), np.arange(n + 1), np.arange(n + 1), indexing="ij")
    mask = (i + j + k) <= n
    b1 = i[mask] / n
    b2 = (i[mask] + j[mask]) / n
    b3 = (i[mask] + j[mask] + k[mask]) / n
    p, a = cfg.p, cfg.alpha
    fast = np.minimum(
        cf_cum_vs_y(b2, b3, p, a),
        cf_cum_vs_y_cond(b1, b2, b3, p, a) + cfg.pi,
    )
    b_cond = b2 if corrected else b1
    rsum = fast + cf_scheme1_slow(b_cond, b1, b3, p, a)
    return fast, rsum, np.column_stack([b1, b2, b3])


def _scheme2_batch(B: np.ndarray, cfg: NetworkConfig, corrected: bool = False):
    """(r_fast, conf_load, total) for a batch of cumulative vectors B (m, L)."""
    p, a = cfg.p, cfg.alpha
    total_pow = B[:, -1]
    conf = cf_chain_term(np.zeros(len(B)), B[:, 0], total_pow, p, a)
    for d in range(1, B.shape[1] - 1):
        conf = conf + cf_chain_term(B[:, d - 1], B[:, d], total_pow, p, a)
    r_fast = cf_chain_term(np.zeros(len(B)), B[:, 0], total_pow, p, a)
    b_last = B[:, -2] if B.shape[1] > 1 else np.zeros(len(B))
    if corrected:
        final = cf_final_term_corrected(b_last, total_pow, p, a)
    else:
        final = cf_final_term(b_last, total_pow, p)
    return r_fast, conf, conf + final


def _scheme2_grid(L: int, budget: int = 25_000) -> np.ndarray:
    """Nondecreasing lattice vectors in [0,1]^L at the finest enumerable step."""
    n = 1
    while math.comb(n + 1 + L, L) <= budget:
        n += 1
    pts = np.array(
        list(itertools.combinations_with_replacement(range(n + 1), L)), dtype=float
    )
    return pts / n


def _seed_b1(x: float, cfg: NetworkConfig) -> float | None:
    """Smallest cumulative depth-1 power giving fast rate x at full total power."""
    p, a = cfg.p, cfg.alpha
    n_full = 1 + p * (1 + a * a)
    resid = n_full / (4.0 ** x) - 1 - a * a * p
    b1 = 1 - resid / p
    if b1 > 1 + 1e-9:
        return None
    return min(max(b1, 0.0), 1.0)


def _coordinate_descent(
    B0: np.ndarray,
    cfg: NetworkConfig,
    x_target: float,
    corrected: bool = False,
    n_line: int = 25,
    sweeps: int = 40,
) -> tuple[float, np.ndarray] | None:
    """Maximise the scheme-2 sum cap over cumulative vectors, keeping the fast
    cap at least x_target and the conferencing load within pi.  Deterministic:
    fixed line-search lattice per coordinate, first-best tie breaking."""

    def value(Bm: np.ndarray) -> np.ndarray:
        r_fast, conf, tot = _scheme2_batch(Bm, cfg, corrected)
        ok = (r_fast >= x_target - 1e-9) & (conf <= cfg.pi + 1e-9)
        return np.where(ok, tot, -np.inf)

    B = B0.copy()
    best = value(B[None, :])[0]
    if not np.isfinite(best):
        return None
    L = len(B)
    for _ in range(sweeps):
        improved = False
        for j in range(L):
            lo = float(B[j - 1]) if j > 0 else 0.0
            hi = float(B[j + 1]) if j < L - 1 else 1.0
            if hi - lo < 1e-14:
                continue
            cand = np.linspace(lo, hi, n_line)
            Bm = np.repeat(B[None, :], n_line, axis=0)
            Bm[:, j] = cand
            vals = value(Bm)
            k = int(np.argmax(vals))
            if vals[k] > best + 1e-13:
                best = float(vals[k])
                B = Bm[k]
                improved = True
        if not improved:
            break
    return best, B


def _scheme2_candidates(cfg: NetworkConfig, x: float, grid_best: np.ndarray | None,
                        warm: np.ndarray | None, refine: bool):
    """Deterministic seed set for the bin at fast rate x."""
    L = cfg.d_max + 1
    seeds: list[np.ndarray] = []
    b1 = _seed_b1(x, cfg)
    if b1 is not None:
        top = np.full(L, b1)
        top[-1] = 1.0
        seeds.append(top)
        if L > 2:
            seeds.append(np.concatenate([[b1], np.linspace(b1, 1.0, L)[1:]]))
    if grid_best is not None:
        seeds.append(grid_best)
    if warm is not None:
        seeds.append(warm)
    if not refine:
        seeds = seeds[:0] if grid_best is None else [grid_best]
    return seeds


@dataclass(frozen=True)
class BoundaryWitness:
    """One time-shared component of a boundary point."""

    weight: float
    scheme: int
    alloc: PowerAllocation
    x: float
    y: float


@dataclass(frozen=True)
class BoundaryPoint:
    x: float
    y: float
    components: tuple[BoundaryWitness, ...]


def _alloc_from_cumulative(B: np.ndarray) -> PowerAllocation:
    fr = np.diff(np.concatenate([[0.0], np.asarray(B, dtype=float)]))
    fr = np.clip(fr, 0.0, None)
    s = fr.sum()
    if s > 1.0 + 1e-13:
        fr = fr / s
    return PowerAllocation(tuple(float(v) for v in fr))


def _upper_concave_envelope(xs: np.ndarray, ys: np.ndarray) -> list[int]:
    """Indices of the upper concave hull of (xs, ys), xs ascending."""
    hull: list[int] = []
    for i in range(len(xs)):
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            cross = (xs[i1] - xs[i0]) * (ys[i] - ys[i0]) - (ys[i1] - ys[i0]) * (xs[i] - xs[i0])
            if cross >= -1e-15:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def inner_boundary(
    cfg: NetworkConfig,
    scheme: int | str = "both",
    grid_resolution: int = 64,
    corrected: bool = False,
    refine: bool = True,
) -> list[BoundaryPoint]:
    """Sweep the achievable boundary on a fast-rate grid.

    For each target fast rate the best sum cap over all feasible allocations
    is found (grid sweep for scheme 1, grid plus coordinate descent for
    scheme 2), then the pointwise-best of the requested schemes is closed
    under time sharing (upper concave envelope).  The rate-transfer closure is
    implicit: transferring fast rate to slow moves along the same sum line.
    """
    validate_config(cfg)
    scheme = str(scheme)
    if scheme not in ("1", "2", "both", "best-of-both"):
        raise ValueError("scheme must be 1, 2, or both")
    if grid_resolution < 10:
        raise ValueError("grid_resolution must be at least 10")
    want1 = scheme in ("1", "both", "best-of-both")
    want2 = scheme in ("2", "both", "best-of-both")

    s1_fast = s1_sum = s1_B = None
    if want1:
        s1_fast, s1_sum, s1_B = _scheme1_table(cfg, 64, corrected)

    s2_fast = s2_conf = s2_sum = s2_B = None
    if want2:
        L = cfg.d_max + 1
        s2_B = _scheme2_grid(L)
        s2_fast, s2_conf, s2_sum = _scheme2_batch(s2_B, cfg, corrected)

    x_max = 0.0
    if want1:
        x_max = max(x_max, float(np.max(s1_fast)))
    if want2:
        feas = s2_conf <= cfg.pi + 1e-9
        if np.any(feas):
            x2 = float(np.max(s2_fast[feas]))
            if refine:
                # the true scheme-2 fast cap is limited by pi through the load
                x2 = max(x2, min(cfg.pi, float(np.max(s2_fast))))
            x_max = max(x_max, x2)

    if x_max < 1e-12:
        x_max = 0.0
    xs = np.unique(np.linspace(0.0, x_max, grid_resolution + 1))

    raw: list[tuple[float, float, int, PowerAllocation]] = []
    warm: np.ndarray | None = None
    for x in xs:
        best_val = -np.inf
        best_scheme = 0
        best_alloc: PowerAllocation | None = None
        if want1:
            mask = s1_fast >= x - 1e-12
            if np.any(mask):
                k = int(np.argmax(np.where(mask, s1_sum, -np.inf)))
                if s1_sum[k] > best_val:
                    best_val = float(s1_sum[k])
                    best_scheme = 1
                    b1, b2, b3 = s1_B[k]
                    best_alloc = PowerAllocation((b1, b2 - b1, b3 - b2))
        if want2:
            grid_best_B = None
            mask = (s2_fast >= x - 1e-12) & (s2_conf <= cfg.pi + 1e-9)
            if np.any(mask):
                k = int(np.argmax(np.where(mask, s2_sum, -np.inf)))
                grid_best_B = s2_B[k]
                if s2_sum[k] > best_val:
                    best_val = float(s2_sum[k])
                    best_scheme = 2
                    best_alloc = _alloc_from_cumulative(s2_B[k])
            if refine and (x <= cfg.pi + 1e-12):
                for seed in _scheme2_candidates(cfg, float(x), grid_best_B, warm, refine):
                    out = _coordinate_descent(seed, cfg, float(x), corrected)
                    if out is None:
                        continue
                    val, B = out
                    if val > best_val + 1e-13:
                        best_val = val
                        best_scheme = 2
                        best_alloc = _alloc_from_cumulative(B)
                        warm = B
        if best_alloc is not None and math.isfinite(best_val):
            raw.append((float(x), best_val - float(x), best_scheme, best_alloc))

    if not raw:
        return []

    pxs = np.array([r[0] for r in raw])
    pys = np.array([r[1] for r in raw])
    hull = _upper_concave_envelope(pxs, pys)

    points: list[BoundaryPoint] = []
    for x in pxs:
        # locate hull bracket
        hx = pxs[hull]
        j = int(np.searchsorted(hx, x, side="right")) - 1
        j = min(max(j, 0), len(hull) - 1)
        if j == len(hull) - 1 or abs(hx[j] - x) <= 1e-15:
            idx = hull[j]
            comp = (
                BoundaryWitness(1.0, raw[idx][2], raw[idx][3], raw[idx][0], raw[idx][1]),
            )
            y = pys[hull[j]] if abs(hx[j] - x) <= 1e-15 else None
            if y is None:
                continue
        else:
            i0, i1 = hull[j], hull[j + 1]
            t = (x - pxs[i0]) / (pxs[i1] - pxs[i0])
            y = (1 - t) * pys[i0] + t * pys[i1]
            if t <= 1e-15 or t >= 1 - 1e-15:
                idx = i0 if t <= 1e-15 else i1
                comp = (
                    BoundaryWitness(1.0, raw[idx][2], raw[idx][3], raw[idx][0], raw[idx][1]),
                )
            else:
                comp = (
                    BoundaryWitness(float(1 - t), raw[i0][2], raw[i0][3], raw[i0][0], raw[i0][1]),
                    BoundaryWitness(float(t), raw[i1][2], raw[i1][3], raw[i1][0], raw[i1][1]),
                )
        points.append(BoundaryPoint(float(x), float(y), comp))
    return points


def inner_region(
    cfg: NetworkConfig,
    scheme: int | str = "both",
    grid_resolution: int = 64,
    corrected: bool = False,
    refine: bool = True,
) -> Region:
    """Boundary polyline of the achievable region (see inner_boundary)."""
    pts = inner_boundary(cfg, scheme, grid_resolution, corrected, refine)
    if not pts:
        return Region(vertices=((0.0, 0.0),), kind="polyline", degenerate=True)
    verts = tuple((p.x, p.y) for p in pts)
    region = Region(vertices=verts, kind="polyline")
    return rate_transfer_closure(region)


def rate_transfer_closure(region: Region) -> Region:
    """Close a polyline region under moving fast rate to slow rate.

    If (a, b) is achievable so is (a - d, b + d) for 0 <= d <= a, so the
    closed boundary at x is max(f(x), max over points right of x of
    (x_j + y_j) - x).  Idempotent; only ever enlarges the region.
    """
    if region.kind != "polyline":
        raise ValueError("rate_transfer_closure expects a polyline region")
    v = list(region.vertices)
    if not v:
        return region
    xs = [p[0] for p in v]
    ys = [p[1] for p in v]
    n = len(v)
    suffix = [0.0] * n
    acc = -math.inf
    for i in range(n - 1, -1, -1):
        acc = max(acc, xs[i] + ys[i])
        suffix[i] = acc

    out: list[tuple[float, float]] = []

    def push(x: float, y: float) -> None:
        if out and abs(out[-1][0] - x) <= 1e-15:
            if y > out[-1][1]:
                out[-1] = (x, y)
            return
        out.append((x, y))

    if xs[0] > 0:
        push(0.0, suffix[0])
    for i in range(n):
        push(xs[i], max(ys[i], suffix[i] - xs[i]))
        if i + 1 < n:
            # within (x_i, x_{i+1}] the transfer line has value suffix[i+1] - x;
            # insert the crossover with the original segment if it is interior
            x0, y0, x1, y1 = xs[i], ys[i], xs[i + 1], ys[i + 1]
            if x1 - x0 <= 1e-15:
                continue
            s = (y1 - y0) / (x1 - x0)
            # f(x) = y0 + s (x - x0); line(x) = suffix[i+1] - x
            if abs(s + 1) > 1e-15:
                xc = (suffix[i + 1] - y0 + s * x0) / (s + 1)
                if x0 + 1e-15 < xc < x1 - 1e-15:
                    fc = y0 + s * (xc - x0)
                    push(xc, max(fc, suffix[i + 1] - xc))

    # merge collinear runs
    merged: list[tuple[float, float]] = []
    for pt in out:
        while len(merged) >= 2:
            (ax, ay), (bx, by) = merged[-2], merged[-1]
            cross = (bx - ax) * (pt[1] - ay) - (by - ay) * (pt[0] - ax)
            if abs(cross) <= 1e-13:
                merged.pop()
            else:
                break
        merged.append(pt)
    return Region(vertices=tuple(merged), kind="polyline", degenerate=region.degenerate)


def best_slow_rate_scheme2(
    cfg: NetworkConfig, refine: bool = True, corrected: bool = False
) -> tuple[float, PowerAllocation]:
    """Best slow rate of scheme 2 at zero fast rate (the region's y-intercept).

    Returns the optimiser value and its witness allocation.
    """
    validate_config(cfg)
    L = cfg.d_max + 1
    grid = _scheme2_grid(L)
    r_fast, conf, tot = _scheme2_batch(grid, cfg, corrected)
    mask = conf <= cfg.pi + 1e-9
    best_val = -math.inf
    best_B = None
    if np.any(mask):
        k = int(np.argmax(np.where(mask, tot, -np.inf)))
        best_val, best_B = float(tot[k]), grid[k]
    if refine:
        for seed in _scheme2_candidates(cfg, 0.0, best_B, None, refine):
            out = _coordinate_descent(seed, cfg, 0.0, corrected)
            if out is not None and out[0] > best_val:
                best_val, best_B = out
    if best_B is None:
        return 0.0, PowerAllocation(tuple([0.0] * L))
    return best_val, _alloc_from_cumulative(best_B)
