#!/usr/bin/env python3
# Capacity bounds at the canonical operating point: outer polygon vs the
# achievable sweep of the two conferencing schemes, plus the effect of the
# conferencing budget.
from softhandoff import (
    NetworkConfig,
    boundary_slopes,
    inner_boundary,
    outer_constraints,
    outer_region,
)

cfg = NetworkConfig(alpha=0.2, p=5.0, pi=0.346, d_max=16)

vals = outer_constraints(cfg)
region = outer_region(cfg)
print("=== outer bound, K -> infinity ===")
print(f"sum cap      R_F + R_S   <= {vals.sum_cap:.5f} bits")
print(f"weighted cap 2R_F + R_S  <= {vals.weighted_cap:.5f} bits")
print("polygon vertices:", [(round(x, 4), round(y, 4)) for x, y in region.vertices])
print("boundary slopes:", [round(s, 6) for _, s in boundary_slopes(region)])
print()

print("=== achievable sweep (both schemes, as printed / corrected) ===")
for corrected in (False, True):
    pts = inner_boundary(cfg, scheme="both", grid_resolution=16, corrected=corrected)
    label = "corrected" if corrected else "as printed"
    print(f"-- {label}: y-intercept {pts[0].y:.5f}, x-intercept {pts[-1].x:.5f}")
    for pt in pts[:: max(1, len(pts) // 8)]:
        src = "+".join(f"s{w.scheme}x{w.weight:.2f}" for w in pt.components)
        print(f"   R_F={pt.x:.4f}  R_S={pt.y:.4f}   [{src}]")
print()

print("=== conferencing budget sweep (corrected, R_F = 0) ===")
for pi in (0.0, 0.2, 0.346, 0.7, 1.5):
    pts = inner_boundary(
        NetworkConfig(alpha=0.2, p=5.0, pi=pi, d_max=4), scheme="both",
        grid_resolution=12, corrected=True,
    )
    print(f"   pi={pi:<5}: best slow rate {pts[0].y:.5f} bits")
print()
print("note: the as-printed sweep can escape the outer polygon; both slow-term")
print("variants are exposed on purpose, see the README's discrepancy notes.")
