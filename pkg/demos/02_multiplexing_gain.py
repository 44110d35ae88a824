#!/usr/bin/env python3
# Multiplexing-gain polygons: exact vertices, the three achievable corners,
# the time-sharing line, and the rx/tx duality.
from fractions import Fraction

from softhandoff import MuxRegionSpec, corner_points, mu_max, mux_region, timeshare_point

D = 10

print(f"=== prelog regions at d_max = {D} ===")
for mu in (0.0, 0.3, Fraction(10, 22), 0.7):
    r = mux_region(MuxRegionSpec("rx_bidirectional", mu, D))
    print(f"mu = {str(mu):<6} vertices:", [(round(x, 6), round(y, 6)) for x, y in r.vertices])
print(f"(saturation prelog mu_max = {mu_max(D):.6f} = {D}/{2 * D + 2})")
print()

print("=== achievable corners at mu = 0.3 ===")
for pt in corner_points(D, 0.3):
    print(f"   (s_fast, s_slow) = ({pt.s_fast:.6f}, {pt.s_slow:.6f})")
print()

print("=== time sharing the silencing schedule against fast-only ===")
print("   mu     point                weight on schedule")
mu = 0.0
while mu <= mu_max(D) + 1e-12:
    pt, beta = timeshare_point(min(mu, mu_max(D)), D)
    print(f"   {mu:<6.2f} ({pt.s_fast:.4f}, {pt.s_slow:.4f})   beta = {beta:.4f}")
    mu += 0.1
print()

print("=== duality: transmitter-only conferencing gives the identical region ===")
for mu, d in ((0.25, 3), (0.3, 10), (0.45, 7)):
    rx = mux_region(MuxRegionSpec("rx_bidirectional", mu, d))
    tx = mux_region(MuxRegionSpec("tx_conferencing", mu, d))
    print(f"   mu={mu}, d_max={d}: identical vertices -> {rx.vertices == tx.vertices}")

print()
print("=== one-directional conferencing pays half the prelog ===")
for mu in (0.2, 0.4):
    bi = mux_region(MuxRegionSpec("rx_bidirectional", mu, D)).vertices[-1][1]
    uni = mux_region(MuxRegionSpec("rx_unidirectional", mu, D)).vertices[-1][1]
    print(f"   mu={mu}: slow-only prelog {bi:.4f} (both ways) vs {uni:.4f} (one way)")
