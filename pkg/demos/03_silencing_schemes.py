#!/usr/bin/env python3
# The two silencing protocols end to end: per-user rates, the conferencing
# schedule, link loads, and convergence of the measured prelogs to the
# schedule's corner point.
from softhandoff import (
    NetworkConfig,
    build_silencing,
    conferencing_load,
    event_log_rows,
    measure_mux_gains,
    phase_rotated_load,
    run_rx_conferencing,
    run_tx_conferencing,
)

K, D = 22, 10
pattern = build_silencing(K, D)
print(f"=== silencing pattern: K={K}, d_max={D} ===")
print("silenced transmitters:", sorted(pattern.silenced))
print("subnets:", [(s.first, s.last_active, s.silenced_cell) for s in pattern.subnets])
print()

cfg = NetworkConfig(alpha=0.5, p=1e6, d_max=D, k=K)
for mode, run in (("receiver", run_rx_conferencing), ("transmitter", run_tx_conferencing)):
    rep = run(cfg, pattern)
    kinds = {}
    for u in rep.per_user:
        kinds.setdefault(u.kind, []).append(u.rate)
    print(f"=== {mode} conferencing at P = 1e6 ===")
    for kind, rates in kinds.items():
        print(f"   {kind:<9} x{len(rates):<3} rates {min(rates):.3f}..{max(rates):.3f} bits")
    print(f"   averages: fast {rep.avg_fast:.4f}, slow {rep.avg_slow:.4f} bits/user")
    max_pl, avg_pl = conferencing_load(rep, cfg.p)
    print(f"   conferencing load: per-link max prelog {max_pl:.4f}, network avg {avg_pl:.4f}")
    print()

print("=== first conferencing rounds (receiver mode, small network) ===")
small = build_silencing(8, 1)
rep = run_rx_conferencing(NetworkConfig(alpha=0.2, p=5.0, d_max=1, k=8), small)
for row in event_log_rows(rep, small):
    print("  ", row)
print()

print("=== prelog convergence toward the schedule corner (1/22, 20/22) ===")
est, rows = measure_mux_gains(cfg, pattern, [1e2, 1e3, 1e4, 1e5, 1e6], mode="rx")
print("   P        s_fast    s_slow    avg link  max link")
for r in rows:
    print(f"   {r.p:<8.0e} {r.s_fast_est:.5f}   {r.s_slow_est:.5f}   {r.avg_link_prelog:.4f}    {r.max_link_prelog:.4f}")
print(f"   estimate ({est.s_fast:.5f}, {est.s_slow:.5f}); target ({1/22:.5f}, {20/22:.5f})")
print()

print("=== phase rotation spreads the per-link load (interior links) ===")
max_pl, avg_pl = phase_rotated_load(NetworkConfig(alpha=0.5, p=1e6, d_max=2, k=36), 36, 2)
print(f"   rotated per-link max prelog {max_pl:.4f} vs unrotated 1.0; network avg {avg_pl:.4f}")
