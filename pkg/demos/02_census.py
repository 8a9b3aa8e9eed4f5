"""Enumerate Morse flows up to topological equivalence and look at reversal.

Reversing time swaps sources with sinks and stable with unstable
separatrices.  It is not an equivalence, so most flows come in pairs; the
few that survive reversal unchanged are self-reverse.
"""
import time

from mobius_flows import enumerate_morse_flows, is_self_reverse
from mobius_flows.enumeration import PointConfiguration

for n in range(3, 7):
    t0 = time.perf_counter()
    flows = enumerate_morse_flows(n)
    sr = sum(is_self_reverse(d) for d in flows)
    print(f"n={n}: {len(flows):3d} flows, {sr} self-reverse, "
          f"{(len(flows) + sr) // 2} up to reversal  ({time.perf_counter() - t0:.1f}s)")

# how the six-point flows split by point configuration
by_cfg = {}
for d in enumerate_morse_flows(6):
    cfg = PointConfiguration.of(d)
    by_cfg[cfg] = by_cfg.get(cfg, 0) + 1
print("\nsix points, by (int src, int snk, int sad, bd src, bd snk, bd sad):")
for cfg, count in sorted(by_cfg.items()):
    print(f"  {tuple(vars(cfg).values())}: {count}")
