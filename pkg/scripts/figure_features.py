"""Print the quantitative features of each concurrence panel on gt in [0, 15].

Reports the largest local maxima, the smallest local maximum, and the first
time at which P1 crosses 1/2 (where the concurrence reaches 1).
"""
import numpy as np
from scipy.signal import argrelextrema

from kerrswap.figures import PRESETS, Panel
from kerrswap.swap import swap_outcome


def features(panel, t_max=15.0, samples=30001):
    t = np.linspace(0.0, t_max, samples)
    out = swap_outcome(panel.params, panel.init, t)
    c = np.nan_to_num(out.concurrence, nan=0.0)
    idx = argrelextrema(c, np.greater, order=3)[0]
    peaks = c[idx]
    f = out.p1 - 0.5
    f[np.abs(f) < 1e-12] = 0.0  # P1 pinned at 1/2 is not a crossing
    cross = np.nonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)[0]
    first = t[cross[0]] if cross.size else float("nan")
    return np.nanmax(c), (peaks.min() if peaks.size else float("nan")), first


if __name__ == "__main__":
    print(f"{'panel':6s} {'max C':>8s} {'min peak':>9s} {'first P1=1/2':>13s}")
    for fid, panel in PRESETS.items():
        if not isinstance(panel, Panel):
            continue
        cmax, pmin, first = features(panel)
        print(f"{fid:6s} {cmax:8.4f} {pmin:9.4f} {first:13.4f}")
