"""
Edge restoring on a single scan line
====================================

A box filter blurs a step edge and an isolated spike alike. The edge
restoring filter (ERF) looks, for every pixel, at the smoothed values in the
same window and keeps the one closest to the original pixel. The step edge
finds exact matches on either side and snaps back; the spike does not, and
stays smoothed.
"""

import numpy as np

from edgerestore import box_filter, erf

np.set_printoptions(precision=3, suppress=True)

# A step edge and an impulse, both as 1-pixel-high images.
step = np.array([[0, 0, 0, 1, 1, 1]], dtype=float)
spike = np.array([[0, 0, 1, 0, 0]], dtype=float)

for name, row in (("step", step), ("spike", spike)):
    smoothed = box_filter(row, 1)
    restored = erf(smoothed, row, 1)
    print(f"{name:>6} input    {row[0]}")
    print(f"{'':>6} box r=1  {smoothed.to_array()[0]}")
    print(f"{'':>6} + ERF    {restored.to_array()[0]}")
    print()

# Colour pixels are picked whole: the distance sums squared differences over
# R, G and B, so the output never mixes channels from different neighbours.
rgb = np.zeros((1, 3, 3))
rgb[0, 0] = (1.0, 0.0, 0.0)
rgb[0, 2] = (0.0, 0.9, 0.9)
target = np.zeros((1, 3, 3))
target[0, 1] = (0.9, 0.9, 0.9)
print("colour pick for the middle pixel:", erf(rgb, target, 1).pixels[0, 1])
