#!/usr/bin/env python3
"""Classical water-filling, breakpoint by breakpoint.

Each channel k has a floor at 1/gain_k; power fills the vessel up to a
common water level. Strong channels (low floors) get more power, channels
whose floor pokes above the water get none.
"""

import numpy as np

from pinchsim import waterfill


def show(gains, budget):
    gains = np.asarray(gains, dtype=float)
    powers, level = waterfill(gains, budget)
    print(f"gains  = {gains.tolist()}, budget = {budget} W")
    print(f"water level = {level:.4f}")
    for k, (g, p) in enumerate(zip(gains, powers)):
        floor = 1.0 / g if g > 0 else float("inf")
        state = f"floor {floor:7.3f}  power {p:7.4f}"
        print(f"  channel {k}: {state}{'   (dry)' if p == 0 else ''}")
    rate = np.sum(np.log2(1.0 + gains * powers))
    print(f"spectral sum log2(1 + g*p) = {rate:.4f} bit/s/Hz\n")


print("Tight budget: only the strong channel drinks")
show([1.0, 0.5], budget=1.0)

print("Loose budget: both active, level rises to 3")
show([1.0, 0.5], budget=3.0)

print("Equal channels: even split")
show([0.7, 0.7, 0.7, 0.7], budget=2.0)

print("Dead tones never get power")
show([0.0, 2.0, 0.0, 1.0], budget=1.0)

print("Random profile, checking the KKT fingerprint")
rng = np.random.default_rng(0)
gains = rng.exponential(scale=2.0, size=8)
powers, level = waterfill(gains, 4.0)
active = powers > 0
print(f"budget spent: {powers.sum():.12f} of 4.0")
print(f"active-channel levels p + 1/g: {np.round(powers[active] + 1/gains[active], 12)}")
print(f"idle floors all above the water: {np.all(1/gains[~active] >= level)}")
