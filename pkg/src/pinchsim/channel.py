"""Waveguide-fed multi-aperture channel model.

Each PA re-radiates a phase-shifted replica of the signal fed into the
waveguide, so user m sees one delayed tap per PA: the channel is an FIR
filter with N taps. Tap gain is the product of the in-waveguide phase
rotation (feed to PA) and the free-space link gain (PA to user); tap delay
is the composite of guided and free-space propagation times. Frequency
responses are evaluated analytically from the tap list; no sampled impulse
response or FFT is involved on the main path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .frame import FrameDesign
from .geometry import Point3, Scenario, distance, feed_position, pa_positions

SPEED_OF_LIGHT = 299_792_458.0  # m/s

__all__ = [
    "SPEED_OF_LIGHT",
    "Tap",
    "ChannelRealization",
    "ChannelGrid",
    "path_loss_constant",
    "link_gain",
    "waveguide_phase",
    "composite_delay",
    "build_realization",
    "frequency_response",
    "channel_grid",
]


class Tap(NamedTuple):
    """One FIR tap: complex amplitude and absolute propagation delay (s)."""

    gain: complex
    delay: float


def path_loss_constant(carrier_freq: float) -> float:
    """Free-space path-gain constant (lambda / 4 pi)^2 = c^2 / (16 pi^2 f_c^2)."""
    if carrier_freq <= 0:
        raise ValueError("carrier_freq must be positive")
    wavelength = SPEED_OF_LIGHT / carrier_freq
    return (wavelength / (4.0 * math.pi)) ** 2


def link_gain(user: Point3, pa: Point3, alpha: int, carrier_freq: float) -> complex:
    """Free-space complex gain of one PA-to-user link.

    alpha is the binary LoS indicator; a blocked link contributes exactly 0.
    Magnitude is sqrt(path_loss_constant) / distance, phase advances by a
    full turn per free-space wavelength of path.
    """
    dist = distance(user, pa)
    if dist == 0.0:
        raise ValueError("zero-distance link is non-physical")
    if alpha == 0:
        return 0j
    wavelength = SPEED_OF_LIGHT / carrier_freq
    amp = math.sqrt(path_loss_constant(carrier_freq)) / dist
    phase = -2.0 * math.pi * dist / wavelength
    return amp * complex(math.cos(phase), math.sin(phase))


def waveguide_phase(
    pa: Point3, feed: Point3, carrier_freq: float, refractive_index: float
) -> complex:
    """Unit-magnitude phase rotation accumulated from the feed to a PA.

    Guided wavelength is the free-space wavelength divided by the effective
    refractive index of the waveguide.
    """
    guided_wavelength = SPEED_OF_LIGHT / carrier_freq / refractive_index
    phase = -2.0 * math.pi * distance(feed, pa) / guided_wavelength
    return complex(math.cos(phase), math.sin(phase))


def composite_delay(
    user: Point3, pa: Point3, feed: Point3, refractive_index: float
) -> float:
    """Total propagation delay: guided (feed to PA) plus free space (PA to user).

    Guided propagation is slowed by the refractive index, so a guided meter
    costs refractive_index / c seconds.
    """
    free = distance(user, pa) / SPEED_OF_LIGHT
    guided = refractive_index * distance(feed, pa) / SPEED_OF_LIGHT
    return free + guided


@dataclass
class ChannelRealization:
    """One draw of the multi-user FIR channel.

    tap_gains[m, n] and tap_delays[m, n] describe the tap user m receives
    from PA n. A blocked link has gain exactly 0 but keeps its delay.
    """

    users: list[Point3]
    pas: list[Point3]
    feed: Point3
    los: np.ndarray  # (M, N) binary
    tap_gains: np.ndarray  # (M, N) complex
    tap_delays: np.ndarray  # (M, N) seconds

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_pas(self) -> int:
        return len(self.pas)

    def tap(self, m: int, n: int) -> Tap:
        return Tap(complex(self.tap_gains[m, n]), float(self.tap_delays[m, n]))


def build_realization(
    scenario: Scenario, users: list[Point3], los: np.ndarray
) -> ChannelRealization:
    """Assemble the per-link taps for given user positions and LoS draw."""
    pas = pa_positions(scenario)
    feed = feed_position(scenario)
    m_users, n_pas = len(users), len(pas)
    if los.shape != (m_users, n_pas):
        raise ValueError(f"los shape {los.shape} does not match ({m_users}, {n_pas})")

    gains = np.zeros((m_users, n_pas), dtype=complex)
    delays = np.zeros((m_users, n_pas))
    for n, pa in enumerate(pas):
        guided = waveguide_phase(pa, feed, scenario.carrier_freq, scenario.refractive_index)
        for m, user in enumerate(users):
            gains[m, n] = guided * link_gain(
                user, pa, int(los[m, n]), scenario.carrier_freq
            )
            delays[m, n] = composite_delay(user, pa, feed, scenario.refractive_index)
    return ChannelRealization(users, pas, feed, np.asarray(los), gains, delays)


def frequency_response(realization: ChannelRealization, m: int, f_offset):
    """Channel response of user m at baseband offset(s) f - f_c.

    Evaluates sum_n gain_{m,n} * exp(-j 2 pi f_offset tau_{m,n}) directly
    from the tap list. Accepts a scalar offset or an array of offsets;
    scalar in, complex scalar out.
    """
    offsets = np.atleast_1d(np.asarray(f_offset, dtype=float))
    gains = realization.tap_gains[m]
    delays = realization.tap_delays[m]
    phases = np.exp(-2j * np.pi * offsets[:, None] * delays[None, :])
    response = np.sum(gains[None, :] * phases, axis=-1)
    if np.isscalar(f_offset) or np.ndim(f_offset) == 0:
        return complex(response[0])
    return response


@dataclass
class ChannelGrid:
    """Per-user frequency-response samples on the OFDMA subcarrier grid.

    h[m, k] is the response of user m on subcarrier k; subcarrier_freqs holds
    the baseband offsets k * delta_f for k = -K/2 .. K/2 - 1.
    """

    h: np.ndarray  # (M, K) complex
    subcarrier_freqs: np.ndarray  # (K,) Hz offsets from the carrier

    @property
    def n_users(self) -> int:
        return self.h.shape[0]

    @property
    def n_subcarriers(self) -> int:
        return self.h.shape[1]


def channel_grid(realization: ChannelRealization, frame: FrameDesign) -> ChannelGrid:
    """Sample every user's frequency response on the frame's subcarrier grid."""
    k = frame.n_subcarriers
    offsets = (np.arange(k) - k // 2) * frame.subcarrier_spacing
    h = np.empty((realization.n_users, k), dtype=complex)
    for m in range(realization.n_users):
        h[m] = frequency_response(realization, m, offsets)
    return ChannelGrid(h, offsets)
