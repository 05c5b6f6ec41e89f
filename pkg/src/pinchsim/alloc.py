"""Max-min OFDMA subcarrier and power allocation.

The max-min assignment problem is a mixed-integer program, so it is solved
with a two-stage heuristic:

  stage 1  greedy subcarrier assignment: repeatedly give the currently
           worst-off user the unassigned tone on which its channel advantage
           over the best other user is largest, tracking provisional rates
           under an equal power split across all tones;
  stage 2  with the assignment fixed, each user water-fills an equal share
           of the power budget over its own tones.

A brute-force enumerator over all assignments (same per-user power policy)
is provided as an optimality reference for small instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelGrid
from .frame import FrameDesign
from .geometry import Scenario

__all__ = [
    "Allocation",
    "gain_grid",
    "user_rate",
    "greedy_assign",
    "waterfill",
    "allocate",
    "min_rate",
    "exhaustive_oracle",
]


@dataclass
class Allocation:
    """Subcarrier assignment, power loads and resulting per-user rates.

    assignment[m, k] is 1 iff tone k belongs to user m (columns sum to 1),
    power[m, k] is the load in watts (positive only where assigned), rates
    are bits/s. unusable_budget[m] flags a user whose power share could not
    be spent because every assigned tone had zero gain.
    """

    assignment: np.ndarray  # (M, K) int8
    power: np.ndarray  # (M, K) watts
    rates: np.ndarray  # (M,) bits/s
    unusable_budget: np.ndarray  # (M,) bool


def gain_grid(grid: ChannelGrid, frame: FrameDesign, scenario: Scenario) -> np.ndarray:
    """Per-watt SNR slope of every (user, tone): |H|^2 / (N * delta_f * N0).

    The transmit power of each tone is spread uniformly over the N apertures,
    hence the extra N in the denominator. Units are 1/W, so gain * power is
    the tone SNR.
    """
    return np.abs(grid.h) ** 2 / (
        scenario.n_pas * frame.subcarrier_spacing * scenario.noise_psd
    )


def user_rate(
    assign_row: np.ndarray,
    power_row: np.ndarray,
    gain_row: np.ndarray,
    frame: FrameDesign,
) -> float:
    """Achievable rate of one user over its assigned tones, bits/s.

    cp_efficiency * delta_f * sum over assigned tones of log2(1 + gain * power).
    """
    spectral = np.log2(1.0 + gain_row * power_row)
    return float(
        frame.cp_efficiency
        * frame.subcarrier_spacing
        * np.sum(assign_row * spectral)
    )


def _channel_advantage(gains_sq: np.ndarray) -> np.ndarray:
    """Ratio of each user's tone gain to the best other user's, +inf when
    no other user has any gain on the tone."""
    m_users = gains_sq.shape[0]
    gamma = np.empty_like(gains_sq)
    for m in range(m_users):
        others = np.delete(gains_sq, m, axis=0)
        denom = others.max(axis=0) if others.size else np.zeros(gains_sq.shape[1])
        with np.errstate(divide="ignore", invalid="ignore"):
            row = gains_sq[m] / denom
        row[denom == 0.0] = np.inf
        gamma[m] = row
    return gamma


def greedy_assign(
    gains_sq: np.ndarray, frame: FrameDesign, scenario: Scenario
) -> np.ndarray:
    """Stage-1 greedy subcarrier assignment from squared channel magnitudes.

    Parameters
    ----------
    gains_sq : (M, K) array
        |H|^2 of every user on every tone.
    frame, scenario
        Supply delta_f, cp_efficiency, power budget and noise level for the
        provisional equal-power rate updates.

    Returns
    -------
    (M, K) int8 assignment matrix with every column summing to 1.

    Ties are broken deterministically: the worst-off user by lowest index,
    the tone by largest advantage, then largest own gain, then lowest index.
    A user that cannot gain anything from any remaining tone is permanently
    skipped, so a fully blocked user never absorbs tones at zero benefit; if
    every user ends up skipped, the leftover tones go to user 0 (all rates
    are zero then anyway, but every tone must have exactly one owner).
    """
    m_users, k_tones = gains_sq.shape
    gamma = _channel_advantage(gains_sq)
    assignment = np.zeros((m_users, k_tones), dtype=np.int8)
    unassigned = np.ones(k_tones, dtype=bool)
    provisional = np.zeros(m_users)
    active = np.ones(m_users, dtype=bool)
    # Equal-power provisional SNR per unit |H|^2: P_t / (N0 delta_f N K)
    snr_slope = scenario.tx_power / (
        scenario.noise_psd * frame.subcarrier_spacing * scenario.n_pas * k_tones
    )
    eff_df = frame.cp_efficiency * frame.subcarrier_spacing

    remaining = k_tones
    while remaining > 0:
        if not active.any():
            assignment[0, unassigned] = 1
            break
        masked = np.where(active, provisional, np.inf)
        m_star = int(np.argmin(masked))
        candidates = np.flatnonzero(unassigned)
        own = gains_sq[m_star, candidates]
        if not np.any(own > 0.0):
            active[m_star] = False
            continue
        advantage = gamma[m_star, candidates]
        ties = candidates[advantage == advantage.max()]
        if ties.size > 1:
            own_ties = gains_sq[m_star, ties]
            ties = ties[own_ties == own_ties.max()]
        k_star = int(ties.min())
        assignment[m_star, k_star] = 1
        unassigned[k_star] = False
        remaining -= 1
        provisional[m_star] += eff_df * np.log2(
            1.0 + gains_sq[m_star, k_star] * snr_slope
        )
    return assignment


def waterfill(gains, budget: float):
    """Classical water-filling over parallel channels.

    Maximizes sum log2(1 + gain_k * p_k) subject to sum p_k = budget, p >= 0,
    via the exact sorted-breakpoint water level (no iterative bisection):
    with breakpoints 1/gain sorted ascending, the level for an active set of
    size j is mu_j = (budget + sum of the j smallest breakpoints) / j, and
    the optimal set is the largest j with mu_j above its own breakpoint.

    Parameters
    ----------
    gains : array of per-watt SNR slopes, 1/W, entries >= 0.
    budget : total power to spend, watts, >= 0.

    Returns
    -------
    (powers, level) : loads per channel summing to the budget on the
        positive-gain channels, and the water level mu. Channels with zero
        gain always get zero power. If no channel can carry power the loads
        are all zero and the level is nan (budget unusable).
    """
    gains = np.asarray(gains, dtype=float)
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if np.any(gains < 0):
        raise ValueError("gains must be >= 0")
    powers = np.zeros_like(gains)
    positive = np.flatnonzero(gains > 0)
    if positive.size == 0:
        return powers, float("nan")

    breakpoints = 1.0 / gains[positive]
    order = np.argsort(breakpoints)
    sorted_bp = breakpoints[order]
    levels = (budget + np.cumsum(sorted_bp)) / np.arange(1, positive.size + 1)
    feasible = np.flatnonzero(levels > sorted_bp)
    if feasible.size == 0:
        # Zero budget: water sits exactly at the lowest breakpoint.
        return powers, float(sorted_bp[0])
    j = int(feasible[-1])
    level = float(levels[j])
    active = positive[order[: j + 1]]
    powers[active] = level - 1.0 / gains[active]
    return powers, level


def allocate(grid: ChannelGrid, frame: FrameDesign, scenario: Scenario) -> Allocation:
    """Run both stages on a channel grid: greedy assignment, then per-user
    water-filling of an equal share P_t / M of the power budget."""
    gains_sq = np.abs(grid.h) ** 2
    assignment = greedy_assign(gains_sq, frame, scenario)
    gains = gain_grid(grid, frame, scenario)

    m_users = grid.n_users
    budget = scenario.tx_power / m_users
    power = np.zeros_like(gains)
    rates = np.zeros(m_users)
    unusable = np.zeros(m_users, dtype=bool)
    for m in range(m_users):
        tones = np.flatnonzero(assignment[m] == 1)
        loads, level = waterfill(gains[m, tones], budget)
        power[m, tones] = loads
        unusable[m] = budget > 0 and (tones.size == 0 or np.isnan(level))
        rates[m] = user_rate(assignment[m], power[m], gains[m], frame)
    return Allocation(assignment, power, rates, unusable)


def min_rate(allocation: Allocation) -> float:
    """Worst per-user rate of an allocation, bits/s."""
    return float(np.min(allocation.rates))


def exhaustive_oracle(
    grid: ChannelGrid,
    frame: FrameDesign,
    scenario: Scenario,
    max_tones: int = 12,
    max_users: int = 3,
):
    """Brute-force max-min reference over every tone-to-user assignment.

    Enumerates all M^K assignments (each tone owned by exactly one user),
    water-fills the same per-user budget P_t / M the heuristic uses, and
    returns the assignment with the largest minimum rate. Ties are broken by
    the lexicographically smallest assignment vector. This is optimal for
    the problem restricted to the heuristic's equal per-user power split, so
    comparisons against the greedy stage isolate assignment quality.

    Raises ValueError when the instance exceeds the enumeration limits.
    """
    m_users, k_tones = grid.n_users, grid.n_subcarriers
    if k_tones > max_tones or m_users > max_users:
        raise ValueError(
            f"instance {m_users} users x {k_tones} tones exceeds enumeration "
            f"limits ({max_users} x {max_tones})"
        )
    gains = gain_grid(grid, frame, scenario)
    budget = scenario.tx_power / m_users

    # Rate of each user on each tone subset, indexed by bitmask over tones.
    table = np.zeros((m_users, 1 << k_tones))
    for m in range(m_users):
        for mask in range(1, 1 << k_tones):
            tones = [k for k in range(k_tones) if mask >> k & 1]
            loads, _ = waterfill(gains[m, tones], budget)
            assign_row = np.zeros(k_tones, dtype=np.int8)
            assign_row[tones] = 1
            power_row = np.zeros(k_tones)
            power_row[tones] = loads
            table[m, mask] = user_rate(assign_row, power_row, gains[m], frame)

    # All assignments in lexicographic order: tone 0 is the most significant
    # base-M digit, so index order equals assignment-vector order.
    n_assign = m_users ** k_tones
    index = np.arange(n_assign)
    masks = np.zeros((m_users, n_assign), dtype=np.int64)
    for k in range(k_tones):
        digit = (index // m_users ** (k_tones - 1 - k)) % m_users
        for m in range(m_users):
            masks[m] |= (digit == m).astype(np.int64) << k
    worst = np.min(
        np.stack([table[m, masks[m]] for m in range(m_users)], axis=0), axis=0
    )
    best_idx = int(np.argmax(worst))  # first maximum = lexicographically smallest

    best_b = np.zeros((m_users, k_tones), dtype=np.int8)
    for k in range(k_tones):
        owner = (best_idx // m_users ** (k_tones - 1 - k)) % m_users
        best_b[owner, k] = 1
    return best_b, float(worst[best_idx])
