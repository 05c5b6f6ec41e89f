"""Single-PA TDMA and SC-FDE TDMA reference schemes."""

import math

import numpy as np
import pytest

from pinchsim.alloc import allocate, min_rate
from pinchsim.baselines import (
    baseline_min_rates,
    maxmin_time_shares,
    sc_fde_effective_snr,
    sc_fde_standalone_rate,
    standalone_rate_single_pa,
)
from pinchsim.channel import (
    build_realization,
    channel_grid,
    path_loss_constant,
)
from pinchsim.frame import design_frame
from pinchsim.geometry import (
    Point3,
    Scenario,
    center_pa_position,
    sample_users,
)

from helpers import make_frame, unit_scenario


class TestStandaloneRateSinglePa:
    def test_blocked_is_zero(self):
        sc = Scenario(n_pas=1, n_users=1)
        rate = standalone_rate_single_pa(
            Point3(10, 2, 0), center_pa_position(sc), 0, sc
        )
        assert rate == 0.0

    def test_unit_snr_gives_bandwidth(self):
        # Pick the noise so |h|^2 P_t / noise_power = 1: rate = B * log2(2).
        fc, pt = 28e9, 0.1
        eta = path_loss_constant(fc)
        sc = Scenario(
            n_pas=1, n_users=1, carrier_freq=fc, tx_power=pt,
            noise_power=eta / 9.0 * pt, bandwidth=500e6,
        )
        user = Point3(15.0, 0.0, 0.0)  # 3 m below the center PA
        rate = standalone_rate_single_pa(user, center_pa_position(sc), 1, sc)
        assert rate == pytest.approx(sc.bandwidth, rel=1e-12)

    def test_scalar_cross_check(self):
        # Full-band rate recomputed from scratch for a user 3 m under the PA.
        sc = Scenario(
            n_pas=1, n_users=1, carrier_freq=28e9, tx_power=0.1,
            noise_power=1e-12, bandwidth=500e6,
        )
        user = Point3(15.0, 0.0, 0.0)
        rate = standalone_rate_single_pa(user, center_pa_position(sc), 1, sc)
        snr = (path_loss_constant(28e9) / 9.0) * 0.1 / 1e-12
        assert rate == pytest.approx(500e6 * math.log2(1 + snr), rel=1e-12)


class TestMaxminTimeShares:
    def test_one_and_three_gbps(self):
        shares = maxmin_time_shares([1e9, 3e9])
        assert np.allclose(shares.zeta, [0.75, 0.25], rtol=1e-14)
        assert shares.min_rate == pytest.approx(0.75e9, rel=1e-14)

    def test_equal_rates_uniform_split(self):
        shares = maxmin_time_shares([2e9, 2e9, 2e9, 2e9])
        assert np.allclose(shares.zeta, 0.25, rtol=1e-14)
        assert shares.min_rate == pytest.approx(0.5e9, rel=1e-14)

    def test_any_zero_rate_kills_the_minimum(self):
        shares = maxmin_time_shares([0.0, 5e9])
        assert shares.min_rate == 0.0
        assert np.allclose(shares.zeta, 0.5)

    def test_single_user_full_slot(self):
        shares = maxmin_time_shares([4e9])
        assert np.allclose(shares.zeta, [1.0])
        assert shares.min_rate == pytest.approx(4e9)

    def test_weighted_rates_equalized(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            rates = rng.uniform(1e6, 1e10, size=rng.integers(1, 6))
            shares = maxmin_time_shares(rates)
            weighted = shares.zeta * rates
            assert shares.zeta.sum() == pytest.approx(1.0, rel=1e-12)
            assert (weighted.max() - weighted.min()) <= 1e-12 * weighted.max()
            assert shares.min_rate == pytest.approx(weighted[0], rel=1e-12)

    def test_rejects_negative_rates(self):
        with pytest.raises(ValueError):
            maxmin_time_shares([-1.0, 2.0])


class TestScFdeEffectiveSnr:
    def test_flat_recovers_snr(self):
        for gamma in (0.1, 1.0, 17.5):
            eff = sc_fde_effective_snr(np.full(8, gamma))
            assert eff == pytest.approx(gamma, rel=1e-12)

    def test_two_tone_value(self):
        # 2 / (1/4 + 1) - 1 = 0.6.
        assert sc_fde_effective_snr([3.0, 0.0]) == pytest.approx(0.6, rel=1e-14)

    def test_all_dead_tones(self):
        assert sc_fde_effective_snr(np.zeros(16)) == 0.0

    def test_bounded_by_extreme_tones(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            gammas = rng.exponential(scale=5.0, size=rng.integers(1, 33))
            eff = sc_fde_effective_snr(gammas)
            assert gammas.min() - 1e-12 <= eff <= gammas.max() + 1e-12

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            sc_fde_effective_snr([-0.1])


class TestScFdeStandaloneRate:
    def test_fully_blocked_user(self):
        frame = make_frame(k=8, bandwidth=8.0)
        sc = unit_scenario(1, 8)
        assert sc_fde_standalone_rate(np.zeros(8, dtype=complex), frame, sc) == 0.0

    def test_flat_channel_reduces_to_single_carrier(self):
        frame = make_frame(k=8, bandwidth=8.0, cp_duration=2e-9, fft_duration=8e-9)
        sc = Scenario(n_pas=3, n_users=1, bandwidth=8.0, tx_power=2.0, noise_power=8.0)
        h_row = np.full(8, 0.5 + 0.5j)
        gamma = abs(0.5 + 0.5j) ** 2 * 2.0 / (3 * 8 * 1.0 * 1.0)
        expected = frame.cp_efficiency * 8.0 * math.log2(1 + gamma)
        assert sc_fde_standalone_rate(h_row, frame, sc) == pytest.approx(
            expected, rel=1e-12
        )

    def test_dominated_by_per_tone_ofdm_sum(self):
        # MMSE equalization cannot beat independent per-tone decoding.
        rng = np.random.default_rng(5)
        frame = make_frame(k=8, bandwidth=8.0)
        sc = unit_scenario(1, 8)
        for _ in range(25):
            h_row = rng.normal(size=8) + 1j * rng.normal(size=8)
            gammas = np.abs(h_row) ** 2 * sc.tx_power / (
                sc.n_pas * 8 * sc.noise_psd * frame.subcarrier_spacing
            )
            rate = sc_fde_standalone_rate(h_row, frame, sc)
            per_tone = (
                frame.cp_efficiency
                * frame.subcarrier_spacing
                * np.sum(np.log2(1 + gammas))
            )
            assert rate <= per_tone + 1e-9


class TestBaselineMinRates:
    def drop(self, scenario, seed=0):
        rng = np.random.default_rng(seed)
        users = sample_users(scenario, rng)
        los = np.ones((scenario.n_users, scenario.n_pas), dtype=np.int8)
        realization = build_realization(scenario, users, los)
        frame = design_frame(scenario, realization)
        grid = channel_grid(realization, frame)
        return users, realization, frame, grid

    def test_single_user_single_pa_full_slot(self):
        sc = Scenario(n_pas=1, n_users=1, blockage_density=0.0)
        users, realization, frame, grid = self.drop(sc)
        single, _ = baseline_min_rates(
            realization, grid, frame, sc, np.array([1], dtype=np.int8)
        )
        expected = standalone_rate_single_pa(
            users[0], center_pa_position(sc), 1, sc
        )
        assert single == pytest.approx(expected, rel=1e-12)

    def test_nonnegative_outputs(self):
        sc = Scenario(n_pas=4, n_users=3, blockage_density=0.1)
        rng = np.random.default_rng(8)
        users = sample_users(sc, rng)
        los = (rng.random((3, 4)) < 0.6).astype(np.int8)
        realization = build_realization(sc, users, los)
        frame = design_frame(sc, realization)
        grid = channel_grid(realization, frame)
        single, sc_fde = baseline_min_rates(
            realization, grid, frame, sc, (rng.random(3) < 0.5).astype(np.int8)
        )
        assert single >= 0.0 and sc_fde >= 0.0

    def test_single_center_pa_layout_matches_both_schemes(self):
        # One uniformly placed PA lands at the center; with identical (all
        # LoS) blockage and a flat channel the CP vanishes, so the SC-FDE
        # scheme collapses to the single-PA scheme exactly.
        sc = Scenario(n_pas=1, n_users=2, blockage_density=0.0)
        _, realization, frame, grid = self.drop(sc, seed=11)
        assert frame.cp_duration == 0.0
        single, sc_fde = baseline_min_rates(
            realization, grid, frame, sc, np.ones(2, dtype=np.int8)
        )
        assert sc_fde == pytest.approx(single, rel=1e-9)

    def test_flat_channel_single_user_schemes_coincide(self):
        # One user, one PA, no blockage: OFDMA spreads the full budget over
        # equal-gain tones and SC-FDE sees a flat per-tone SNR, so both lines
        # collapse to B * log2(1 + gamma) with no CP. (With two or more users
        # the TDMA schemes burst the whole budget during each slot while
        # OFDMA splits it across users, so neither dominates on a flat
        # channel; OFDMA's edge comes from frequency selectivity.)
        for seed in range(6):
            sc = Scenario(n_pas=1, n_users=1, blockage_density=0.0)
            _, realization, frame, grid = self.drop(sc, seed=seed)
            ofdma = min_rate(allocate(grid, frame, sc))
            _, sc_fde = baseline_min_rates(
                realization, grid, frame, sc, np.ones(1, dtype=np.int8)
            )
            assert ofdma == pytest.approx(sc_fde, rel=1e-9)
            assert ofdma > 0.0
