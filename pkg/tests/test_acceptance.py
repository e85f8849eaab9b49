"""Acceptance gate: one test per release criterion, at fixed tolerances.

Each test prints a single pass/fail line (visible with ``pytest -s`` or in
the captured-output section of a failure report) and then asserts.  Run

    pytest tests/test_acceptance.py -v

to see the per-criterion outcome.
"""

import math
import time

import numpy as np
import pytest

from stepharm import (WavePacketSpec, delay_time, delta_prime, f_epsilon,
                      f_epsilon_derivative, find_resonances, hermite_poly,
                      j_beta, level_count, measure_delay, pi_coefficient,
                      solve_levels, zeta)
from stepharm.oracle import contour_quadrature_j, shoot_bound_states
from stepharm.verification import phase_derivative_residual
from tests.conftest import make_config


def report(num: int, name: str, ok: bool, detail: str = ""):
    line = f"acceptance {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line)


def test_acceptance_01_j_route_independence():
    start = time.perf_counter()
    worst = 0.0
    for beta in (-1.5, -0.5, 0.3, 0.5, 0.9):
        closed = j_beta(beta)
        worst = max(worst, abs(contour_quadrature_j(beta) - closed)
                    / (1.0 + abs(closed)))
    for beta in (1.3, 2.6, 4.1):
        closed = j_beta(beta)
        worst = max(worst, abs(f_epsilon(beta, 0.0) - closed) / (1.0 + abs(closed)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 5.0
    report(1, "j_route_independence", ok, f"residual={worst:.2e} in {elapsed:.2f}s")
    assert worst < 1e-8
    assert elapsed < 5.0


def test_acceptance_02_hermite_degeneracy():
    start = time.perf_counter()
    ys = np.linspace(-2.0, 2.0, 9)
    worst = 0.0
    for n in range(6):
        reference = 2j * np.pi * hermite_poly(n, ys) / math.factorial(n)
        values = f_epsilon(float(n + 1), ys)
        worst = max(worst, float(np.max(np.abs(values - reference)
                                        / (1.0 + np.abs(reference)))))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and elapsed < 30.0
    report(2, "hermite_degeneracy", ok, f"residual={worst:.2e} in {elapsed:.2f}s")
    assert worst < 1e-6
    assert elapsed < 30.0


def test_acceptance_03_level_counts():
    start = time.perf_counter()
    expected = {0.7: 0, 1.5: 1, 2.0: 1, 2.5: 1, 3.5: 2, 4.0: 2, 4.5: 2}
    got = {beta0: level_count(make_config(beta0)) for beta0 in expected}
    solved = {beta0: len(solve_levels(make_config(beta0))) for beta0 in expected}
    elapsed = time.perf_counter() - start
    ok = got == expected and solved == expected and elapsed < 10.0
    report(3, "level_counts", ok, f"{got} in {elapsed:.2f}s")
    assert got == expected
    assert solved == expected
    assert elapsed < 10.0


def test_acceptance_04_shooting_agreement():
    start = time.perf_counter()
    worst = 0.0
    for beta0 in (1.5, 2.5, 4.5):
        config = make_config(beta0)
        analytic = solve_levels(config)
        shot = shoot_bound_states(config, n_max=4)
        assert len(shot.energies) == len(analytic)
        scale = config.hbar * config.omega
        for level, energy in zip(analytic, shot.energies):
            worst = max(worst, abs(level.energy - energy) / scale)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and elapsed < 60.0
    report(4, "shooting_agreement", ok, f"|dE|/hw={worst:.2e} in {elapsed:.2f}s")
    assert worst < 1e-6
    assert elapsed < 60.0


def test_acceptance_05_asymptotic_approach():
    levels = solve_levels(make_config(200.0))
    deviations = {lv.n: abs(lv.beta_n - (2 * lv.n + 2)) for lv in levels[:3]}
    ok = all(dev < 0.05 for dev in deviations.values())
    detail = " ".join(f"n={n}:{dev:.4f}" for n, dev in deviations.items())
    report(5, "asymptotic_approach", ok, detail)
    for lv in levels[:3]:
        assert lv.beta_n < 2 * lv.n + 2  # approach strictly from below
    for n, dev in deviations.items():
        assert dev < 0.05, f"n={n}: |beta_n - (2n+2)| = {dev:.4f}"


def test_acceptance_06_high_energy_delay():
    config = make_config(1.5)
    gaps = [abs(delta_prime(beta, config) - np.pi) for beta in (50.0, 100.0, 200.0, 400.0)]
    tail = abs(delay_time(400.0, config) * config.omega / np.pi - 1.0)
    monotone = all(a > b for a, b in zip(gaps, gaps[1:]))
    ok = tail < 0.02 and monotone
    report(6, "high_energy_delay", ok, f"|tau*w/pi-1|={tail:.2e} gaps={gaps}")
    assert tail < 0.02
    assert monotone


THRESHOLD_CASES = [
    (2.5, "above", 1e3),
    (4.5, "above", 1e3),
    (1.5, "below", -1e3),
    (3.5, "below", -1e3),
    (2.0, "small", 0.1),
    (3.0, "small", 0.1),
    (4.0, "small", 0.1),
]


@pytest.mark.parametrize("beta0,kind,bound",
                         THRESHOLD_CASES,
                         ids=[f"beta0={c[0]}" for c in THRESHOLD_CASES])
def test_acceptance_07_threshold_trichotomy(beta0, kind, bound):
    value = delta_prime(beta0 + 1e-6, make_config(beta0))
    if kind == "above":
        ok = value > bound
    elif kind == "below":
        ok = value < bound
    else:
        ok = abs(value) < bound
    report(7, f"threshold_trichotomy[beta0={beta0}]", ok,
           f"delta'={value:.4g}, required {kind} {bound}")
    assert ok, f"delta'(beta0+1e-6) = {value:.6g} violates '{kind} {bound}'"


def test_acceptance_08_resonances():
    found15 = find_resonances(make_config(1.5), beta_max=10.0)
    peaks = [r.beta_peak for r in found15]
    heights = [r.tau_peak for r in found15]
    near = all(any(abs(p - target) < 0.2 for p in peaks) for target in (3.0, 5.0, 7.0))
    decreasing = all(a > b for a, b in zip(heights, heights[1:]))
    found35 = find_resonances(make_config(3.5), beta_max=10.0)
    vanished = all(abs(r.beta_peak - 3.0) > 0.2 for r in found35)
    ok = near and decreasing and vanished
    report(8, "resonances", ok,
           f"peaks={[f'{p:.3f}' for p in peaks]} heights={[f'{h:.3f}' for h in heights]}")
    assert near
    assert decreasing
    assert vanished


def test_acceptance_09_phase_derivative_consistency():
    worst = max(phase_derivative_residual(make_config(beta0))
                for beta0 in (1.5, 4.5))
    ok = worst < 1e-5
    report(9, "phase_derivative_consistency", ok, f"residual={worst:.2e}")
    assert worst < 1e-5


def test_acceptance_10_junction_continuity():
    worst = 0.0
    for beta0 in (1.5, 4.5):
        config = make_config(beta0)
        for level in solve_levels(config):
            value = f_epsilon(level.beta_n, 0.0)
            j_val = j_beta(level.beta_n)
            worst = max(worst, abs(value - j_val) / abs(j_val))
            slope_left = config.alpha * f_epsilon_derivative(level.beta_n, 0.0)
            slope_right = -level.k_n * j_val
            worst = max(worst, abs(slope_left - slope_right) / abs(slope_right))
        for beta in (beta0 + 0.4, beta0 + 2.2, beta0 + 6.1):
            pi_c = pi_coefficient(beta, config)
            z = zeta(beta, config)
            k = config.k_continuum(beta)
            worst = max(worst, abs(pi_c * f_epsilon(beta, 0.0) - (1.0 + z))
                        / abs(1.0 + z))
            slope_left = pi_c * config.alpha * f_epsilon_derivative(beta, 0.0)
            slope_right = 1j * k * (z - 1.0)
            worst = max(worst, abs(slope_left - slope_right) / abs(slope_right))
    ok = worst < 1e-8
    report(10, "junction_continuity", ok, f"residual={worst:.2e}")
    assert worst < 1e-8


def test_acceptance_11_wavepacket_delay():
    start = time.perf_counter()
    config = make_config(1.5)
    mismatches = {}
    for beta_t in (5.0, 6.0, 8.0):
        spec = WavePacketSpec.for_beta(config, beta_t)
        measured = measure_delay(spec)
        analytic = delay_time(beta_t, config)
        mismatches[beta_t] = (measured - analytic) / analytic
    mirror = measure_delay(WavePacketSpec.for_beta(config, 6.0), mirror=True)
    mirror_units = abs(mirror) * config.omega / np.pi
    elapsed = time.perf_counter() - start
    ok = (all(abs(m) < 0.05 for m in mismatches.values())
          and mirror_units < 0.02 and elapsed < 600.0)
    detail = " ".join(f"beta={b}:{m:+.2%}" for b, m in mismatches.items())
    report(11, "wavepacket_delay", ok,
           f"{detail} mirror={mirror_units:.4f} in {elapsed:.1f}s")
    for beta_t, mismatch in mismatches.items():
        assert abs(mismatch) < 0.05, f"beta={beta_t}: {mismatch:+.2%}"
    assert mirror_units < 0.02
    assert elapsed < 600.0


def test_acceptance_12_unitarity():
    worst = 0.0
    for beta0 in (1.5, 2.0, 2.5, 3.5, 4.0, 4.5):
        config = make_config(beta0)
        betas = np.linspace(beta0 + 1e-4, beta0 + 20.0, 1000)
        worst = max(worst, float(np.max(np.abs(np.abs(zeta(betas, config)) - 1.0))))
    ok = worst < 1e-10
    report(12, "unitarity", ok, f"max ||zeta|-1|={worst:.2e}")
    assert worst < 1e-10
