"""Gaudin eigenfunctions, ring quantization, duality, and the residual scans."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from momgas.bethe import (
    MAX_PARTICLES_ENUMERATED, BetheWavefunction, ConvergenceError,
    bethe_residuals, duality_check, eval_gradient, eval_wavefunction,
    free_boson_wavefunction, gaudin_amplitudes, gaudin_residual_scan,
    gaudin_wavefunction, ground_state_quantum_numbers, ground_state_scan,
    parity_rule_eta, schrodinger_residual, solve_bethe, solve_lieb_liniger,
)
from momgas.twobody import bc_residual


# ---------------------------------------------------------------------------
# amplitudes


def test_single_particle_amplitude_is_one():
    assert gaudin_amplitudes([1.5], 2.0) == {(0,): 1.0 + 0j}


def test_two_particle_amplitudes_frozen():
    amps = gaudin_amplitudes([0.0, 1.0], 1.0)
    assert amps[(0, 1)] == 1.0 + 1.0j
    assert amps[(1, 0)] == -1.0 + 1.0j


def test_free_limit_reduces_to_slater_signs():
    amps = gaudin_amplitudes([0.4, 1.9, 2.6], 0.0)
    for p, a in amps.items():
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    sign = -sign
        assert a == complex(sign)


def test_amplitudes_reject_degenerate_momenta():
    with pytest.raises(ValueError):
        gaudin_amplitudes([1.0, 1.0], 0.5)
    with pytest.raises(ValueError):
        gaudin_amplitudes([], 0.5)
    with pytest.raises(ValueError):
        gaudin_amplitudes(list(range(MAX_PARTICLES_ENUMERATED + 1)), 0.5)


@given(st.integers(min_value=2, max_value=4), st.integers(min_value=0, max_value=999))
@settings(max_examples=40, deadline=None)
def test_adjacent_transposition_ratio(n, seed):
    # A_P / A_{P T_i} = (iu + 1/lam)/(iu - 1/lam), u = k_{P(i+1)} - k_{P(i)},
    # a unimodular ratio for real u
    import random
    rng = random.Random(seed)
    k = sorted(rng.uniform(-3, 3) for _ in range(n))
    if min(abs(a - b) for a, b in zip(k, k[1:])) < 1e-3:
        return
    lam = rng.uniform(0.1, 10.0)
    amps = gaudin_amplitudes(k, lam)
    for p in itertools.permutations(range(n)):
        for i in range(n - 1):
            q = list(p)
            q[i], q[i + 1] = q[i + 1], q[i]
            u = k[p[i + 1]] - k[p[i]]
            ratio = amps[p] / amps[tuple(q)]
            target = (1j * u + 1.0 / lam) / (1j * u - 1.0 / lam)
            assert abs(ratio - target) < 1e-12
            assert abs(abs(ratio) - 1.0) < 1e-12


def test_normalized_amplitudes_are_unimodular():
    wf = gaudin_wavefunction([-2.1, 0.3, 1.7], 7.5)
    for a in wf.amplitudes.values():
        assert abs(abs(a) - 1.0) < 1e-14
    assert wf.amplitudes[(0, 1, 2)] == 1.0 + 0j
    raw = gaudin_wavefunction([-2.1, 0.3, 1.7], 7.5, normalize=False)
    ratios = {p: raw.amplitudes[p] / wf.amplitudes[p] for p in wf.amplitudes}
    first = ratios[(0, 1, 2)]
    assert all(abs(r - first) < 1e-9 * abs(first) for r in ratios.values())


# ---------------------------------------------------------------------------
# wavefunction evaluation


def test_single_particle_plane_wave():
    wf = gaudin_wavefunction([1.3], 0.7)
    for x in (-2.0, 0.0, 1.1):
        assert eval_wavefunction(wf, [x]) == pytest.approx(complex(math.cos(1.3 * x),
                                                                   math.sin(1.3 * x)))


def test_fermion_antisymmetry_is_exact():
    wf = gaudin_wavefunction([-1.0, 0.5, 2.0], 1.2)
    a = eval_wavefunction(wf, [0.3, 1.1, 2.9])
    b = eval_wavefunction(wf, [1.1, 0.3, 2.9])
    assert a == -b


def test_two_body_reduction_to_odd_channel():
    # N = 2, k = (-1, 1): chi(x1, x2) = C * (sin(r)/(2 lam k) + sgn(r) cos(r)),
    # r = x2 - x1, with one global complex constant C
    import random
    rng = random.Random(7)
    wf = gaudin_wavefunction([-1.0, 1.0], 1.0)
    constant = None
    for _ in range(100):
        r = rng.uniform(-5.0, 5.0)
        if abs(r) < 1e-3:
            continue
        x1 = rng.uniform(-2.0, 2.0)
        target = math.sin(r) / 2.0 + math.copysign(1.0, r) * math.cos(r)
        if abs(target) < 1e-3:
            continue
        value = eval_wavefunction(wf, [x1, x1 + r])
        ratio = value / target
        if constant is None:
            constant = ratio
        assert abs(ratio - constant) <= 1e-12 * abs(constant)
    assert constant == pytest.approx(1.6 + 0.8j, rel=1e-12)


def test_gradient_matches_finite_difference():
    wf = gaudin_wavefunction([-1.7, 0.4, 2.2], 2.5)
    x = [0.2, 1.4, 3.1]
    grad = eval_gradient(wf, x)
    h = 1e-6
    for m in range(3):
        xp = list(x); xp[m] += h
        xm = list(x); xm[m] -= h
        fd = (eval_wavefunction(wf, xp) - eval_wavefunction(wf, xm)) / (2 * h)
        assert grad[m] == pytest.approx(fd, rel=1e-8)


def test_eval_validates_input():
    wf = gaudin_wavefunction([-1.0, 1.0], 1.0)
    with pytest.raises(ValueError):
        eval_wavefunction(wf, [0.5, 0.5])
    with pytest.raises(ValueError):
        eval_wavefunction(wf, [0.5])
    with pytest.raises(ValueError):
        eval_gradient(wf, [0.1, 0.1])
    with pytest.raises(ValueError):
        eval_gradient(wf, [0.1, 0.2, 0.3])


def test_wavefunction_requires_full_amplitude_cover():
    with pytest.raises(ValueError):
        BetheWavefunction(momenta=(0.0, 1.0), amplitudes={(0, 1): 1.0 + 0j})
    with pytest.raises(ValueError):
        BetheWavefunction(momenta=(0.0, 1.0),
                          amplitudes={(0, 1): 1.0 + 0j, (1, 0): 1.0 + 0j},
                          statistics="anyon")


def test_one_sided_pair_matches_offset_limit():
    wf = gaudin_wavefunction([-1.3, 0.2, 1.9], 0.8)
    x = [0.7, 0.7, 2.4]
    vp, gp = wf.one_sided_pair(x, (0, 1), +1)
    eps = 1e-8
    off = [0.7 + eps / 2, 0.7 - eps / 2, 2.4]
    assert wf.value(off) == pytest.approx(vp, rel=1e-6)
    for m in range(3):
        assert wf.gradient(off)[m] == pytest.approx(gp[m], rel=1e-6, abs=1e-6)


# ---------------------------------------------------------------------------
# contact conditions


def test_free_boson_satisfies_conditions_for_every_lambda():
    wf = free_boson_wavefunction([-1.0, 0.5, 2.0])
    point = [1.2, 1.2, 3.4]
    for lam in (0.25, 1.0, 10.0):
        res = bc_residual(wf, lam, (0, 1), point)
        assert abs(res.derivative_jump) <= 1e-13
        assert abs(res.value_jump_defect) <= 1e-13


def test_gaudin_satisfies_conditions_on_adjacent_hyperplane():
    wf = gaudin_wavefunction([-2.0, -0.3, 1.1, 2.7], 3.0)
    point = [0.5, 1.8, 1.8, 4.0]
    res = bc_residual(wf, 3.0, (1, 2), point)
    assert abs(res.derivative_jump) <= 1e-12
    assert abs(res.value_jump_defect) <= 1e-12


def test_residual_scan_is_deterministic_and_small():
    a = gaudin_residual_scan(3, 5, seed=11)
    b = gaudin_residual_scan(3, 5, seed=11)
    assert a == b
    for row in a:
        assert row["max_derivative_jump"] <= 1e-12
        assert row["max_value_jump_defect"] <= 1e-12
        assert row["schrodinger_residual"] <= 1e-6


def test_residual_scan_guards():
    with pytest.raises(ValueError):
        gaudin_residual_scan(0, 1)
    with pytest.raises(ValueError):
        gaudin_residual_scan(MAX_PARTICLES_ENUMERATED + 1, 1)


def test_schrodinger_residual_validates_geometry():
    with pytest.raises(ValueError):
        schrodinger_residual([-1.0, 1.0], 1.0, [0.5, 0.5 + 1e-7])
    with pytest.raises(ValueError):
        schrodinger_residual([-1.0, 1.0], 1.0, [0.5])
    with pytest.raises(ValueError):
        schrodinger_residual([-1.0, 1.0], 1.0, [0.5, 0.5])


# ---------------------------------------------------------------------------
# ring quantization


def test_quantum_number_blocks():
    assert ground_state_quantum_numbers(3) == (-1.0, 0.0, 1.0)
    assert ground_state_quantum_numbers(4) == (-1.5, -0.5, 0.5, 1.5)
    assert parity_rule_eta(3) == math.pi
    assert parity_rule_eta(4) == 0.0


def test_single_particle_quantization():
    # N = 1, eta = pi: exp(ikL) = 1, so k = 2 pi n / L
    for n_qn in (-1.0, 0.0, 2.0):
        state = solve_bethe(1, 7.0, 1.0, quantum_numbers=[n_qn], eta=math.pi)
        assert state.momenta[0] == pytest.approx(2.0 * math.pi * n_qn / 7.0, abs=1e-13)
    assert solve_bethe(1, 7.0, 1.0).momenta[0] == 0.0


def test_two_particle_roots_match_bisection_oracle():
    # ground state is the symmetric pair (-q, q) with q L = pi - 2 arctan(2 lam q)
    lam, L = 1.0, 2.0 * math.pi
    g = lambda q: q * L - math.pi + 2.0 * math.atan(2.0 * lam * q)
    lo, hi = 1e-12, math.pi / L
    assert g(lo) < 0 < g(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(lo) * g(mid) <= 0:
            hi = mid
        else:
            lo = mid
    q = 0.5 * (lo + hi)
    state = solve_bethe(2, L, lam)
    assert state.momenta[1] == pytest.approx(q, abs=1e-10)
    assert state.momenta[0] == pytest.approx(-q, abs=1e-10)


def test_solved_states_have_small_multiplicative_residuals():
    for n in (2, 3, 4, 5):
        state = solve_bethe(n, 10.0, 0.7)
        assert bethe_residuals(state).max() <= 1e-12
        assert list(state.momenta) == sorted(state.momenta)
        assert state.energy == pytest.approx(sum(k * k for k in state.momenta))
        assert state.total_momentum == pytest.approx(0.0, abs=1e-12)
    boson = solve_lieb_liniger(3, 10.0, 2.0)
    assert bethe_residuals(boson).max() <= 1e-12


def test_excited_block_and_explicit_eta():
    state = solve_bethe(3, 10.0, 1.0, quantum_numbers=[-1.0, 0.0, 2.0], eta=math.pi)
    assert bethe_residuals(state).max() <= 1e-12
    assert state.total_momentum > 0.1


def test_free_limit_spacing():
    # lam -> 0+ is the free model: roots approach 2 pi I_j / L
    state = solve_bethe(3, 10.0, 1e-7)
    free = [2.0 * math.pi * I / 10.0 for I in (-1.0, 0.0, 1.0)]
    assert np.max(np.abs(np.asarray(state.momenta) - free)) < 1e-5


def test_solver_rejects_bad_input():
    with pytest.raises(ValueError, match="attractive"):
        solve_bethe(2, 10.0, -1.0)
    with pytest.raises(ValueError):
        solve_bethe(2, 10.0, 0.0)
    with pytest.raises(ValueError):
        solve_bethe(2, -1.0, 1.0)
    with pytest.raises(ValueError):
        solve_bethe(2, 10.0, 1.0, eta=0.5)
    with pytest.raises(ValueError):
        solve_bethe(2, 10.0, 1.0, quantum_numbers=[0.5, 0.5])
    with pytest.raises(ValueError):
        solve_bethe(2, 10.0, 1.0, quantum_numbers=[0.5, -0.5])
    with pytest.raises(ValueError):
        solve_bethe(2, 10.0, 1.0, quantum_numbers=[-0.5, 0.5, 1.5])
    with pytest.raises(ValueError):
        solve_lieb_liniger(2, 10.0, -2.0)


def test_solver_signals_non_convergence():
    with pytest.raises(ConvergenceError):
        solve_bethe(4, 10.0, 5.0, max_iter=1)


# ---------------------------------------------------------------------------
# duality


def test_duality_grid():
    for n in (2, 3, 4, 5, 6):
        for lam in (0.25, 1.0, 4.0):
            report = duality_check(n, 10.0, lam)
            assert report["max_abs_difference"] <= 1e-10
            assert report["eta_follows_parity_rule"]
            assert report["c_dual"] == pytest.approx(1.0 / lam)


def test_duality_wrong_phase_control():
    report = duality_check(3, 10.0, 1.0, eta=0.0)
    assert not report["eta_follows_parity_rule"]
    assert report["max_abs_difference"] > 1e-2


def test_duality_rejects_attractive():
    with pytest.raises(ValueError):
        duality_check(3, 10.0, -1.0)


# ---------------------------------------------------------------------------
# thermodynamic scan


def test_ground_state_scan_increments_shrink():
    rows = ground_state_scan(1.0, 1.0, [4, 8, 16])
    densities = [r["energy_density"] for r in rows]
    increments = [abs(b - a) for a, b in zip(densities, densities[1:])]
    assert increments[1] < increments[0]
    assert rows[0]["box_length"] == 4.0


def test_ground_state_scan_validates_input():
    with pytest.raises(ValueError):
        ground_state_scan(1.0, 1.0, [8, 4])
    with pytest.raises(ValueError):
        ground_state_scan(1.0, 1.0, [4, 4])
    with pytest.raises(ValueError):
        ground_state_scan(-1.0, 1.0, [4, 8])


def test_single_particle_ground_state_has_zero_energy():
    rows = ground_state_scan(1.0, 1.0, [1])
    assert rows[0]["energy_density"] == pytest.approx(0.0, abs=1e-26)
