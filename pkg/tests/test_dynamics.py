import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from floquet_dqpt.errors import GaplessPoint, StepCountTooSmall
from floquet_dqpt.model import SIGMA_X, SIGMA_Z, bloch_components
from floquet_dqpt.dynamics import (propagator_analytic, propagator_oracle,
                                   return_amplitude, return_probability,
                                   return_probability_grid, reunitarize)

from conftest import EXAMPLE1, random_params


def test_propagators_identity_at_t0(ex1):
    assert np.allclose(propagator_analytic(ex1, 0.8, 0.0), np.eye(2))
    assert np.allclose(propagator_oracle(ex1, 0.8, 0.0), np.eye(2))


def test_oracle_step_guard(ex1):
    with pytest.raises(StepCountTooSmall):
        propagator_oracle(ex1, 0.8, 1.0, steps=128)


def test_oracle_diagonal_at_k0(ex1):
    # h_xy(0) = 0 so H is static sz; the oracle must give a diagonal phase
    hz = bloch_components(ex1, 0.0).h_z
    t = 1.37
    u = propagator_oracle(ex1, 0.0, t, steps=1024)
    expected = np.diag([np.exp(-1j * hz * t), np.exp(1j * hz * t)])
    assert np.abs(u - expected).max() < 1e-10


def test_propagator_half_period_closed_form(ex1):
    # U(k_c, T/2) = e^{-i pi sz/2} e^{-i (Omega T/4) sin(k_c) sx}
    k_c = math.pi / 3
    t = ex1.period / 2
    theta = 0.25 * ex1.omega_amp * ex1.period * math.sin(k_c)
    rot_z = np.diag([np.exp(-1j * math.pi / 2), np.exp(1j * math.pi / 2)])
    rot_x = (math.cos(theta) * np.eye(2) - 1j * math.sin(theta) * SIGMA_X)
    assert np.abs(propagator_analytic(ex1, k_c, t) - rot_z @ rot_x).max() \
        < 1e-12


def test_oracle_matches_analytic_example(ex1):
    u_a = propagator_analytic(ex1, math.pi / 3, 3 * ex1.period)
    u_o = propagator_oracle(ex1, math.pi / 3, 3 * ex1.period, steps=4096)
    assert np.abs(u_a - u_o).max() < 1e-8
    # self-convergence: doubling the steps barely moves the result
    u_o2 = propagator_oracle(ex1, math.pi / 3, 3 * ex1.period, steps=8192)
    assert np.abs(u_o - u_o2).max() < 1e-10


def test_oracle_equivalence_random_draws():
    rng = np.random.default_rng(42)
    done = 0
    while done < 25:
        p = random_params(rng)
        k = rng.uniform(0.0, math.pi)
        try:
            u_a = propagator_analytic(p, k, 0.0)
        except GaplessPoint:
            continue
        t = rng.uniform(0.0, 2.0 * p.period)
        try:
            u_a = propagator_analytic(p, k, t)
        except GaplessPoint:
            continue
        u_o = propagator_oracle(p, k, t, steps=4096)
        assert np.abs(u_a - u_o).max() < 1e-7
        done += 1


def test_unitarity():
    rng = np.random.default_rng(9)
    for _ in range(20):
        p = random_params(rng)
        k, t = rng.uniform(0, math.pi), rng.uniform(0, 2 * p.period)
        try:
            u_a = propagator_analytic(p, k, t)
        except GaplessPoint:
            continue
        u_o = propagator_oracle(p, k, t, steps=1024)
        for u in (u_a, u_o):
            assert np.abs(u.conj().T @ u - np.eye(2)).max() < 1e-10


def test_reunitarize_reports_correction():
    u, corr = propagator_oracle(EXAMPLE1, 1.0, 1.5, steps=512,
                                return_correction=True)
    assert corr < 1e-8
    uu, c2 = reunitarize(np.eye(2) * (1 + 1e-3))
    assert c2 == pytest.approx(1e-3 * math.sqrt(1), rel=1e-6)


def test_return_amplitude_basics(ex1):
    g0 = return_amplitude(ex1, "minus", 0.7, 0.0)
    assert g0.value == pytest.approx(1.0)
    # critical momentum, half period: exact zero
    assert abs(return_amplitude(ex1, "minus", math.pi / 3, 1.0).value) \
        < 1e-14
    # quarter period: |G|^2 = cos^2(pi t / T) = 1/2
    assert return_probability(ex1, "minus", math.pi / 3, 0.5) == \
        pytest.approx(0.5, abs=1e-12)


def test_return_amplitude_against_oracle(ex1):
    # |<chi| U_oracle |chi>| should match the closed form
    from floquet_dqpt.model import floquet_solution
    for k in (0.5, math.pi / 3, 2.0):
        fs = floquet_solution(ex1, k)
        for t in (0.3, 0.9, 2.7):
            u = propagator_oracle(ex1, k, t, steps=2048)
            brute = abs(fs.chi_minus.conj() @ u @ fs.chi_minus) ** 2
            assert return_probability(ex1, "minus", k, t) == \
                pytest.approx(brute, abs=1e-9)


def test_amplitude_bound_and_period_returns():
    rng = np.random.default_rng(17)
    for _ in range(30):
        p = random_params(rng)
        k, t = rng.uniform(0, math.pi), rng.uniform(0, 3 * p.period)
        try:
            g = return_amplitude(p, "minus", k, t)
        except GaplessPoint:
            continue
        assert abs(g.value) <= 1 + 1e-12
        gn = return_amplitude(p, "minus", k, 2 * p.period)
        assert abs(abs(gn.value) - 1.0) < 1e-12


@given(k=st.floats(0.01, math.pi - 0.01), t=st.floats(0.0, 6.0))
@settings(max_examples=40, deadline=None)
def test_micromotion_periodicity_and_band_symmetry(k, t):
    p = EXAMPLE1
    g1 = abs(return_amplitude(p, "minus", k, t).value)
    g2 = abs(return_amplitude(p, "minus", k, t + p.period).value)
    assert abs(g1 - g2) < 1e-12
    assert return_probability(p, "minus", k, t) == \
        pytest.approx(return_probability(p, "plus", k, t), abs=1e-12)


def test_return_probability_grid_matches_scalar(ex1):
    ks = np.linspace(0.1, 3.0, 11)
    probs = return_probability_grid(ex1, "minus", ks, 1.3)
    for k, pr in zip(ks, probs):
        assert pr == pytest.approx(return_probability(ex1, "minus", k, 1.3),
                                   abs=1e-13)


def test_nv_experiment_values():
    # experiment parameters: Omega = 2pi x 10, w = d1 = 2pi x 5, d2 = +-2pi x 5
    from floquet_dqpt.cli import PRESETS
    nvp, nvm = PRESETS["nv-plus"], PRESETS["nv-minus"]
    for t in (0.1, 0.3, 0.5):
        assert return_probability(nvp, "minus", math.pi / 2, t) < 1e-10
    ks = np.linspace(0.0, math.pi, 13)
    for t in np.linspace(0.0, 0.6, 49):
        assert return_probability_grid(nvm, "minus", ks, t).min() > 0.0
