"""Smoke tests for the python module: imports, determinism, and agreement
between the closed forms and Monte Carlo on a small system."""

import math

import numpy as np
import pytest

import rissop


def make_config(**kwargs):
    cfg = rissop.SystemConfig()
    cfg.n_t, cfg.n_r, cfg.n_e, cfg.n_s = 3, 2, 2, 4
    cfg.alpha = cfg.beta = 0.8
    cfg.rho = 8.0
    cfg.r_s = 1.0
    for key, value in kwargs.items():
        setattr(cfg, key, value)
    return cfg


def test_sample_rayleigh_deterministic():
    a = rissop.sample_rayleigh(2, 3, seed=7)
    b = rissop.sample_rayleigh(2, 3, seed=7)
    assert a.shape == (2, 3)
    np.testing.assert_array_equal(a, b)
    c = rissop.sample_rayleigh(2, 3, seed=7, stream=1)
    assert np.abs(a - c).max() > 0


def test_reg_upper_gamma_values():
    assert rissop.reg_upper_gamma(1, 0.5) == pytest.approx(math.exp(-0.5))
    assert rissop.reg_upper_gamma(3, 0.0) == 1.0
    with pytest.raises(Exception):
        rissop.reg_upper_gamma(0, 1.0)


def test_theory_tracks_monte_carlo():
    cfg = make_config()
    ch = rissop.generate_channels(cfg, seed=11)
    q = rissop.random_phase_vector(cfg.n_s, seed=12)
    bf = rissop.mrt_baseline(cfg, ch, True, q)
    theo = rissop.sop_theory(cfg, ch, q, bf)
    est = rissop.empirical_sop(cfg, ch, q, bf, 50000, seed=13, n_threads=2)
    assert 0.0 <= theo <= 1.0
    assert abs(theo - est.p_hat) <= 0.02


def test_alternating_optimize_reduces_outage():
    cfg = make_config()
    ch = rissop.generate_channels(cfg, seed=21)
    q0 = rissop.PhaseVector.ones(cfg.n_s)
    bf0 = rissop.mrt_baseline(cfg, ch, True, q0)
    start = rissop.sop_theory(cfg, ch, q0, bf0)
    report = rissop.alternating_optimize(cfg, ch, "manifold", seed=22)
    tuned = rissop.sop_theory(cfg, ch, report.final_q, report.final_b)
    assert report.iterations_used >= 1
    assert tuned <= start + 1e-12


def test_sweep_csv_deterministic():
    scenario = """
    {
      "system": {"n_t": 2, "n_r": 1, "n_e": 2, "n_s": 3,
                 "alpha": 0.8, "beta": 0.8, "r_s": 1.0, "snr_db": 9.0},
      "sweep": {"axis": "r_s", "values": [0.5, 1.0]},
      "schemes": ["mrt_no_ris", "ao_cs"],
      "trials": 200,
      "seed": 5
    }
    """
    csv1 = rissop.run_scenario_csv(scenario)
    csv2 = rissop.run_scenario_csv(scenario, n_threads=2)
    assert csv1 == csv2
    lines = csv1.strip().splitlines()
    assert lines[0].startswith("scenario,scheme,sweep_axis")
    assert len(lines) == 5  # header + 2 values x 2 schemes
