import math

import numpy as np
import pytest

import infospec


FIG1 = np.array([[0.75, 0.25], [0.25, 0.25]], dtype=complex)
HALF = np.eye(2, dtype=complex) / 2


def test_info_spectrum_closed_form():
    r = infospec.info_spectrum_divergence(FIG1, FIG1, 0.25, "underline")
    assert r.gamma == pytest.approx(-2.0, abs=1e-9)
    assert r.achieved_gap == pytest.approx(0.75, abs=1e-9)

    ket0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    r2 = infospec.info_spectrum_divergence(ket0, HALF, 0.1, "underline")
    assert r2.gamma == pytest.approx(1 + math.log2(0.1), abs=1e-9)


def test_relative_entropy_and_ns_moments():
    st = infospec.relative_entropy_stats(np.diag([0.75, 0.25]).astype(complex), HALF)
    assert st.D == pytest.approx(0.188721875540867136, abs=1e-12)
    p, q = infospec.nussbaum_szkola(FIG1, HALF)
    psum = sum(p)
    assert psum == pytest.approx(1.0, abs=1e-10)
    d_cl = sum(pi * (math.log2(pi) - math.log2(qi)) for pi, qi in zip(p, q) if pi > 0)
    assert d_cl == pytest.approx(infospec.relative_entropy_stats(FIG1, HALF).D, abs=1e-10)


def test_hypothesis_testing_and_dmax():
    ket0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    value, test = infospec.hypothesis_testing_divergence(ket0, HALF, 0.2)
    assert value == pytest.approx(1 - math.log2(0.8), abs=1e-9)
    assert test.shape == (2, 2)
    lo, hi = infospec.max_divergence(ket0, HALF, 0.0)
    assert lo == hi == pytest.approx(1.0, abs=1e-10)


def test_expansions_and_protocols():
    c = infospec.source_coding_expansion(FIG1, 0.1)
    assert c.a == pytest.approx(0.600876036692856101, abs=1e-10)
    assert c.dispersion == pytest.approx(0.899123963307143899, abs=1e-10)
    assert c.rate(4096.0) > c.a  # below 1/2 the rate approaches S from above

    e = infospec.entanglement_expansion([0.7, 0.3], 0.1, "distill")
    assert e.a == pytest.approx(0.881290899230692618, abs=1e-10)

    gap, crossover, degenerate = infospec.irreversibility_gap([0.7, 0.3], 0.05, 0.05, 1)
    assert gap == pytest.approx(1.84279722035514013, abs=1e-9)
    assert crossover == 1 and not degenerate

    rec = infospec.dilute([0.7, 0.2, 0.1], 2)
    assert rec.fidelity_sq == pytest.approx(0.9, abs=1e-12)

    rec2, cert_ok = infospec.concentrate([1 / 16.0] * 16, 0.3, 0.1)
    assert cert_ok and rec2.m >= 1 and rec2.p_fail <= 0.3

    with pytest.raises(infospec.ProtocolFailure):
        infospec.concentrate([0.7, 0.3], 0.3, 0.1)


def test_cq_capacity_anchor():
    w0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    w1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    capacity, v_min, v_max = infospec.cq_capacity([w0, w1], seed=7)
    assert capacity == pytest.approx(1.0, abs=1e-9)
    assert v_min <= v_max


def test_weyl_and_random_determinism():
    us = infospec.weyl_set(3)
    assert len(us) == 9
    omega = infospec.random_state(3, 42)
    again = infospec.random_state(3, 42)
    assert np.array_equal(omega, again)
    twirl = sum(u @ omega @ u.conj().T for u in us)
    assert np.max(np.abs(twirl - 3 * np.eye(3))) <= 1e-12


def test_verify_smoke():
    ok, report = infospec.verify("core_lemmas", seed=7, trials=10)
    assert ok
    assert '"all_passed": true' in report
