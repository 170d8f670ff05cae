import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kerrswap import evolution
from kerrswap.errors import DegenerateNorm
from kerrswap.evolution import (
    SubsystemAmplitudes,
    amplitudes_from_frequencies,
    amplitudes_subsystem1,
    amplitudes_subsystem2,
    coupling_term,
    eta_pair,
    normalize,
    normalized_amplitudes,
)
from kerrswap.model import InitialState, SystemParams, derive_frequencies

# reference amplitudes from expm of the constant 2x2 generator in the rotating frame
FROZEN = [
    ((0, 0, 0, 0, math.pi / 4, 0, 1.3),
     (-0.1870269365712179 - 0.6819244276287405j, -0.18702693657121805 - 0.6819244276287406j),
     (-0.9643867740660751j, -0.2644960302281092 + 0j)),
    ((10, 0.4, 2, 3, math.pi / 3, 3 * math.pi / 2, 2.7),
     (0.6803693670083366 - 0.5953658614824545j, -0.48156502789995276 + 0.6513383950485228j),
     (-0.38905645703876346 - 0.2530674382143975j, 0.805170770508221 + 0.5112402555496739j)),
    ((7, 0.7, 0.1, 0.3, 1.1, 0.4, 5.0),
     (0.013284738822975532 - 0.38257530457515615j, 0.24132889991632617 + 0.7802678316013362j),
     (0.030087135562430777 + 0.1274824204461767j, -0.10884663286855731 + 0.9483952041180576j)),
    ((0, 1, 1, 1, math.pi / 4, 0, 9.5),
     (0.5089588425106971 - 0.15351806388278097j, 0.5678880818563644 - 0.6284076918508822j),
     (-0.04166926475148691 - 0.5529050042636899j, 0.7614457625198264 - 0.33579767625140045j)),
]

params_st = st.builds(
    SystemParams,
    st.floats(-10, 10), st.floats(0, 1), st.floats(0, 3), st.floats(0, 3),
)
init_st = st.builds(InitialState, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))


@pytest.mark.parametrize("case,first,second", FROZEN)
def test_frozen_amplitudes(case, first, second):
    p, init, t = SystemParams(*case[:4]), InitialState(*case[4:6]), case[6]
    s1 = amplitudes_subsystem1(p, init, t)
    s2 = amplitudes_subsystem2(p, t)
    assert abs(s1.a_e1 - first[0]) < 1e-13 and abs(s1.a_g2 - first[1]) < 1e-13
    assert abs(s2.a_e1 - second[0]) < 1e-13 and abs(s2.a_g2 - second[1]) < 1e-13


@settings(max_examples=100, deadline=None)
@given(params_st, init_st)
def test_initial_condition(p, init):
    s1 = amplitudes_subsystem1(p, init, 0.0)
    s2 = amplitudes_subsystem2(p, 0.0)
    assert s1.a_e1 == pytest.approx(init.cos_theta, abs=1e-15)
    assert s1.a_g2 == pytest.approx(init.sin_theta * init.phase, abs=1e-15)
    assert (s2.a_e1, s2.a_g2) == (0, 1)


@settings(max_examples=100, deadline=None)
@given(params_st, st.floats(0, 20))
def test_determinant_identity(p, t):
    df = derive_frequencies(p)
    eta, eta_p = eta_pair(df, t)
    w = coupling_term(df, t)
    scale = max(1.0, abs(eta * eta_p), abs(w) ** 2)
    assert abs(eta * eta_p - w * w - 1) / scale < 1e-12


@settings(max_examples=100, deadline=None)
@given(params_st, init_st, st.floats(0, 15))
def test_branch_independence(p, init, t):
    df = derive_frequencies(p)
    a = amplitudes_from_frequencies(df, init, t)
    b = amplitudes_from_frequencies(df.__class__(df.lambda_c, df.zeta, -df.omega_c, df.omega0, df.g), init, t)
    for x, y in zip(a, b):
        assert abs(x.a_e1 - y.a_e1) <= 1e-12 * max(1, abs(x.a_e1))
        assert abs(x.a_g2 - y.a_g2) <= 1e-12 * max(1, abs(x.a_g2))


@settings(max_examples=100, deadline=None)
@given(params_st, init_st, st.floats(0, 50))
def test_normalized_unit_norm(p, init, t):
    s1, s2 = normalized_amplitudes(p, init, t)
    assert s1.normalized and s2.normalized
    assert abs(s1.norm_sq - 1) < 1e-12 and abs(s2.norm_sq - 1) < 1e-12


def test_normalize_preserves_phase_and_rejects_zero():
    amps = normalize(SubsystemAmplitudes(3j, 4.0))
    assert amps.a_e1 == pytest.approx(0.6j) and amps.a_g2 == pytest.approx(0.8)
    with pytest.raises(DegenerateNorm):
        normalize(SubsystemAmplitudes(0j, 0j))


def test_scaled_path_survives_strong_growth():
    p = SystemParams(0.0, 0.0, 3.0, 0.0, g=1.0)
    init = InitialState(math.pi / 5, 0.3)
    t = np.linspace(0, 50, 11)
    s1, s2 = normalized_amplitudes(p, init, t)
    assert np.all(np.isfinite(s1.a_e1)) and np.all(np.isfinite(s2.a_g2))
    # far beyond double range without scaling
    p = SystemParams(0.0, 0.0, 3000.0, 0.0)
    s1, _ = normalized_amplitudes(p, init, 50.0)
    assert np.isfinite(s1.a_e1) and abs(s1.norm_sq - 1) < 1e-12


def test_removable_singularity_is_continuous():
    # delta = 2 chi and kappa - gamma = 4 sqrt(2) g gives Omega = 0
    p0 = SystemParams(0.8, 0.4, 4 * math.sqrt(2), 0.0)
    near = SystemParams(0.8, 0.4, 4 * math.sqrt(2) + 1e-7, 0.0)
    init = InitialState(0.7, 1.2)
    t = np.linspace(0, 5, 21)
    a = amplitudes_subsystem1(p0, init, t)
    b = amplitudes_subsystem1(near, init, t)
    assert np.all(np.isfinite(a.a_e1))
    np.testing.assert_allclose(a.a_e1, b.a_e1, rtol=1e-5, atol=1e-5)
    np.testing.assert_allclose(a.a_g2, b.a_g2, rtol=1e-5, atol=1e-5)


def test_series_matches_direct_sinhc():
    om = 1e-3 + 2e-3j
    t = np.array([1e-3, 1e-2, 0.05])
    direct = np.sinh(om * t / 2) / om
    np.testing.assert_allclose(evolution.sinhc_series(om, t), direct, rtol=1e-13)
