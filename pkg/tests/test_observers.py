"""Observer cascades: hand-worked derivative arithmetic, gate logic,
fault readout algebra, and structural properties shared by the two
variants.

The single-evaluation oracles below were worked out by hand from the
cascade structure: pair i injects xtilde_{i+1} + lam_i sqrt|e_i| sign(e_i)
into xhat_i and alpha_i sign(e_i) into xtilde_{i+1}; the n-th pair of the
proposed variant injects drift + f_tilde, its fault pair filters
e_f = f_tilde - f_hat; the baseline n-th pair injects theta_tilde.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracobs.errors import SingularGainError
from fracobs.observers import (
    FstaParams,
    GateVector,
    ObserverDynamics,
    ObserverGains,
    ObserverState,
    baseline_fault_readout,
    baseline_observer_rhs,
    estimation_errors,
    fsta_rhs,
    gates,
    pack_state,
    proposed_observer_rhs,
    recover_fault_general_b,
    required_gain_count,
    sta_convergence_time,
    state_dim,
    state_labels,
    unpack_state,
    zero_state,
)
from fracobs.plants import arneodo

SQ02 = math.sqrt(0.2)
SQ03 = math.sqrt(0.3)
SQ08 = math.sqrt(0.8)


def proposed_fixture():
    state = ObserverState(
        x_hat=np.array([0.3, 0.1, -0.2]),
        x_tilde=np.array([0.4, 0.6]),
        theta_tilde=-0.3,
        f_tilde=0.25,
        f_hat=0.05,
    )
    gains = ObserverGains(lambdas=(1, 2, 3, 4), alphas_gain=(5, 6, 7, 8))
    return state, gains, arneodo(), 0.5


class TestFsta:
    def test_rhs_formula(self):
        p = FstaParams(lam=2.0, alpha_gain=3.0)
        d1, d2 = fsta_rhs(0.25, 1.5, p)
        assert d1 == pytest.approx(1.5 - 2.0 * 0.5)
        assert d2 == -3.0

    def test_sign_zero_is_zero(self):
        p = FstaParams(lam=2.0, alpha_gain=3.0)
        d1, d2 = fsta_rhs(0.0, 0.7, p, rho=0.1)
        assert d1 == 0.7 and d2 == pytest.approx(0.1)

    @given(
        st.floats(min_value=-10, max_value=10, allow_nan=False),
        st.floats(min_value=-10, max_value=10, allow_nan=False),
        st.floats(min_value=0.01, max_value=50),
        st.floats(min_value=0.01, max_value=50),
    )
    @settings(max_examples=80, deadline=None)
    def test_odd_symmetry(self, x1, x2, lam, alp):
        p = FstaParams(lam=lam, alpha_gain=alp)
        d = fsta_rhs(x1, x2, p)
        dneg = fsta_rhs(-x1, -x2, p)
        assert dneg[0] == pytest.approx(-d[0], abs=1e-12)
        assert dneg[1] == pytest.approx(-d[1], abs=1e-12)

    def test_gains_must_be_positive(self):
        with pytest.raises(ValueError):
            FstaParams(lam=0.0, alpha_gain=1.0)
        with pytest.raises(ValueError):
            FstaParams(lam=1.0, alpha_gain=-2.0)


class TestConvergenceTime:
    def test_alpha_one_identity(self):
        assert sta_convergence_time(1.0, 2.7) == pytest.approx(2.7, rel=1e-13)

    def test_alpha_half_quarter_pi(self):
        # independent route: (Gamma(1.5) v_s)^2 with Gamma(1.5) = sqrt(pi)/2
        ref = (math.sqrt(math.pi) / 2.0) ** 2
        assert sta_convergence_time(0.5, 1.0) == pytest.approx(ref, rel=1e-12)
        assert ref == pytest.approx(math.pi / 4, rel=1e-15)

    def test_small_vs_limit(self):
        assert sta_convergence_time(0.8, 1e-9) < 1e-9

    def test_vs_must_be_positive(self):
        with pytest.raises(ValueError):
            sta_convergence_time(0.8, 0.0)


class TestGates:
    def test_cascade_definition(self):
        gv = gates(np.array([0.001, 0.5, 0.001]), epsilon=0.01)
        assert gv.flags.tolist() == [True, False, False]

    def test_all_open(self):
        gv = gates(np.array([0.0, 0.01, -0.01]), epsilon=0.01)
        assert gv.flags.tolist() == [True, True, True]

    @given(st.lists(st.floats(min_value=-1, max_value=1, allow_nan=False),
                    min_size=1, max_size=6))
    @settings(max_examples=80, deadline=None)
    def test_monotone_non_increasing(self, errs):
        flags = gates(np.array(errs), epsilon=0.05).flags
        assert all(flags[i] >= flags[i + 1] for i in range(len(flags) - 1))

    def test_epsilon_positive(self):
        with pytest.raises(ValueError):
            gates(np.zeros(3), epsilon=0.0)


class TestEstimationErrors:
    def test_definition(self):
        state, _, _, y = proposed_fixture()
        e = estimation_errors(state, y)
        assert e == pytest.approx([0.2, 0.3, 0.8])


class TestProposedRhs:
    def test_all_gates_open_hand_values(self):
        state, gains, plant, y = proposed_fixture()
        d = proposed_observer_rhs(state, y, gains, plant, GateVector(np.array([1, 1, 1], bool)))
        # pair 1: xtilde_2 + lam1 sqrt|e1|, alpha1 sign(e1)
        assert d.x_hat[0] == pytest.approx(0.4 + 1 * SQ02)
        assert d.x_tilde[0] == pytest.approx(5.0)
        # pair 2: xtilde_3 + lam2 sqrt|e2|
        assert d.x_hat[1] == pytest.approx(0.6 + 2 * SQ03)
        assert d.x_tilde[1] == pytest.approx(6.0)
        # pair 3: a(y, xt2, xt3) + f_tilde + lam3 sqrt|e3|
        drift = 5.5 * 0.5 - 3.5 * 0.4 - 0.8 * 0.6 - 0.5 ** 3  # = 0.745
        assert drift == pytest.approx(0.745)
        assert d.x_hat[2] == pytest.approx(drift + 0.25 + 3 * SQ08)
        assert d.f_tilde == pytest.approx(7.0)
        # fault pair: theta + lam4 sqrt|e_f|, e_f = 0.25 - 0.05
        assert d.f_hat == pytest.approx(-0.3 + 4 * SQ02)
        assert d.theta_tilde == pytest.approx(8.0)

    def test_all_gates_closed_only_first_pair_runs(self):
        state, gains, plant, y = proposed_fixture()
        d = proposed_observer_rhs(state, y, gains, plant, GateVector(np.zeros(3, bool)))
        assert d.x_hat[0] == pytest.approx(0.4 + SQ02)
        assert d.x_tilde[0] == pytest.approx(5.0)
        assert d.x_hat[1] == 0.0 and d.x_hat[2] == 0.0
        assert d.x_tilde[1] == 0.0
        assert d.f_tilde == 0.0 and d.f_hat == 0.0 and d.theta_tilde == 0.0

    def test_negative_error_flips_signs(self):
        state, gains, plant, y = proposed_fixture()
        state.x_hat[0] = 0.7  # e1 = -0.2
        d = proposed_observer_rhs(state, y, gains, plant, GateVector(np.ones(3, bool)))
        assert d.x_hat[0] == pytest.approx(0.4 - SQ02)
        assert d.x_tilde[0] == pytest.approx(-5.0)

    def test_requires_fault_states(self):
        _, gains, plant, y = proposed_fixture()
        bare = ObserverState(x_hat=np.zeros(3), x_tilde=np.zeros(2), theta_tilde=0.0)
        with pytest.raises(ValueError):
            proposed_observer_rhs(bare, y, gains, plant, GateVector(np.ones(3, bool)))

    def test_gain_count_enforced(self):
        state, _, plant, y = proposed_fixture()
        short = ObserverGains(lambdas=(1, 2, 3), alphas_gain=(4, 5, 6))
        with pytest.raises(ValueError):
            proposed_observer_rhs(state, y, short, plant, GateVector(np.ones(3, bool)))


class TestBaselineRhs:
    def test_hand_values(self):
        state, _, plant, y = proposed_fixture()
        bstate = ObserverState(x_hat=state.x_hat.copy(), x_tilde=state.x_tilde.copy(),
                               theta_tilde=-0.3)
        gains = ObserverGains(lambdas=(1, 2, 3), alphas_gain=(5, 6, 7))
        d = baseline_observer_rhs(bstate, y, gains, GateVector(np.array([1, 1], bool)))
        assert d.x_hat[0] == pytest.approx(0.4 + SQ02)
        assert d.x_tilde[0] == pytest.approx(5.0)
        assert d.x_hat[1] == pytest.approx(0.6 + 2 * SQ03)
        assert d.x_tilde[1] == pytest.approx(6.0)
        # n-th pair injects theta_tilde, no drift, no fault pair
        assert d.x_hat[2] == pytest.approx(-0.3 + 3 * SQ08)
        assert d.theta_tilde == pytest.approx(7.0)

    def test_prefix_agreement_hand_case(self):
        state, pgains, plant, y = proposed_fixture()
        bstate = ObserverState(x_hat=state.x_hat.copy(), x_tilde=state.x_tilde.copy(),
                               theta_tilde=state.theta_tilde)
        bgains = ObserverGains(lambdas=pgains.lambdas[:3], alphas_gain=pgains.alphas_gain[:3])
        dp = proposed_observer_rhs(state, y, pgains, plant, GateVector(np.ones(3, bool)))
        db = baseline_observer_rhs(bstate, y, bgains, GateVector(np.ones(2, bool)))
        assert dp.x_hat[:2] == pytest.approx(db.x_hat[:2])
        assert dp.x_tilde == pytest.approx(db.x_tilde)

    @given(
        st.lists(st.floats(min_value=-3, max_value=3, allow_nan=False), min_size=8, max_size=8),
        st.lists(st.floats(min_value=0.1, max_value=20), min_size=8, max_size=8),
        st.floats(min_value=-2, max_value=2, allow_nan=False),
        st.lists(st.booleans(), min_size=3, max_size=3),
    )
    @settings(max_examples=60, deadline=None)
    def test_prefix_agreement_property(self, vals, gs, y, open_flags):
        # first 2(n-1) derivative components agree whatever the state/gains
        plant = arneodo()
        ps = ObserverState(x_hat=np.array(vals[0:3]), x_tilde=np.array(vals[3:5]),
                           theta_tilde=vals[5], f_tilde=vals[6], f_hat=vals[7])
        bs = ObserverState(x_hat=np.array(vals[0:3]), x_tilde=np.array(vals[3:5]),
                           theta_tilde=vals[5])
        pg = ObserverGains(lambdas=gs[0:4], alphas_gain=gs[4:8])
        bg = ObserverGains(lambdas=gs[0:3], alphas_gain=gs[4:7])
        flags = np.array(open_flags, dtype=bool)
        dp = proposed_observer_rhs(ps, y, pg, plant, GateVector(flags))
        db = baseline_observer_rhs(bs, y, bg, GateVector(flags[:2]))
        np.testing.assert_allclose(dp.x_hat[:2], db.x_hat[:2], atol=1e-12)
        np.testing.assert_allclose(dp.x_tilde, db.x_tilde, atol=1e-12)


class TestFaultReadout:
    def test_round_trip_to_1e12(self):
        # theta = a(xt) + b(xt) f  =>  readout recovers f
        plant = arneodo()
        xt = np.array([0.5, 0.4, 0.6])
        f_true = 0.37
        theta = plant.a(xt) + plant.b(xt) * f_true
        f_back = baseline_fault_readout(xt, theta, plant)
        assert abs(f_back - f_true) < 1e-12

    def test_hand_value(self):
        plant = arneodo()
        xt = np.array([0.5, 0.4, 0.6])  # a = 0.745
        assert baseline_fault_readout(xt, -0.3, plant) == pytest.approx(-1.045)

    def test_broadcasts_over_rows(self):
        plant = arneodo()
        rows = np.array([[0.5, 0.4, 0.6], [0.0, 0.0, 0.0]])
        out = baseline_fault_readout(rows, np.array([-0.3, 1.0]), plant)
        assert out == pytest.approx([-1.045, 1.0])

    def test_general_gain_division(self):
        assert recover_fault_general_b(2.0, 0.74) == pytest.approx(0.37)
        with pytest.raises(SingularGainError):
            recover_fault_general_b(0.0, 1.0)

    def test_singular_gain_detected(self):
        plant = arneodo()
        plant.b = lambda x: 0.0
        with pytest.raises(SingularGainError):
            baseline_fault_readout(np.zeros(3), 1.0, plant)


class TestStateLayout:
    def test_dims_and_gain_counts(self):
        assert state_dim("proposed", 3) == 8
        assert state_dim("baseline", 3) == 6
        assert required_gain_count("proposed", 3) == 4
        assert required_gain_count("baseline", 3) == 3

    def test_labels(self):
        assert state_labels("proposed", 3) == [
            "xhat1", "xtilde2", "xhat2", "xtilde3", "xhat3",
            "f_tilde", "f_hat", "theta_tilde",
        ]
        assert state_labels("baseline", 3) == [
            "xhat1", "xtilde2", "xhat2", "xtilde3", "xhat3", "theta_tilde",
        ]

    def test_pack_unpack_round_trip(self):
        state, _, _, _ = proposed_fixture()
        flat = pack_state(state, "proposed")
        back = unpack_state(flat, 3, "proposed")
        assert back.x_hat == pytest.approx(state.x_hat)
        assert back.x_tilde == pytest.approx(state.x_tilde)
        assert back.f_tilde == state.f_tilde
        assert back.f_hat == state.f_hat
        assert back.theta_tilde == state.theta_tilde

    def test_zero_state(self):
        z = zero_state("proposed", 3)
        assert np.all(pack_state(z, "proposed") == 0.0)


class TestObserverDynamics:
    def test_flat_rhs_matches_direct_call(self):
        state, gains, plant, y = proposed_fixture()
        dyn = ObserverDynamics("proposed", gains, plant)
        flat = pack_state(state, "proposed")
        out = dyn.rhs_flat(y, flat)
        e = estimation_errors(state, y)
        gv = gates(e, gains.epsilon)
        ref = pack_state(proposed_observer_rhs(state, y, gains, plant, gv), "proposed")
        assert out == pytest.approx(ref)

    def test_latching_keeps_gates_open(self):
        _, gains, plant, _ = proposed_fixture()
        dyn = ObserverDynamics("proposed", gains, plant, latching=True)
        small = np.array([1e-4, 1e-4, 1e-4])
        big = np.array([1.0, 1.0, 1.0])
        assert dyn.gate_flags(small).all()
        assert dyn.gate_flags(big).all()  # latched
        dyn.reset()
        assert not dyn.gate_flags(big).any()

    def test_instantaneous_gates_flap(self):
        _, gains, plant, _ = proposed_fixture()
        dyn = ObserverDynamics("proposed", gains, plant, latching=False)
        assert dyn.gate_flags(np.array([1e-4, 1e-4, 1e-4])).all()
        assert not dyn.gate_flags(np.array([1.0, 1.0, 1.0])).any()

    def test_unknown_variant_rejected(self):
        _, gains, plant, _ = proposed_fixture()
        with pytest.raises(ValueError):
            ObserverDynamics("improved", gains, plant)
