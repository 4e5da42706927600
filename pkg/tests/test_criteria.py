import numpy as np
import pytest

from sepcrit import criteria, linalg, maps, states
from sepcrit.criteria import Kind
from sepcrit.errors import (
    AllProjectionsVanish,
    CommutativityViolated,
    ParameterOutOfRange,
    SingularOperand,
)

from conftest import bell_state


def bell_density(d=2):
    return states.DensityMatrix(bell_state(d), d, d)


def pure_product(dA, dB):
    rho = np.zeros((dA * dB, dA * dB), dtype=complex)
    rho[0, 0] = 1.0
    return states.DensityMatrix(rho, dA, dB)


class TestAlphaBetaInequality:
    def test_pure_product_saturates(self):
        dec = maps.reduction_decomposition(2)
        res = criteria.alpha_beta_inequality(
            pure_product(2, 2), dec, 1, 2, Kind.I
        )
        assert abs(res.lhs - 1.0) <= 1e-10
        assert abs(res.rhs - 1.0) <= 1e-10
        assert not res.violated

    def test_bell_state_violates_kind_one(self):
        dec = maps.reduction_decomposition(2)
        res = criteria.alpha_beta_inequality(bell_density(), dec, 1, 2, Kind.I)
        # lhs = Tr rho_A^3 = 1/4, rhs = Tr rho^3 = 1
        assert abs(res.lhs - 0.25) <= 1e-10
        assert abs(res.rhs - 1.0) <= 1e-10
        assert res.violated

    def test_horodecki_kind_two_detection_window(self):
        dec = maps.phi_dk_decomposition(3, 1)
        hit = criteria.alpha_beta_inequality(
            states.horodecki_state(4.3), dec, 10, 1, Kind.II, tol=1e-13
        )
        miss = criteria.alpha_beta_inequality(
            states.horodecki_state(2.5), dec, 10, 1, Kind.II, tol=1e-13
        )
        assert hit.violated
        assert not miss.violated

    def test_kind_four_shares_lhs_with_kind_two(self, rng):
        dec = maps.reduction_decomposition(3)
        rho = states.random_separable(3, 3, 4, rng)
        r2 = criteria.alpha_beta_inequality(rho, dec, 2, 1, Kind.II)
        r4 = criteria.alpha_beta_inequality(rho, dec, 2, 1, Kind.IV)
        assert abs(r2.lhs - r4.lhs) <= 1e-10

    def test_kind_three_reverses_direction(self):
        # On the Bell state the reduction criterion flips sign for
        # negative beta: lhs = Tr rho (rho_A x 1)^(-1) vs Tr rho^0.
        dec = maps.reduction_decomposition(2)
        rho = states.DensityMatrix(
            0.9 * bell_state(2) + 0.1 * np.eye(4) / 4, 2, 2
        )
        up = criteria.alpha_beta_inequality(rho, dec, 1, -1, Kind.III)
        assert up.margin == up.rhs - up.lhs

    def test_kind_one_requires_commutativity(self, rng):
        dec = maps.tau_u_decomposition(maps.default_breuer_unitary(4))
        rho = states.random_separable(4, 4, 4, rng)
        with pytest.raises(CommutativityViolated):
            criteria.alpha_beta_inequality(rho, dec, 1, 2, Kind.I)

    def test_kind_one_accepts_commuting_state(self, rng):
        dec = maps.tau_u_decomposition(maps.default_breuer_unitary(4))
        p, q, r, _ = rng.dirichlet(np.ones(4))
        rho = states.so3_state(p, q, r)
        res = criteria.alpha_beta_inequality(rho, dec, 1, 2, Kind.I)
        assert res.commutator_norm is not None
        assert res.commutator_norm <= 1e-9

    def test_kind_three_rejects_singular(self):
        dec = maps.reduction_decomposition(2)
        with pytest.raises(SingularOperand):
            criteria.alpha_beta_inequality(
                pure_product(2, 2), dec, 1, -0.5, Kind.III
            )

    @pytest.mark.parametrize("kind,beta", [
        (Kind.I, 0.5), (Kind.II, 1.5), (Kind.II, -0.1),
        (Kind.III, 0.5), (Kind.III, -1.5), (Kind.IV, -0.5),
    ])
    def test_parameter_ranges(self, kind, beta):
        dec = maps.reduction_decomposition(2)
        with pytest.raises(ParameterOutOfRange):
            criteria.alpha_beta_inequality(bell_density(), dec, 1, beta, kind)

    def test_negative_alpha_rejected(self):
        dec = maps.reduction_decomposition(2)
        with pytest.raises(ParameterOutOfRange):
            criteria.alpha_beta_inequality(bell_density(), dec, -1, 2, Kind.I)

    def test_identity_shortcut_matches_generic_rhs(self, rng):
        # Eq for lambda2 = identity: rhs = Tr rho^(alpha+beta)
        dec = maps.reduction_decomposition(3)
        rho = states.random_separable(3, 3, 4, rng)
        res = criteria.alpha_beta_inequality(rho, dec, 2, 2, Kind.I)
        direct = np.trace(
            np.linalg.matrix_power(rho.matrix, 4)
        ).real
        assert abs(res.rhs - direct) <= 1e-12


class TestEntropicInequality:
    def test_pure_product_saturates(self):
        res = criteria.entropic_inequality(pure_product(2, 2), 2)
        assert abs(res.lhs - 1.0) <= 1e-10
        assert abs(res.rhs - 1.0) <= 1e-10
        assert not res.violated

    def test_bell_state_violates(self):
        res = criteria.entropic_inequality(bell_density(), 2)
        assert abs(res.lhs - 0.5) <= 1e-10
        assert abs(res.rhs - 1.0) <= 1e-10
        assert res.violated

    def test_direction_reverses_below_one(self):
        res = criteria.entropic_inequality(bell_density(), 0.5)
        assert res.margin == res.rhs - res.lhs
        assert res.violated

    @pytest.mark.parametrize("alpha", [2, 3, 4])
    def test_matches_reduction_special_case(self, alpha, rng):
        dec = maps.reduction_decomposition(3)
        for _ in range(10):
            rho = states.DensityMatrix(
                states.random_density(9, rng), 3, 3
            )
            ent = criteria.entropic_inequality(rho, alpha)
            red = criteria.alpha_beta_inequality(
                rho, dec, 1, alpha - 1, Kind.I
            )
            assert abs(ent.lhs - red.lhs) <= 1e-10
            assert abs(ent.rhs - red.rhs) <= 1e-10
            assert ent.violated == red.violated

    def test_rejects_alpha_one(self):
        with pytest.raises(ParameterOutOfRange):
            criteria.entropic_inequality(bell_density(), 1.0)


class TestStructuralAndPpt:
    def test_separable_passes_reduction(self, rng):
        R = maps.reduction_decomposition(3).map
        rho = states.random_separable(3, 3, 4, rng)
        assert criteria.structural_criterion(rho, R) >= -1e-9

    def test_horodecki_npt_above_four(self):
        T = maps.transposition_map(3)
        assert criteria.structural_criterion(
            states.horodecki_state(4.5), T
        ) < -1e-6

    def test_choi_map_detects_bound_entanglement(self):
        phi = maps.phi_dk_decomposition(3, 1).map
        assert criteria.structural_criterion(
            states.horodecki_state(3.5), phi
        ) < -1e-9

    def test_ppt_values(self):
        assert criteria.ppt_check(pure_product(2, 2)) >= -1e-12
        assert abs(criteria.ppt_check(states.horodecki_state(4.0))) <= 1e-8
        assert abs(criteria.ppt_check(bell_density()) + 0.5) <= 1e-12


class TestLimitWitness:
    def test_maximally_mixed_reduction(self):
        rho = states.DensityMatrix(np.eye(4) / 4, 2, 2)
        R = maps.reduction_decomposition(2).map
        assert abs(criteria.limit_witness(rho, R) - 1.0) <= 1e-10

    def test_horodecki_detection(self):
        phi = maps.phi_dk_decomposition(3, 1).map
        assert criteria.limit_witness(states.horodecki_state(4.8), phi) < 0
        assert criteria.limit_witness(states.horodecki_state(2.5), phi) >= 0

    def test_invariant_under_degenerate_rotation(self, rng):
        # Value must depend only on the top eigen-group projector, so a
        # unitary rotation inside the degenerate block changes nothing.
        phi = maps.phi_dk_decomposition(3, 1).map
        rho = states.horodecki_state(4.8)
        base = criteria.limit_witness(rho, phi)
        w, V = linalg.hermitian_eig(rho.matrix)
        # rebuild rho from a re-randomized basis of each degenerate block
        M = np.zeros_like(rho.matrix)
        i = 0
        while i < len(w):
            j = i
            while j + 1 < len(w) and w[j + 1] - w[i] <= 1e-9:
                j += 1
            block = V[:, i:j + 1]
            k = j - i + 1
            G = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            Q, _ = np.linalg.qr(G)
            block = block @ Q
            M += w[i] * block @ block.conj().T
            i = j + 1
        rot = states.DensityMatrix(M, 3, 3)
        assert abs(criteria.limit_witness(rot, phi) - base) <= 1e-8

    def test_all_projections_vanish(self):
        zero = maps.MatrixMap(2, np.zeros((4, 4)), "zero")
        rho = states.DensityMatrix(np.eye(4) / 4, 2, 2)
        with pytest.raises(AllProjectionsVanish):
            criteria.limit_witness(rho, zero)


class TestSoundnessSample:
    """Smaller randomized soundness run; the full suite lives in
    test_acceptance."""

    def test_no_false_positives(self, rng):
        decs = [maps.reduction_decomposition(3),
                maps.phi_dk_decomposition(3, 1)]
        params = [(1, 2, Kind.I), (2, 0.5, Kind.II), (1, 1, Kind.IV),
                  (2, -0.5, Kind.III)]
        for _ in range(25):
            rho = states.random_separable(3, 3, 4, rng)
            for dec in decs:
                for a, b, kind in params:
                    try:
                        res = criteria.alpha_beta_inequality(
                            rho, dec, a, b, kind
                        )
                    except SingularOperand:
                        continue
                    assert not res.violated, (dec.name, a, b, kind)
