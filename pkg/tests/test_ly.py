"""Lee-Yang membership: falsification, exact criteria, equatorial scans.

Frozen literals below were computed from the independent references in
oracles.py (explicit loops, numpy.roots, closed-form substitution), not from
the package under test:

    robustness_bound(2, 3)     = 0.001831563888873418   (= 0.1 * e^-4)
    n=2 Gibbs ray root, b=1 s=0.5 -> 1.188823628549831  (Jacobi expm + np.roots)
"""

import numpy as np
import pytest

import oracles as oc
from lytensor import (
    EquatorialScan,
    MultiRadius,
    OperatorTensor,
    StateTensor,
    apply_pauli_channel,
    check_pauli_channel,
    check_sf_sufficient,
    check_single_qubit,
    check_two_qubit_ly1,
    equatorial_poly,
    equatorial_root_scan,
    falsification_tolerance,
    falsify_ly,
    eval_gen_poly,
    min_equatorial_root_modulus,
    robustness_bound,
    schur_projector,
    two_qubit_condition,
    weight_class_matrix,
)
from lytensor.ly import CERTIFIED, FALSIFIED, NOT_FALSIFIED


def random_state(n, rng, normalize=False):
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    t = StateTensor(n, amps)
    return t.normalized() if normalize else t


# ---------------------------------------------------------------------------
# tolerance and verdict plumbing


class TestFalsificationTolerance:
    def test_formula(self):
        psi = StateTensor(1, [1.0, 2.0])
        tol = falsification_tolerance(psi, MultiRadius([3.0]))
        assert tol == pytest.approx(1e-9 * 3.0 * 3.0, rel=1e-15)

    def test_small_radii_do_not_shrink(self):
        psi = StateTensor(2, [1.0, 1.0, 1.0, 1.0])
        tol = falsification_tolerance(psi, MultiRadius([0.5, 0.25]))
        assert tol == pytest.approx(4e-9, rel=1e-15)


class TestVerdictSerialization:
    def test_json_shape(self):
        v = falsify_ly(StateTensor(1, [0.0, 1.0]), 1.0, budget=0, rays=0)
        d = v.to_json_dict()
        assert d["kind"] == "Falsified"
        assert d["witness"]["strategy"] == "origin"
        assert d["radii"] == [1.0]


# ---------------------------------------------------------------------------
# equatorial polynomials


class TestEquatorialPoly:
    def test_basis_state_is_constant(self):
        psi = StateTensor.computational_basis(3, 0)
        p = equatorial_poly(psi, 0)
        assert p.degree == 0
        assert p.coeffs[0] == pytest.approx(2 ** (-1.5))

    def test_epr_pair(self):
        s = 0.25
        psi = StateTensor(2, [1, 0, 0, s])
        p = equatorial_poly(psi, "01")
        assert np.allclose(p.coeffs, [0.5, 0.0, -s / 2])
        from lytensor import poly_roots

        rs = poly_roots(p)
        oc.match_root_sets(rs.roots, [2.0, -2.0], 1e-12)

    def test_prefactor_does_not_move_roots(self):
        rng = np.random.default_rng(31)
        psi = random_state(3, rng)
        from lytensor import poly_roots

        p = equatorial_poly(psi, 5)
        scaled = p.coeffs * 2 ** (3 / 2)
        from lytensor import UnivariatePoly

        r1 = poly_roots(p).roots
        r2 = poly_roots(UnivariatePoly(scaled)).roots
        oc.match_root_sets(r1, r2, 1e-10)

    def test_matches_brute_sum(self):
        rng = np.random.default_rng(32)
        psi = random_state(4, rng)
        for y in (0, 3, 9, 15):
            got = np.zeros(5, dtype=complex)
            got[: len(equatorial_poly(psi, y).coeffs)] = equatorial_poly(psi, y).coeffs
            want = oc.equatorial_coeffs_brute(psi.amplitudes, y)
            assert np.allclose(got, want, atol=1e-12)

    def test_weight_class_matrix_unnormalized(self):
        rng = np.random.default_rng(33)
        psi = random_state(3, rng)
        M = weight_class_matrix(psi.amplitudes, 3)
        for y in range(8):
            want = oc.equatorial_coeffs_brute(psi.amplitudes, y) * 2 ** 1.5
            assert np.allclose(M[y], want, atol=1e-12)


class TestEquatorialScan:
    def test_epr_pair_minimum(self):
        s = 0.25
        psi = StateTensor(2, [1, 0, 0, s])
        value, y = min_equatorial_root_modulus(psi)
        assert value == pytest.approx(s**-0.5, rel=1e-12)
        # all four sign rays attain s^(-1/2); the reported y must be one
        assert y in (0, 1, 2, 3)

    def test_no_roots_reports_infinity(self):
        psi = StateTensor.computational_basis(3, 0)
        value, y = min_equatorial_root_modulus(psi)
        assert value == float("inf")
        assert y is None

    def test_zero_rows_are_skipped(self):
        # psi = |01> + |10>: rays y=01,10 cancel the weight-1 class entirely
        psi = StateTensor(2, [0, 1, 1, 0])
        scan = equatorial_root_scan(psi)
        assert sorted(scan.skipped_zero) == [1, 2]
        value, y = scan.min_modulus()
        assert value == 0.0  # remaining rays give c_1 * z with root at 0
        assert y == 0

    def test_matches_brute_chain(self):
        rng = np.random.default_rng(34)
        psi = random_state(3, rng)
        scan = equatorial_root_scan(psi)
        best = float("inf")
        for y in range(8):
            roots = oc.roots_numpy(oc.equatorial_coeffs_brute(psi.amplitudes, y))
            if roots.size:
                best = min(best, float(np.abs(roots).min()))
        got, _ = scan.min_modulus()
        assert got == pytest.approx(best, rel=1e-9)

    def test_index_cap(self):
        with pytest.raises(ValueError, match="16"):
            equatorial_root_scan(StateTensor(17, np.zeros(2**17)))


# ---------------------------------------------------------------------------
# falsify_ly


class TestFalsifyLy:
    def test_single_one_falsified_at_origin(self):
        v = falsify_ly(StateTensor(1, [0, 1.0]), 1.0, budget=0, rays=0)
        assert v.falsified
        assert v.witness.strategy == "origin"
        assert v.witness.z.tolist() == [0]

    def test_bell_not_falsified(self):
        bell = StateTensor(2, [1, 0, 0, 1])
        v = falsify_ly(bell, 1.0, budget=2000, seed=5)
        assert v.kind == NOT_FALSIFIED
        strategies = [e["strategy"] for e in v.effort]
        assert strategies == ["sign-rays", "random-rays", "polydisk-samples"]

    def test_seed_required_for_random_strategies(self):
        bell = StateTensor(2, [1, 0, 0, 1])
        with pytest.raises(ValueError, match="seed"):
            falsify_ly(bell, 1.0, budget=100)
        # deterministic-only run needs no seed
        v = falsify_ly(bell, 1.0, budget=0, rays=0)
        assert v.kind == NOT_FALSIFIED

    def test_scalar_tensors(self):
        assert falsify_ly(StateTensor.scalar(0.0), 1.0, budget=0, rays=0).falsified
        assert not falsify_ly(StateTensor.scalar(2.0), 1.0, budget=0, rays=0).falsified

    def test_witnesses_verify_against_brute_force(self):
        rng = np.random.default_rng(35)
        found = 0
        for _ in range(30):
            psi = random_state(3, rng)
            radii = MultiRadius.for_tensor(2.0, 3)
            v = falsify_ly(psi, 2.0, budget=500, seed=int(rng.integers(10**6)))
            if not v.falsified:
                continue
            found += 1
            tol = falsification_tolerance(psi, radii)
            val = oc.gen_poly_brute(psi.amplitudes, v.witness.z)
            assert abs(val) <= tol
            assert np.all(np.abs(v.witness.z) <= 2.0 * (1 - 1e-12))
        assert found >= 20  # radius 2 falsifies almost every random cube state

    def test_anisotropic_radii(self):
        # f = 1 + 4 z1 z2 has no zero with |z1| <= 0.4, |z2| <= 0.5
        psi = StateTensor(2, [1, 0, 0, 4.0])
        v = falsify_ly(psi, [0.4, 0.5], budget=4000, seed=9)
        assert v.kind == NOT_FALSIFIED
        # but it does at radii (0.6, 0.5): |4 z1 z2| reaches 1.2 > 1
        v2 = falsify_ly(psi, [0.6, 0.5], budget=4000, seed=9)
        assert v2.falsified
        assert np.abs(v2.witness.z[0]) < 0.6 and np.abs(v2.witness.z[1]) < 0.5

    def test_gibbs_n2_boundary(self):
        # frozen: independent ray-root modulus 1.188823628549831 for beta=1, s=0.5
        from lytensor import Graph, build_epr_like, gibbs

        H = build_epr_like(Graph(2, [(1, 2)]), 0.5)
        rho = gibbs(H, 1.0)
        vec = rho.tensor
        r = 1.188823628549831
        below = falsify_ly(vec, r * (1 - 1e-4), budget=5000, seed=3)
        assert below.kind == NOT_FALSIFIED
        above = falsify_ly(vec, r * (1 + 1e-3), budget=5000, seed=3)
        assert above.falsified

    def test_reproducible_with_seed(self):
        rng = np.random.default_rng(36)
        psi = random_state(3, rng)
        v1 = falsify_ly(psi, 1.5, budget=300, seed=42)
        v2 = falsify_ly(psi, 1.5, budget=300, seed=42)
        assert v1.kind == v2.kind
        if v1.falsified:
            assert np.array_equal(v1.witness.z, v2.witness.z)


# ---------------------------------------------------------------------------
# exact criteria


class TestSingleQubit:
    def test_certified(self):
        v = check_single_qubit(StateTensor(1, [1.0, 0.5]))
        assert v.certified
        assert v.criterion == "single-qubit-modulus"

    def test_equality_certified(self):
        amp = 0.7 * np.exp(1j * np.pi / 3)
        v = check_single_qubit(StateTensor(1, [0.7, amp]))
        assert v.certified

    def test_rejected_with_witness(self):
        v = check_single_qubit(StateTensor(1, [0.5, 1.0]))
        assert v.falsified
        z = v.witness.z[0]
        assert abs(z) < 1
        assert abs(0.5 + 1.0 * z) < 1e-12

    def test_wrong_arity(self):
        with pytest.raises(ValueError, match="one index"):
            check_single_qubit(StateTensor(2, [1, 0, 0, 0]))


class TestTwoQubit:
    def test_bell_equality_case(self):
        psi = StateTensor(2, np.array([1, 0, 0, 1]) / np.sqrt(2))
        lhs, rhs = two_qubit_condition(psi)
        assert lhs == pytest.approx(0.5)
        assert rhs == pytest.approx(0.5)
        assert check_two_qubit_ly1(psi).certified

    def test_half_amplitudes(self):
        psi = StateTensor(2, [1.0, 0.5, 0.5, 0.5])
        lhs, rhs = two_qubit_condition(psi)
        assert lhs == pytest.approx(0.5)
        assert rhs == pytest.approx(0.75)
        assert check_two_qubit_ly1(psi).certified

    def test_rejected_finds_witness(self):
        psi = StateTensor(2, [1.0, 0.0, 0.0, 2.0])
        v = check_two_qubit_ly1(psi)
        assert v.falsified
        z = v.witness.z
        assert abs(1.0 + 2.0 * z[0] * z[1]) <= falsification_tolerance(
            psi, MultiRadius([1.0, 1.0])
        )
        assert np.abs(z).max() < 1.0

    def test_psi00_zero_rejected(self):
        with pytest.raises(ValueError, match="psi_00"):
            check_two_qubit_ly1(StateTensor(2, [0.0, 1.0, 0.0, 0.0]))

    def test_wrong_arity(self):
        with pytest.raises(ValueError, match="two indices"):
            check_two_qubit_ly1(StateTensor(1, [1, 0]))


class TestSfSufficient:
    def test_ghz_plus(self):
        ghz = StateTensor(3, np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2))
        v = check_sf_sufficient(ghz)
        assert v.certified
        assert v.data["sign"] == 1

    def test_ghz_minus(self):
        ghz = StateTensor(3, np.array([1, 0, 0, 0, 0, 0, 0, -1]) / np.sqrt(2))
        v = check_sf_sufficient(ghz)
        assert v.certified
        assert v.data["sign"] == -1

    def test_depolarizing_choi_certified(self):
        for lam in (0.3, 0.8, 1.0):
            p = [1 - 0.75 * lam, 0.25 * lam, 0.25 * lam, 0.25 * lam]
            choi = oc.choi_brute(p)
            vec = StateTensor(4, choi.reshape(-1))
            assert check_sf_sufficient(vec).certified

    def test_flip_symmetry_failure_reported(self):
        v = check_sf_sufficient(StateTensor(1, [1.0, 0.5]))
        assert v.kind == NOT_FALSIFIED
        assert any("flip symmetry" in note for note in v.notes)

    def test_heavy_origin_failure_reported(self):
        # flip-symmetric but psi_0 too light: (1, 3, 3, 1)/norm
        psi = StateTensor(2, [1.0, 3.0, 3.0, 1.0])
        v = check_sf_sufficient(psi)
        assert v.kind == NOT_FALSIFIED
        assert any("1/4" in note for note in v.notes)


class TestPauliChannel:
    def test_depolarizing(self):
        v, choi = check_pauli_channel([0.4, 0.2, 0.2, 0.2])
        assert v.certified
        assert np.allclose(choi, oc.choi_brute([0.4, 0.2, 0.2, 0.2]))

    def test_dephasing(self):
        v, choi = check_pauli_channel([0.7, 0.0, 0.0, 0.3])
        assert v.certified
        want = np.array(
            [
                [1.0, 0, 0, 0.4],
                [0, 0, 0, 0],
                [0, 0, 0, 0],
                [0.4, 0, 0, 1.0],
            ]
        )
        assert np.allclose(choi, want)

    def test_bit_flip_rejected(self):
        v, _ = check_pauli_channel([0.0, 1.0, 0.0, 0.0])
        assert not v.certified

    def test_bad_distribution(self):
        with pytest.raises(ValueError, match="probabilities"):
            check_pauli_channel([0.5, 0.5, 0.5, -0.5])
        with pytest.raises(ValueError, match="probabilities"):
            check_pauli_channel([0.5, 0.1, 0.1, 0.1])

    def test_choi_matches_oracle_generally(self):
        rng = np.random.default_rng(37)
        for _ in range(5):
            p = rng.dirichlet([1, 1, 1, 1])
            p = p / p.sum()
            _, choi = check_pauli_channel(p)
            assert np.allclose(choi, oc.choi_brute(p), atol=1e-12)


class TestApplyPauliChannel:
    def test_matches_oracle(self):
        rng = np.random.default_rng(38)
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        op = OperatorTensor.from_matrix(m)
        p = [0.4, 0.3, 0.2, 0.1]
        for qubit in (0, 1):  # 0-based positions, like the tensor ops
            got = apply_pauli_channel(op, p, qubit)
            want = oc.apply_pauli_channel_brute(m, p, qubit + 1, 2)
            assert np.allclose(got.matrix, want, atol=1e-12)

    def test_identity_channel(self):
        rng = np.random.default_rng(39)
        m = rng.normal(size=(2, 2))
        op = OperatorTensor.from_matrix(m)
        out = apply_pauli_channel(op, [1.0, 0, 0, 0], 0)
        assert np.allclose(out.matrix, m)


class TestSchurProjector:
    def test_z_zero(self):
        P = schur_projector(np.zeros(2))
        want = np.zeros((4, 4))
        want[0, 0] = 1.0
        want[3, 3] = -1.0
        assert np.allclose(P.matrix, want)

    def test_n1_half(self):
        P = schur_projector([0.5])
        assert np.allclose(P.matrix, [[0.75, 0.0], [0.0, -0.75]])

    def test_matches_kron_oracle(self):
        rng = np.random.default_rng(40)
        z = 0.7 * (rng.normal(size=3) + 1j * rng.normal(size=3))
        z /= max(1.0, np.abs(z).max() / 0.9)
        P = schur_projector(z)
        assert np.allclose(P.matrix, oc.schur_projector_brute(z), atol=1e-12)
        assert P.hermitian

    def test_membership_not_falsified(self):
        rng = np.random.default_rng(41)
        z = 0.6 * np.exp(2j * np.pi * rng.random(2))
        P = schur_projector(z)
        v = falsify_ly(P.tensor, 1.0, budget=10000, seed=8)
        assert v.kind == NOT_FALSIFIED

    def test_boundary_rejected(self):
        with pytest.raises(ValueError, match="< 1"):
            schur_projector([1.0, 0.5])


class TestRobustnessBound:
    def test_n0(self):
        assert robustness_bound(0, 2.0) == 1.0

    def test_frozen_n2_r3(self):
        assert robustness_bound(2, 3.0) == pytest.approx(0.001831563888873418, rel=1e-14)

    def test_r_validation(self):
        with pytest.raises(ValueError, match="r > 1"):
            robustness_bound(2, 1.0)
