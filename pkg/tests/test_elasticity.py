import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mspec.bim import BimConfig, bim_solve
from mspec.bounds import upper_es
from mspec.elasticity import (RHOMBIC_KEYS, certify_strong_ellipticity, diagonal_max,
                              ding_unfold_check, make_m_tensor, not_ew_check, rhombic_generate,
                              rhombic_validate, scan_eta)
from mspec.errors import DimensionMismatch, EtaTooSmall, NotNonnegative, NotZTensor
from mspec.oracle import global_max_multistart
from mspec.tensor import PsTensor, diagonal_mask, from_coo, identity_tensor, random_ps, zero_tensor


def min_f(A):
    return -global_max_multistart(PsTensor(-A.entries), restarts=50).best.lam


def uniform_offdiag(m, n, diag, off):
    mask = diagonal_mask(m, n)
    return PsTensor(np.where(mask, diag, off))


class TestCertificate:
    def test_worked_example(self, fixture_tensor):
        A = fixture_tensor("ex51_A")
        cert = certify_strong_ellipticity(A, 13.0)
        assert cert.certified and cert.z_tensor
        assert cert.R1 == pytest.approx(12.0623, abs=1e-3)
        assert cert.min_eig_lower == pytest.approx(13.0 - cert.bound_used)
        assert cert.ding_beta_min == pytest.approx(-1.5178, abs=1e-3)
        # the unfolding test fails where the certificate succeeds
        assert ding_unfold_check(A) < 0
        assert min_f(A) > 0

    def test_shift_relation(self, fixture_tensor):
        A = fixture_tensor("ex51_A")
        B = PsTensor(13.0 * diagonal_mask(2, 2) - A.entries)
        rho = bim_solve(B, BimConfig(init="mes", tol=1e-10)).eigenpair.lam
        assert rho == pytest.approx(10.7692, abs=1e-3)
        assert upper_es(B).best - rho >= -1e-6
        assert min_f(A) == pytest.approx(13.0 - rho, abs=1e-6)

    def test_identity(self):
        cert = certify_strong_ellipticity(identity_tensor(3, 3), 1.0)
        assert cert.certified
        assert cert.min_eig_lower == pytest.approx(1.0)

    def test_default_eta_is_floor(self, fixture_tensor):
        A = fixture_tensor("ex51_A")
        cert = certify_strong_ellipticity(A)
        assert cert.eta == diagonal_max(A)
        assert cert.certified

    def test_margin_is_eta_invariant(self, fixture_tensor):
        A = fixture_tensor("ex51_A")
        margins = [certify_strong_ellipticity(A, eta).min_eig_lower for eta in (13.0, 20.0, 100.0)]
        np.testing.assert_allclose(margins, margins[0], rtol=1e-9)

    def test_eta_too_small(self, fixture_tensor):
        with pytest.raises(EtaTooSmall):
            certify_strong_ellipticity(fixture_tensor("ex51_A"), 1.0)

    def test_not_z_tensor(self, fixture_tensor):
        B1 = fixture_tensor("B1")
        with pytest.raises(NotZTensor):
            certify_strong_ellipticity(B1, 100.0)
        cert = certify_strong_ellipticity(B1)
        assert cert.verdict == "not_certified" and not cert.z_tensor

    def test_refuted(self):
        cert = certify_strong_ellipticity(uniform_offdiag(2, 2, 0.1, -5.0))
        assert cert.verdict == "refuted_not_ew"

    def test_not_certified_z_tensor(self):
        # f is positive at the uniform state but the coupled block is indefinite
        A = PsTensor(from_coo(3, 1, [[1, 1, 1, 1, 1], [2, 1, 2, 1, 1], [3, 1, 3, 1, 1],
                                     [1, 1, 2, 1, -1.2]]))
        cert = certify_strong_ellipticity(A)
        assert cert.verdict == "not_certified"
        assert cert.min_eig_lower is None

    def test_scan(self, fixture_tensor):
        cert = scan_eta(fixture_tensor("ex51_A"))
        assert cert.certified and cert.eta == 13.0
        assert scan_eta(PsTensor(from_coo(2, 1, [[1, 1, 1, 1, 1], [2, 1, 2, 1, 1], [1, 1, 2, 1, -1.5]]))) is None


class TestNotEw:
    def test_diagonal(self):
        assert not not_ew_check(identity_tensor(2, 3))

    def test_dominated(self):
        A = uniform_offdiag(2, 2, 0.1, -5.0)
        assert not_ew_check(A)
        assert not_ew_check(A, "general")
        assert min_f(A) < 0

    def test_single_coupling(self):
        items = [[i, j, i, j, 0.1] for i in (1, 2) for j in (1, 2)] + [[1, 1, 2, 2, -5.0]]
        A = PsTensor(from_coo(2, 2, items))
        assert not_ew_check(A) and not_ew_check(A, "general")

    def test_example(self, fixture_tensor):
        assert not not_ew_check(fixture_tensor("ex51_A"))

    def test_z_mode_rejects(self, fixture_tensor):
        with pytest.raises(NotZTensor):
            not_ew_check(fixture_tensor("B1"))
        with pytest.raises(ValueError):
            not_ew_check(identity_tensor(2, 2), "bogus")

    @settings(max_examples=40)
    @given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
    def test_general_is_sound(self, m, n, seed):
        A = random_ps(m, n, np.random.default_rng(seed), -1.0, 1.0)
        if not_ew_check(A, "general"):
            x = np.full(m, m**-0.5)
            y = np.full(n, n**-0.5)
            assert np.einsum("ijkl,i,j,k,l->", A.entries, x, y, x, y) < 0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_certificate_soundness(m, n, seed):
    rng = np.random.default_rng(seed)
    B = random_ps(m, n, rng, 0.0, 1.0)
    eta = upper_es(B).best + rng.uniform(0.0, 1.0)
    A = PsTensor(eta * diagonal_mask(m, n) - B.entries)
    if not A.flags.z_tensor:
        return
    cert = certify_strong_ellipticity(A)
    if cert.certified:
        assert min_f(A) > 0
        assert cert.min_eig_lower <= min_f(A) + 1e-8


class TestMTensor:
    def test_example(self, fixture_tensor):
        B = fixture_tensor("ex52_B")
        A = make_m_tensor(B, "R2")
        assert A.flags.z_tensor and rhombic_validate(A)
        R2 = upper_es(B).R2
        assert R2 == pytest.approx(12.7757, abs=1e-3)
        rho = global_max_multistart(B, restarts=50).best.lam
        assert min_f(A) == pytest.approx(R2 - rho, abs=1e-8)
        assert min_f(A) >= -1e-9

    def test_zero(self):
        A = make_m_tensor(zero_tensor(2, 2))
        np.testing.assert_array_equal(A.entries, 0.0)

    def test_requires_nonnegative(self):
        with pytest.raises(NotNonnegative):
            make_m_tensor(uniform_offdiag(2, 2, 1.0, -1.0))
        with pytest.raises(ValueError):
            make_m_tensor(identity_tensor(2, 2), "R3")


class TestRhombic:
    def test_generate_roundtrip(self, rng):
        params = {k: rng.uniform(1, 2) for k in RHOMBIC_KEYS}
        A = rhombic_generate(params)
        assert rhombic_validate(A)
        assert A.entries[0, 0, 1, 1] == params["1122"]
        assert A.entries[0, 1, 0, 1] == params["1212"]
        assert A.entries[1, 0, 0, 1] == params["1122"]  # a_2112 = a_1122 under PS symmetry

    def test_fixtures(self, fixture_tensor):
        assert not rhombic_validate(fixture_tensor("B1"))
        B = fixture_tensor("ex52_B")
        assert rhombic_validate(PsTensor(13.0 * diagonal_mask(3, 3) - B.entries))

    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            rhombic_validate(identity_tensor(2, 3))

    def test_unknown_key(self):
        with pytest.raises(ValueError):
            rhombic_generate({"1234": 1.0})
