import numpy as np
import pytest
from hypothesis import given, strategies as st

from mspec.bim import BimConfig, bim_solve
from mspec.bounds import upper_es
from mspec.errors import InvalidWitness, NotMember, NotNonnegative
from mspec.exact import gen_delta1
from mspec.oracle import global_max_multistart
from mspec.structure import (check_semigroup_closure, delta_membership, is_member,
                             omega_membership, position_membership, random_separable_member,
                             separable_member, structure_report, upper_from_position)
from mspec.tensor import identity_tensor, random_ps, zero_tensor

seeds = st.integers(0, 2**32 - 1)
M = np.array([[2.0, 1.0, 0.5], [1.0, 2.0, 1.0], [0.5, 1.0, 2.0]])


def test_separable_member_position():
    u = np.array([1.0, 2.0, 3.0]) / 3.0
    B = separable_member(u, M)
    assert position_membership(B)[0] == 2


def test_zero_tensor_position():
    assert position_membership(zero_tensor(2, 3)) == (0, 0)
    assert upper_from_position(zero_tensor(2, 3), p=0) == 0.0


def test_identity_has_no_position():
    p, q = position_membership(identity_tensor(3, 3))
    assert p is None and q is None


def test_upper_from_position_closed_form():
    u = np.array([1.0, 2.0, 3.0]) / 3.0
    B = separable_member(u, M)
    bm = np.linalg.eigvalsh(M)[-1]
    # C_p = u_p * sum(u) * M, and the true maximum is ||u||^2 beta_max(M)
    assert upper_from_position(B, p=2) == pytest.approx(u[2] * u.sum() * bm)
    rho = global_max_multistart(B, restarts=20).best.lam
    assert rho == pytest.approx(bm * (u @ u), abs=1e-9)
    assert upper_from_position(B, p=2) >= rho
    assert upper_from_position(B, p=2) <= upper_es(B).R1 + 1e-9
    with pytest.raises(InvalidWitness):
        upper_from_position(B, p=0)
    with pytest.raises(ValueError):
        upper_from_position(B)


def test_position_conclusion_on_eigenvector(rng):
    for _ in range(20):
        p = int(rng.integers(3))
        B = random_separable_member(3, 3, rng, p=p)
        assert position_membership(B)[0] == p
        e = bim_solve(B, BimConfig(tol=1e-10)).eigenpair
        y = np.abs(e.y)
        assert np.all(y[p] >= y - 1e-6)


def test_delta_examples(fixture_tensor):
    assert delta_membership(fixture_tensor("B4")) == (False, True)
    assert delta_membership(gen_delta1(3, 3, 1))[0]
    assert delta_membership(fixture_tensor("B1")) == (False, False)


def test_omega_examples(fixture_tensor):
    assert omega_membership(fixture_tensor("B4"))[1]
    assert omega_membership(fixture_tensor("ex42_B"))[0]
    assert omega_membership(fixture_tensor("B1")) == (False, False)
    with pytest.raises(NotNonnegative):
        omega_membership(fixture_tensor("ex51_A"))


@given(st.integers(1, 4), st.integers(1, 4), seeds)
def test_delta_implies_omega(m, n, seed):
    B = gen_delta1(m, n, seed)
    rep = structure_report(B)
    assert rep.delta1 and rep.omega1


def test_closure_examples():
    X, Y = gen_delta1(3, 3, 1), gen_delta1(3, 3, 2)
    assert check_semigroup_closure(X, Y, "delta1")
    assert check_semigroup_closure(zero_tensor(3, 3), X, "delta1")
    rng = np.random.default_rng(5)
    U, V = random_separable_member(3, 4, rng, p=1), random_separable_member(3, 4, rng, p=1)
    assert check_semigroup_closure(U, V, "upsilon1", 1)


def test_closure_rejects_non_members(fixture_tensor):
    with pytest.raises(NotMember):
        check_semigroup_closure(fixture_tensor("B1"), fixture_tensor("B1"), "delta1")
    with pytest.raises(ValueError):
        is_member(fixture_tensor("B1"), "omega7")


def test_upsilon2_by_transpose(rng):
    # swapping the roles of the two vector modes maps upsilon1 onto upsilon2
    B = random_separable_member(3, 4, rng, p=2)
    swapped = type(B)(B.entries.transpose(1, 0, 3, 2))
    assert position_membership(swapped)[1] == 2


def test_report_general_tensor(fixture_tensor):
    rep = structure_report(fixture_tensor("ex51_A"))
    assert rep.upsilon1_p is None and rep.omega1 is None


@given(seeds)
def test_random_tensors_rarely_structured(seed):
    B = random_ps(3, 3, np.random.default_rng(seed))
    assert delta_membership(B) == (False, False)
