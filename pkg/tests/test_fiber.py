import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hklab.exterior import ExteriorAlgebra
from hklab.fiber import (FiberForm, bidegree_projector, complex_structure,
                         contraction_operator, form_coefficient_matrix,
                         holomorphic_symplectic, kahler_form, standard_fiber,
                         wedge_operator, zero_one_star_projector)
from hklab.quaternions import (TwistorPoint, ZETA_I, ZETA_J, ZETA_K,
                               adjoint_action, fibonacci_sphere,
                               random_twistor_point, random_unit_quaternion)


def test_standard_fiber_basis_convention(fiber1):
    e = np.eye(4)
    assert np.allclose(fiber1.I @ e[:, 0], e[:, 1])
    assert np.allclose(fiber1.J @ e[:, 0], e[:, 2])
    assert np.allclose(fiber1.K @ e[:, 0], e[:, 3])
    assert np.abs(fiber1.I @ fiber1.J - fiber1.K).max() == 0.0


def test_standard_fiber_invariants_n2(fiber2):
    assert fiber2.structure_residual() < 1e-14
    assert fiber2.d == 8 and fiber2.dim == 256


def test_empty_fiber_rejected():
    with pytest.raises(ValueError, match="empty fiber"):
        standard_fiber(0)


def test_complex_structure_axis_and_random(fiber1, rng):
    assert np.abs(complex_structure(fiber1, ZETA_J) - fiber1.J).max() == 0.0
    assert np.abs(complex_structure(fiber1, -ZETA_J) + fiber1.J).max() == 0.0
    for _ in range(10):
        Jz = complex_structure(fiber1, random_twistor_point(rng))
        assert np.abs(Jz @ Jz + np.eye(4)).max() < 1e-13


def test_complex_structure_rejects_non_unit():
    with pytest.raises(ValueError):
        TwistorPoint(0.5, 0.5, 0.5)


def test_twistor_rotation_matches_quaternion_conjugation(fiber1, rng):
    """J_{eta.zeta} equals conjugation of J_zeta by left multiplication."""
    for _ in range(10):
        eta = random_unit_quaternion(rng)
        zeta = random_twistor_point(rng)
        w, x, y, z = eta.as_array()
        Leta = w * np.eye(4) + x * fiber1.I + y * fiber1.J + z * fiber1.K
        lhs = complex_structure(fiber1, adjoint_action(eta, zeta))
        rhs = Leta @ complex_structure(fiber1, zeta) @ np.linalg.inv(Leta)
        assert np.abs(lhs - rhs).max() < 1e-13


def test_kahler_forms_derived_values(fiber1):
    pairs = fiber1.algebra.multi_indices(2)
    wi = dict(zip(pairs, kahler_form(fiber1, ZETA_I).coefficients))
    assert wi[(0, 1)] == 1 and wi[(2, 3)] == 1
    assert sum(abs(v) for k, v in wi.items() if k not in ((0, 1), (2, 3))) == 0
    wj = dict(zip(pairs, kahler_form(fiber1, ZETA_J).coefficients))
    assert wj[(0, 2)] == 1 and wj[(1, 3)] == -1
    wk = dict(zip(pairs, kahler_form(fiber1, ZETA_K).coefficients))
    assert wk[(0, 3)] == 1 and wk[(1, 2)] == 1


def test_kahler_form_linearity_and_antisymmetry(fiber1, rng):
    z = random_twistor_point(rng)
    combo = (z.zeta_I * kahler_form(fiber1, ZETA_I).coefficients
             + z.zeta_J * kahler_form(fiber1, ZETA_J).coefficients
             + z.zeta_K * kahler_form(fiber1, ZETA_K).coefficients)
    assert np.allclose(kahler_form(fiber1, z).coefficients, combo, atol=1e-14)
    W = form_coefficient_matrix(fiber1, kahler_form(fiber1, z))
    assert np.abs(W + W.T).max() < 1e-14


def test_omega_j_squared_is_twice_volume(fiber1):
    wj = kahler_form(fiber1, ZETA_J)
    L = wedge_operator(fiber1, wj).matrix
    v = L @ (L @ np.eye(16, dtype=complex)[:, 0])
    expected = np.zeros(16, dtype=complex)
    expected[-1] = 2.0  # e^0123
    assert np.allclose(v, expected, atol=1e-14)


def test_wedge_square_zero_and_duality(fiber1):
    alg = fiber1.algebra
    e0 = FiberForm(1, np.eye(4)[0])
    W = wedge_operator(fiber1, e0).matrix
    assert np.abs(W @ W).max() == 0.0
    C = contraction_operator(fiber1, np.eye(4)[0]).matrix
    assert np.abs(C @ W + W @ C - np.eye(alg.dim)).max() == 0.0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_wedge_contraction_anticommutator_random(seed):
    fiber = standard_fiber(1)
    rng = np.random.default_rng(seed)
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    W = wedge_operator(fiber, FiberForm(1, a)).matrix
    C = contraction_operator(fiber, v).matrix
    pairing = a @ v
    assert np.abs(C @ W + W @ C - pairing * np.eye(16)).max() < 1e-13


def test_wedge_past_top_degree_is_zero(fiber1):
    top = np.zeros(16, dtype=complex)
    top[-1] = 1.0
    W = wedge_operator(fiber1, FiberForm(1, np.ones(4)))
    assert np.abs(W.matrix @ top).max() == 0.0


def test_projector_completeness_random_zetas(fiber1, rng):
    for _ in range(10):
        z = random_twistor_point(rng)
        S = sum(bidegree_projector(fiber1, z, p, q).matrix
                for p in range(3) for q in range(3))
        assert np.abs(S - np.eye(16)).max() < 1e-13


def test_projector_bidegree_examples(fiber1):
    wj = kahler_form(fiber1, ZETA_J)
    v = wj.vector(fiber1)
    P11 = bidegree_projector(fiber1, ZETA_J, 1, 1).matrix
    assert np.allclose(P11 @ v, v, atol=1e-13)
    Om = holomorphic_symplectic(fiber1)
    vo = Om.vector(fiber1)
    assert np.allclose(bidegree_projector(fiber1, ZETA_J, 2, 0).matrix @ vo,
                       vo, atol=1e-13)
    assert np.allclose(bidegree_projector(fiber1, ZETA_J, 0, 2).matrix
                       @ vo.conj(), vo.conj(), atol=1e-13)


def test_projector_out_of_range(fiber1):
    with pytest.raises(ValueError):
        bidegree_projector(fiber1, ZETA_J, 3, 0)


def test_projector_conjugate_swap(fiber1, rng):
    for _ in range(5):
        z = random_twistor_point(rng)
        for (p, q) in ((1, 0), (1, 1), (2, 1)):
            A = bidegree_projector(fiber1, -z, p, q).matrix
            B = bidegree_projector(fiber1, z, q, p).matrix
            assert np.abs(A - B).max() < 1e-12


def test_projector_trace_dimensions(fiber2, rng):
    z = random_twistor_point(rng)
    for p in range(5):
        for q in range(5):
            tr = np.trace(bidegree_projector(fiber2, z, p, q).matrix)
            assert abs(tr.real - math.comb(4, p) * math.comb(4, q)) < 1e-9
            assert abs(tr.imag) < 1e-10


def test_kahler_form_is_fixed_by_11_projector(fiber1):
    for z in fibonacci_sphere(20):
        v = kahler_form(fiber1, z).vector(fiber1)
        P = bidegree_projector(fiber1, z, 1, 1).matrix
        assert np.abs(P @ v - v).max() < 1e-12


def test_zero_one_star_parity_split(fiber1, rng):
    z = random_twistor_point(rng)
    total = zero_one_star_projector(fiber1, z).matrix
    even = zero_one_star_projector(fiber1, z, "even").matrix
    odd = zero_one_star_projector(fiber1, z, "odd").matrix
    assert np.abs(total - even - odd).max() < 1e-12
    assert abs(np.trace(total).real - 4) < 1e-9
    with pytest.raises(ValueError):
        zero_one_star_projector(fiber1, z, "sideways")


def test_form_vector_length_validation(fiber1):
    with pytest.raises(ValueError):
        FiberForm(2, np.ones(5)).vector(fiber1)


def test_twisted_star_degree_signs():
    alg = ExteriorAlgebra(4)
    star = alg.hodge_star()
    tw = alg.twisted_star()
    # degree 0: sign +1, so both agree on the empty monomial
    assert np.allclose(tw[:, 0], star[:, 0])
    # degree 1: sign (-1)^{1} = -1
    assert np.allclose(tw[:, 1], -star[:, 1])
    # star is an isometry
    assert np.abs(star.T @ star - np.eye(16)).max() == 0.0
