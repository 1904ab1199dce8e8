import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ckp.fock import FockVector, TensorVector, apply_normal_pair, degree2, monomials_up_to2
from ckp.hirota import (CENTRAL_CHARGE, NonScalarResidual, NotDegreeFiltered, Quadratic,
                        QuadraticGenerator, beta_gamma_apply, beta_gamma_equivalence,
                        central_charge_probe, cocycle, exp_orbit_tau, generator_matrix,
                        hirota_apply, hirota_residual, hirota_square, matrix_bracket,
                        no_solution_scan, random_combination, random_generator, rho,
                        rho_generator, symmetry_check, wick_commutator)

vac = FockVector.vacuum()


def chi(*indices2):
    return FockVector.from_indices(indices2)


def tensor(v, w):
    return TensorVector.tensor(v, w)


# --- S^C -------------------------------------------------------------

def test_vacuum_is_a_solution():
    assert hirota_square(vac).is_zero()


def test_chi_minus_half_is_not():
    out = hirota_square(chi(1))
    assert not out.is_zero()
    assert out.component(0, 2)  # |0> (x) chi_{-1/2}^2 |0> type term


def test_swap_antisymmetry():
    for a in monomials_up_to2(4):
        for b in monomials_up_to2(4):
            w = TensorVector({(a, b): 1})
            assert hirota_apply(w.swap()).swap() == hirota_apply(w) * -1


def test_symmetric_tensors_go_to_antisymmetric():
    v = chi(3) + chi(1, 1) * Fraction(2, 3)
    out = hirota_square(v)
    assert out.swap() == out * -1


def test_scan_examples():
    assert not hirota_square(chi(3)).is_zero()
    assert not hirota_square(chi(1) + vac).is_zero()


def test_scan_small():
    r = no_solution_scan(8, 10, seed=1)
    assert r.passed and r.vacuum_ok
    assert r.checked == sum(len(monomials_up_to2(d)) - len(monomials_up_to2(d - 1))
                            for d in range(1, 9)) + 8 * 10


def test_scan_is_deterministic():
    a = no_solution_scan(6, 5, seed=3).to_json()
    b = no_solution_scan(6, 5, seed=3).to_json()
    assert a == b


def test_random_combination_shape():
    v = random_combination(random.Random(0), 6)
    assert v.max_degree2() == 6
    assert all(abs(Fraction(c).numerator) <= 9 and Fraction(c).denominator <= 9
               for c in v.terms.values())


# --- symmetry ---------------------------------------------------------

@pytest.mark.parametrize("a2,b2", [(-1, -1), (1, -3)])
def test_symmetry_examples(a2, b2):
    assert symmetry_check(a2, b2, 4)


def test_symmetry_degenerate():
    assert symmetry_check(1, 1, 4, generator=Quadratic())


def test_non_symplectic_operator_breaks_symmetry():
    # a single creation mode is not in the algebra and does not commute
    class Creation:
        def __call__(self, v):
            from ckp.fock import apply_mode
            return apply_mode(-1, v)
    assert not symmetry_check(1, 1, 2, generator=Creation())


# --- Wick oracle and central charge ------------------------------------

def _fock_commutator(a2, b2, c2, d2, v):
    ab = lambda x: apply_normal_pair(a2, b2, x)
    cd = lambda x: apply_normal_pair(c2, d2, x)
    return ab(cd(v)) - cd(ab(v))


idx = [-5, -3, -1, 1, 3, 5]


@pytest.mark.parametrize("a2,b2", [(a, b) for a in idx for b in idx if a <= b])
def test_wick_oracle_matches_fock(a2, b2):
    for c2, d2 in product(idx, repeat=2):
        if c2 > d2:
            continue
        quad, scalar = wick_commutator(a2, b2, c2, d2)
        q = Quadratic(quad)
        for mono in monomials_up_to2(6):
            v = FockVector.basis(mono)
            assert _fock_commutator(a2, b2, c2, d2, v) == q(v) + v * scalar


def test_generator_images():
    for i, j in [(0, 1), (1, 0), (2, -1), (0, 0)]:
        assert rho(generator_matrix(i, j)).coeffs == rho_generator(i, j).coeffs


def test_matrix_bracket_antisymmetric():
    X, Y = generator_matrix(0, 2), generator_matrix(2, 0)
    neg = {k: -v for k, v in matrix_bracket(Y, X).items()}
    assert matrix_bracket(X, Y) == neg
    assert cocycle(X, Y) == -cocycle(Y, X)


PAIRS = [((0, 1), (1, 0)), ((0, 2), (2, 0)), ((-1, 1), (1, -1)), ((0, 3), (3, 0)),
         ((-1, 2), (2, -1)), ((1, 1), (0, 0)), ((0, 1), (2, 0)), ((2, 3), (-2, -1))]


def test_central_charge_probe():
    results = central_charge_probe(PAIRS, 8)
    assert all(r.passed for r in results)
    assert any(r.cocycle for r in results)
    for r in results:
        assert r.residual == r.cocycle * Fraction(-1, 2)


def test_central_charge_sign_mutation():
    results = central_charge_probe(PAIRS, 8, central=Fraction(1, 2))
    assert not all(r.passed for r in results)
    assert all(r.passed == (r.cocycle == 0) for r in results)


def test_commuting_pair_residual_zero():
    (r,) = central_charge_probe([((0, 5), (7, 3))], 6)
    assert r.residual == 0 and r.cocycle == 0 and r.passed


def test_non_scalar_residual_is_reported():
    assert issubclass(NonScalarResidual, ArithmeticError)
    assert CENTRAL_CHARGE == Fraction(-1, 2)


# --- beta / gamma -------------------------------------------------------

def test_beta_gamma_equivalence():
    ok, scalar = beta_gamma_equivalence(6)
    assert ok and scalar == 1


def test_beta_gamma_examples():
    assert beta_gamma_apply(tensor(vac, vac)).is_zero()
    w = tensor(chi(1), chi(1))
    assert beta_gamma_apply(w) == hirota_apply(w)
    assert not hirota_apply(w).is_zero()


# --- exponential orbit ----------------------------------------------------

def test_zero_generator():
    g = QuadraticGenerator({})
    assert exp_orbit_tau(g, 8) == vac
    assert hirota_residual(exp_orbit_tau(g, 8), 8).is_zero()


def test_not_degree_filtered():
    with pytest.raises(NotDegreeFiltered):
        QuadraticGenerator({(-1, 1): 1})
    with pytest.raises(NotDegreeFiltered):
        QuadraticGenerator({(3, -1): 2})


def test_single_term_generator():
    g = QuadraticGenerator({(-3, -1): Fraction(2, 3)})
    tau = exp_orbit_tau(g, 12)
    assert tau.max_degree2() == 12
    assert hirota_residual(tau, 12).is_zero()


def test_orbit_window_is_exact_and_sharp():
    # the (d1, d2) part of S(tau (x) tau) reads tau only up to degree d1 + d2
    rng = random.Random(5)
    sharp = 0
    for _ in range(10):
        g = random_generator(rng, max_index2=5)
        D2 = 8
        small, big = exp_orbit_tau(g, D2), exp_orbit_tau(g, D2 + 6)
        assert hirota_residual(small, D2).is_zero()
        assert hirota_residual(big, D2 + 6).is_zero()
        full = hirota_square(small)
        outside = [k for k in full.terms if degree2(k[0]) + degree2(k[1]) > D2]
        if outside:
            sharp += 1
            assert min(degree2(a) + degree2(b) for a, b in outside) > D2
    assert sharp > 0


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10 ** 6))
def test_random_orbit_solves_hirota(seed):
    g = random_generator(random.Random(seed), max_index2=5)
    tau = exp_orbit_tau(g, 10)
    assert hirota_residual(tau, 10).is_zero()


def test_quadratic_algebra():
    q = Quadratic({(3, -1): 2}) + Quadratic({(-1, 3): 1})
    assert q.coeffs == {(-1, 3): 3}
    assert q.scaled(0).coeffs == {}
    assert q.degree_shifts2() == {-2}
    with pytest.raises(ValueError):
        Quadratic({(2, 1): 1})
