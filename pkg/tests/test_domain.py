import numpy as np
import pytest

import qshje as Q


def test_constants_defaults_and_validation():
    c = Q.PhysConstants()
    assert c.hbar == 1.0 and c.mass == 1.0
    assert Q.PhysConstants(hbar=0.0).hbar == 0.0
    with pytest.raises(ValueError):
        Q.PhysConstants(hbar=-1.0)
    with pytest.raises(ValueError):
        Q.PhysConstants(mass=0.0)
    with pytest.raises(ValueError):
        Q.PhysConstants(hbar=np.inf)


def test_lambda_from_ell():
    assert [Q.lambda_from_ell(l) for l in range(4)] == [0, 2, 6, 12]
    with pytest.raises(ValueError):
        Q.lambda_from_ell(-1)
    with pytest.raises(ValueError):
        Q.lambda_from_ell(1.5)
    with pytest.raises(ValueError):
        Q.lambda_from_ell(True)


def test_symmetry_labels():
    assert Q.SymmetryClass.CARTESIAN.coordinate_labels == ("x", "y", "z")
    assert Q.SymmetryClass.SPHERICAL.coordinate_labels == ("r", "theta", "phi")
    assert Q.SymmetryClass.CYLINDRICAL.coordinate_labels == ("rho", "phi", "z")


def test_quantum_numbers_validation():
    qn = Q.QuantumNumbers(ell=2, m_ell=-2)
    assert qn.lam == 6
    with pytest.raises(ValueError):
        Q.QuantumNumbers(ell=1, m_ell=2)

    qn = Q.QuantumNumbers(energy=1.5, axis_energies={"x": 0.5, "y": 0.5, "z": 0.5})
    qn.check_axis_energies(("x", "y", "z"))
    bad = Q.QuantumNumbers(energy=1.5, axis_energies={"x": 0.5, "y": 0.5, "z": 0.4})
    with pytest.raises(ValueError, match="axis energies sum"):
        bad.check_axis_energies(("x", "y", "z"))
    with pytest.raises(ValueError, match="missing"):
        Q.QuantumNumbers(energy=1.0, axis_energies={"x": 1.0}).check_axis_energies(("x", "y"))


def test_potential_evaluation(constants):
    q = np.array([0.5, 1.0, 2.0])
    assert np.all(Q.ZeroPotential().evaluate(q, constants) == 0.0)
    np.testing.assert_allclose(
        Q.HarmonicPotential(2.0).evaluate(q, constants), 0.5 * 4.0 * q * q
    )
    np.testing.assert_allclose(Q.CoulombPotential(1.0).evaluate(q, constants), -1.0 / q)
    with pytest.raises(Q.GridDomainError):
        Q.CoulombPotential(1.0).evaluate(np.array([0.0, 1.0]), constants)
    np.testing.assert_allclose(
        Q.PowerLawPotential(3.0, 4.0).evaluate(q, constants), 3.0 * q**4
    )
    with pytest.raises(Q.GridDomainError):
        Q.PowerLawPotential(1.0, -1.0).evaluate(np.array([0.0]), constants)


def test_tabulated_potential_matches_samples(constants):
    x = np.linspace(0.0, 3.0, 61)
    tab = Q.TabulatedPotential(x, x**2)
    probe = np.linspace(0.2, 2.8, 17)
    np.testing.assert_allclose(tab.evaluate(probe, constants), probe**2, atol=1e-10)
    with pytest.raises(Q.GridDomainError):
        tab.evaluate(3.5, constants)
    with pytest.raises(ValueError):
        Q.TabulatedPotential([0.0, 1.0, 1.0, 2.0], [0.0, 1.0, 1.0, 4.0])
    with pytest.raises(ValueError):
        Q.TabulatedPotential([0.0, 1.0], [0.0, 1.0])


def test_effective_problem_energies(constants):
    # reduced polar / azimuthal / axial effective energies carry the
    # documented hbar^2/2m factors
    pol = Q.spherical_polar_problem(1, 0, constants)
    assert pol.e_eff == pytest.approx((2 + 0.25) / 2.0)
    azi = Q.azimuthal_problem(3, constants)
    assert azi.e_eff == pytest.approx(4.5)
    axi = Q.axial_problem(-1.0, constants)
    assert axi.e_eff == pytest.approx(0.5)
    assert axi.v_eff(np.array([1.0, 2.0])).tolist() == [0.0, 0.0]


def test_curvature_matches_closed_form_solution(constants):
    # r^2 exp(-r/2) solves the reduced radial hydrogen equation at l=1,
    # E=-1/8, so y''/y must equal the problem curvature
    prob = Q.spherical_radial_problem(Q.CoulombPotential(1.0), 1, -0.125, constants)
    r = np.linspace(0.5, 8.0, 31)
    y = r * r * np.exp(-0.5 * r)
    d2y = (2.0 - 2.0 * r + 0.25 * r * r) * np.exp(-0.5 * r)
    np.testing.assert_allclose(prob.curvature(r), d2y / y, rtol=1e-12)


def test_curvature_guarded_at_zero_hbar():
    frozen = Q.PhysConstants(hbar=0.0)
    prob = Q.axial_problem(-1.0, frozen)
    with pytest.raises(ValueError, match="hbar = 0"):
        prob.curvature(np.array([0.0, 1.0]))


def test_domain_guards():
    c = Q.PhysConstants()
    prob = Q.spherical_radial_problem(Q.CoulombPotential(1.0), 0, -0.5, c)
    with pytest.raises(Q.GridDomainError):
        prob.check_domain(np.array([-1.0, 1.0]))
    pol = Q.spherical_polar_problem(1, 1, c)
    with pytest.raises(Q.GridDomainError):
        pol.check_domain(np.array([0.0, 1.0]))
    with pytest.raises(Q.GridDomainError):
        pol.v_eff(np.array([np.pi]))
    with pytest.raises(ValueError):
        Q.spherical_polar_problem(0, 1, c)


def test_fictive_potentials(constants):
    r = np.array([2.0])
    v = Q.domain.fictive_radial_potential(Q.ZeroPotential(), 1, constants, r)
    assert v[0] == pytest.approx(2.0 / (2.0 * 4.0))
    t = np.array([np.pi / 2.0])
    v = Q.domain.fictive_polar_potential(2, constants, t)
    assert v[0] == pytest.approx((4.0 - 0.25) / 2.0)
    rho = np.array([2.0])
    v = Q.domain.fictive_cylindrical_potential(Q.ZeroPotential(), 1, -1.0, constants, rho)
    assert v[0] == pytest.approx((1.0 - 0.25) / 8.0 + 0.5)
