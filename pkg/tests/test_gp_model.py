import pytest
from hypothesis import given
from hypothesis import strategies as st

from springgp.gp_model import (
    DesignVariables,
    GPCoefficients,
    build_coefficients,
    constraint_residuals,
    is_feasible,
    objective,
)
from springgp.mechanics import (
    LoadCase,
    MaterialSpec,
    SpringGeometry,
    max_shear_stress,
    spring_mass,
    tip_deflection,
)

X_OPT = DesignVariables(0.010249012754438885, 0.0010249012754438886)


def test_example_coefficients(coeffs):
    # printed to five significant figures in the source example
    assert coeffs.c == pytest.approx(189989.8847, rel=1e-9)
    assert coeffs.c11 == pytest.approx(9.8676e-8, rel=5e-5)
    assert coeffs.c12 == pytest.approx(6.3662e-8, rel=5e-5)
    assert coeffs.c21 == pytest.approx(1.4709e-5, rel=5e-5)


def test_coefficients_match_high_precision_reference(coeffs):
    # mpmath at 40 digits from the same closed forms
    assert coeffs.c == pytest.approx(189989.88472097015, rel=1e-15)
    assert coeffs.c11 == pytest.approx(9.86760647169751e-08, rel=1e-14)
    assert coeffs.c12 == pytest.approx(6.366197723675813e-08, rel=1e-14)
    assert coeffs.c21 == pytest.approx(1.470897434262048e-05, rel=1e-14)


def test_load_scaling(material, load):
    base = build_coefficients(material, 10, load)
    doubled = build_coefficients(material, 10, LoadCase(2 * load.P, load.tau_max, load.delta_max))
    assert doubled.c == base.c
    for name in ("c11", "c12", "c21"):
        assert getattr(doubled, name) == pytest.approx(2 * getattr(base, name), rel=1e-15)


def test_linear_material_deflection_coefficient(load):
    mat = MaterialSpec(K=80e9, n=1.0, nu=0.3, rho=7800)
    coeffs = build_coefficients(mat, 12, load)
    assert coeffs.c21 == pytest.approx(8 * load.P * 12 / (mat.G * load.delta_max), rel=1e-15)


@pytest.mark.parametrize(
    "load, rho, turns",
    [
        (LoadCase(0.0, 1e8, 0.01), 7700, 10),
        (LoadCase(1.0, 1e8, 0.01), 0.0, 10),
        (LoadCase(1.0, 1e8, 0.01), 7700, 0),
    ],
)
def test_build_rejects_non_positive(load, rho, turns):
    mat = MaterialSpec(K=1e9, n=0.2, nu=0.3, rho=rho)
    with pytest.raises(ValueError):
        build_coefficients(mat, turns, load)


@given(
    K=st.floats(min_value=1e6, max_value=1e12),
    n=st.floats(min_value=0.05, max_value=1.0),
    nu=st.floats(min_value=0.0, max_value=0.49),
    rho=st.floats(min_value=100, max_value=20000),
    N=st.floats(min_value=1, max_value=100),
    P=st.floats(min_value=1e-2, max_value=1e5),
    tau=st.floats(min_value=1e6, max_value=1e10),
    delta=st.floats(min_value=1e-5, max_value=1.0),
)
def test_coefficients_positive(K, n, nu, rho, N, P, tau, delta):
    coeffs = build_coefficients(MaterialSpec(K, n, nu, rho), N, LoadCase(P, tau, delta))
    assert min(coeffs.c, coeffs.c11, coeffs.c12, coeffs.c21) > 0


def test_coefficients_type_rejects_non_positive():
    with pytest.raises(ValueError):
        GPCoefficients(c=1, c11=1, c12=0, c21=1, n=1)
    with pytest.raises(ValueError):
        GPCoefficients(c=1, c11=-1, c12=1, c21=1, n=1)


def test_design_variables_positive():
    with pytest.raises(ValueError):
        DesignVariables(0.0, 1.0)


class TestObjective:
    def test_example_design(self, coeffs):
        assert objective(coeffs, X_OPT) == pytest.approx(2.0453921272486212e-3, rel=1e-13)

    def test_linear_in_x1(self, coeffs):
        base = objective(coeffs, DesignVariables(0.02, 0.001))
        assert objective(coeffs, DesignVariables(0.06, 0.001)) == pytest.approx(3 * base, rel=1e-15)

    def test_matches_mass(self, coeffs, material):
        geom = SpringGeometry(D=X_OPT.x1, d=X_OPT.x2, N=10)
        assert objective(coeffs, X_OPT) == pytest.approx(spring_mass(geom, material), rel=1e-12)


class TestResiduals:
    def test_example_optimum(self, coeffs):
        g = constraint_residuals(coeffs, X_OPT, 10.0)
        assert abs(g.g1) < 1e-12
        assert abs(g.g3) < 1e-15
        # deflection ratio from tip_deflection: 8.7829e-4 / 0.03
        assert g.g2 == pytest.approx(8.782850610832073e-4 / 0.03 - 1, abs=1e-6)
        assert g.g2 == pytest.approx(-0.9706, abs=2e-4)

    def test_index_constraint_exact(self, coeffs):
        assert constraint_residuals(coeffs, DesignVariables(0.03, 0.003), 10.0).g3 == 0.0

    def test_large_wire_limit(self, coeffs):
        g = constraint_residuals(coeffs, DesignVariables(0.01, 1e3), 10.0)
        assert g.g1 == pytest.approx(-1, abs=1e-12)
        assert g.g2 == pytest.approx(-1, abs=1e-12)

    def test_physical_equivalence_on_boundary(self, coeffs, material, load):
        """g1 = 0 exactly where the surface stress hits tau_max; same for g2 and delta_max."""
        geom = SpringGeometry(D=X_OPT.x1, d=X_OPT.x2, N=10)
        assert max_shear_stress(load, geom, material) / load.tau_max - 1 == pytest.approx(
            constraint_residuals(coeffs, X_OPT, 10.0).g1, abs=1e-10
        )
        # choose D so the deflection constraint is exactly active at d = X_OPT.x2
        d = X_OPT.x2
        D = (d ** (coeffs.n + 3) / coeffs.c21) ** (1 / 3)
        g = constraint_residuals(coeffs, DesignVariables(D, d), D / d)
        assert abs(g.g2) < 1e-12
        assert tip_deflection(load, SpringGeometry(D, d, 10), material) == pytest.approx(load.delta_max, rel=1e-10)

    @given(x1=st.floats(min_value=1e-3, max_value=1.0), x2=st.floats(min_value=1e-4, max_value=1e-1))
    def test_feasibility_matches_physics(self, x1, x2):
        material = MaterialSpec(K=960e6, n=0.1, nu=0.275, rho=7700.0)
        load = LoadCase(P=10.0, tau_max=200e6, delta_max=0.03)
        coeffs = build_coefficients(material, 10, load)
        if x1 <= x2:
            return
        geom = SpringGeometry(D=x1, d=x2, N=10)
        g = constraint_residuals(coeffs, DesignVariables(x1, x2), 1.0)
        tau_ratio = max_shear_stress(load, geom, material) / load.tau_max
        delta_ratio = tip_deflection(load, geom, material) / load.delta_max
        assert g.g1 == pytest.approx(tau_ratio - 1, rel=1e-10, abs=1e-12)
        assert g.g2 == pytest.approx(delta_ratio - 1, rel=1e-10, abs=1e-12)

    def test_residuals_scale_free(self):
        """g1, g2 are dimensionless: rescale lengths by s and coefficients accordingly."""
        n = 0.3
        base = GPCoefficients(c=5.0, c11=2e-7, c12=3e-8, c21=4e-4, n=n)
        s = 37.0
        scaled = GPCoefficients(c=5.0 / s ** 3, c11=base.c11 * s ** 2, c12=base.c12 * s ** 2, c21=base.c21 * s ** n, n=n)
        x = DesignVariables(0.02, 0.0015)
        xs = DesignVariables(x.x1 * s, x.x2 * s)
        g, gs = constraint_residuals(base, x, 8.0), constraint_residuals(scaled, xs, 8.0)
        assert gs.g1 == pytest.approx(g.g1, rel=1e-12)
        assert gs.g2 == pytest.approx(g.g2, rel=1e-12)
        assert gs.g3 == pytest.approx(s * g.g3, rel=1e-12)
        assert objective(scaled, xs) == pytest.approx(objective(base, x), rel=1e-12)


class TestFeasible:
    def test_example_optimum(self, coeffs):
        assert is_feasible(coeffs, X_OPT, 10.0, tol=1e-6)

    def test_equal_diameters_infeasible(self, coeffs):
        assert not is_feasible(coeffs, DesignVariables(0.01, 0.01), 10.0, tol=1e-6)

    def test_stress_violation(self, coeffs):
        tol = 1e-6
        # scale x1 so g1 = 2 tol exactly: c11 x1 x2^-3 = 1 + 2 tol - c12 x2^-2
        x2 = X_OPT.x2
        x1 = (1 + 2 * tol - coeffs.c12 / x2 ** 2) * x2 ** 3 / coeffs.c11
        x = DesignVariables(x1, x2)
        assert constraint_residuals(coeffs, x, 10.0).g1 == pytest.approx(2 * tol, rel=1e-6)
        assert not is_feasible(coeffs, x, 1.0, tol=tol)

    def test_g3_normalised(self, coeffs):
        # g3 / x1 = 5e-7: infeasible at tol 1e-7, feasible at 1e-6
        x = DesignVariables(0.05, 0.005 * (1 + 5e-7))
        assert not is_feasible(coeffs, x, 10.0, tol=1e-7)
        assert is_feasible(coeffs, x, 10.0, tol=1e-6)

    def test_negative_tolerance_rejected(self, coeffs):
        with pytest.raises(ValueError):
            is_feasible(coeffs, X_OPT, 10.0, tol=-1.0)
