import numpy as np
import pytest

from fracgreen.quadrature import DEFAULT_RULE, QuadratureError, QuadratureRule, gauss_legendre, integrate, rule_points


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_gauss_legendre_exact_to_degree(n):
    x, w = gauss_legendre(n)
    for deg in range(2 * n):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(w @ x**deg - exact) <= 1e-13


def test_gauss_legendre_returns_copies():
    x, _ = gauss_legendre(4)
    x[0] = 99.0
    assert gauss_legendre(4)[0][0] != 99.0


def test_inverse_sqrt_endpoint_singularity():
    assert abs(integrate(lambda x: x**-0.5) - 2.0) <= 1e-9


# Away from 0 the finest panel is bounded by float spacing, and the integral of
# |x - t|^(-1/2) over one ulp near t is already ~1e-8, so 1e-7 is the floor here.
def test_right_endpoint_singularity():
    assert integrate(lambda x: (1 - x) ** -0.5) == pytest.approx(2.0, abs=1e-7)


def test_milder_right_endpoint_singularity():
    assert integrate(lambda x: (1 - x) ** -0.3) == pytest.approx(1 / 0.7, abs=1e-10)


def test_kink_at_breakpoint():
    assert integrate(lambda x: np.abs(x - 0.3), breakpoints=[0.3]) == pytest.approx(0.29, abs=1e-14)


def test_interior_singularity_with_breakpoint():
    val = integrate(lambda x: np.abs(x - 0.4) ** -0.5, breakpoints=[0.4])
    assert val == pytest.approx(2 * np.sqrt(0.4) + 2 * np.sqrt(0.6), abs=1e-7)


def test_nodes_stay_inside_open_interval():
    x, w = rule_points(DEFAULT_RULE, [0.25, 0.7])
    assert x.min() > 0.0 and x.max() < 1.0
    assert not np.any(np.isin(x, [0.25, 0.7]))
    assert np.all(np.diff(x) > 0) and np.all(w > 0)
    assert w.sum() == pytest.approx(1.0, abs=1e-14)


def test_error_decreases_with_depth():
    errs = [abs(integrate(lambda x: x**-0.5, QuadratureRule(grading_depth=d)) - 2.0) for d in (2, 5, 10, 20)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_non_finite_integrand_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.where(x > 0.5, np.nan, 1.0))


@pytest.mark.parametrize("bad", [[0.0], [1.0], [1.5]])
def test_breakpoints_must_be_interior(bad):
    with pytest.raises(ValueError):
        integrate(lambda x: x, breakpoints=bad)


@pytest.mark.parametrize("kwargs", [{"gl_order": 1}, {"grading_ratio": 1.0}, {"grading_depth": 0}, {"abs_tol": 0.0}])
def test_rule_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureRule(**kwargs)


def test_integrate_is_deterministic():
    f = lambda x: np.sin(7 * x) * x**-0.3
    assert integrate(f, breakpoints=[0.37]) == integrate(f, breakpoints=[0.37])
