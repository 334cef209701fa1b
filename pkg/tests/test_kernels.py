import numpy as np
import pytest

from fracgreen import _accel
from fracgreen.kernels import KernelKind, KernelSpec, adjoint, eval_kernel, kernel_grid, kernel_matrix

from oracles import brownian_bridge, caputo_kernel, rl_left_kernel

ALPHAS = (1.1, 1.3, 1.5, 1.75, 1.9)
FRACTIONAL = (KernelKind.RL_LEFT, KernelKind.RL_RIGHT, KernelKind.CAPUTO)


def spec(kind, alpha=2.0, transposed=False):
    return KernelSpec(kind, alpha, transposed)


def test_bb_ignores_alpha():
    assert KernelSpec(KernelKind.BROWNIAN_BRIDGE, 1.3).alpha == 2.0


def test_rejects_bad_order():
    with pytest.raises(ValueError):
        KernelSpec(KernelKind.RL_LEFT, 0.8)


@pytest.mark.parametrize("kind", FRACTIONAL)
def test_alpha_two_reduces_to_brownian_bridge(kind):
    bb = kernel_grid(spec(KernelKind.BROWNIAN_BRIDGE), 101, 101)
    np.testing.assert_allclose(kernel_grid(spec(kind, 2.0), 101, 101), bb, rtol=0, atol=1e-12)


def test_brownian_bridge_closed_form():
    g = np.linspace(0, 1, 23)
    expected = np.array([[brownian_bridge(x, z) for z in g] for x in g])
    np.testing.assert_allclose(kernel_grid(spec(KernelKind.BROWNIAN_BRIDGE), 23, 23), expected, atol=1e-15)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_rl_left_matches_scalar_oracle(alpha):
    g = np.linspace(0, 1, 41)
    expected = np.array([[rl_left_kernel(alpha, x, z) for z in g] for x in g])
    np.testing.assert_allclose(kernel_grid(spec(KernelKind.RL_LEFT, alpha), 41, 41), expected, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_caputo_matches_scalar_oracle(alpha):
    g = np.linspace(0, 1, 41)
    expected = np.array([[caputo_kernel(alpha, x, z) for z in g] for x in g])
    np.testing.assert_allclose(kernel_grid(spec(KernelKind.CAPUTO, alpha), 41, 41), expected, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("kind", (KernelKind.BROWNIAN_BRIDGE,) + FRACTIONAL)
@pytest.mark.parametrize("alpha", ALPHAS)
def test_vanishes_on_boundary(kind, alpha):
    g = kernel_grid(spec(kind, alpha), 101, 101)
    assert np.abs(g[[0, -1], :]).max() <= 1e-14
    if kind is not KernelKind.CAPUTO:
        assert np.abs(g[:, [0, -1]]).max() <= 1e-14


@pytest.mark.parametrize("kind", (KernelKind.RL_LEFT, KernelKind.RL_RIGHT))
@pytest.mark.parametrize("alpha", ALPHAS)
def test_nonnegative(kind, alpha):
    assert kernel_grid(spec(kind, alpha), 201, 201).min() >= 0.0


@pytest.mark.parametrize("kind", FRACTIONAL)
@pytest.mark.parametrize("alpha", ALPHAS)
def test_continuous_across_diagonal(kind, alpha):
    x = np.linspace(0.05, 0.95, 19)
    # Hoelder continuous with exponent alpha - 1 across z = x
    eps = 1e-12
    below = eval_kernel(spec(kind, alpha), x, x - eps)
    above = eval_kernel(spec(kind, alpha), x, x + eps)
    assert np.abs(below - above).max() <= 2.0 * eps ** (alpha - 1.0)
    np.testing.assert_allclose(eval_kernel(spec(kind, alpha), x, x), above, atol=2.0 * eps ** (alpha - 1.0))


@pytest.mark.parametrize("alpha", (1.3, 1.5, 1.75))
def test_fractional_kernels_not_symmetric(alpha):
    g = kernel_grid(spec(KernelKind.RL_LEFT, alpha), 51, 51)
    assert np.abs(g - g.T).max() > 1e-3


@pytest.mark.parametrize("alpha", ALPHAS)
def test_right_kernel_is_reflection_and_transpose(alpha):
    g = np.linspace(0, 1, 61)
    left = kernel_matrix(spec(KernelKind.RL_LEFT, alpha), g, g)
    right = kernel_matrix(spec(KernelKind.RL_RIGHT, alpha), g, g)
    np.testing.assert_allclose(right, left[::-1, ::-1], atol=1e-15)
    np.testing.assert_allclose(right, left.T, atol=1e-13)


@pytest.mark.parametrize("alpha", (1.3, 1.8))
def test_adjoint_swaps_arguments(alpha):
    x = np.linspace(0, 1, 17)
    for kind in (KernelKind.BROWNIAN_BRIDGE,) + FRACTIONAL:
        k = spec(kind, alpha)
        np.testing.assert_allclose(kernel_matrix(adjoint(k), x, x), kernel_matrix(k, x, x).T, atol=1e-13)
        assert adjoint(adjoint(k)) == k


def test_eval_kernel_broadcasts_and_scalar():
    k = spec(KernelKind.RL_LEFT, 1.5)
    assert np.ndim(eval_kernel(k, 0.3, 0.6)) == 0
    assert eval_kernel(k, np.zeros((3, 1)) + 0.5, np.linspace(0, 1, 4)).shape == (3, 4)


def test_grid_needs_two_points():
    with pytest.raises(ValueError):
        kernel_grid(spec(KernelKind.BROWNIAN_BRIDGE), 1, 5)


@pytest.mark.skipif(not _accel.NUMBA_AVAILABLE, reason="numba not installed")
@pytest.mark.parametrize("code", range(5))
def test_numba_and_numpy_backends_agree(code):
    rng = np.random.default_rng(code)
    x = np.concatenate(([0.0, 1.0], rng.random(60)))
    z = np.concatenate(([0.0, 1.0], rng.random(40), x[:5]))
    for alpha in (1.2, 1.5, 2.0):
        np.testing.assert_allclose(
            _accel.kernel_outer_nb(code, alpha, x, z), _accel.kernel_outer_np(code, alpha, x, z), rtol=1e-13, atol=1e-15
        )
