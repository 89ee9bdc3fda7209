import numpy as np
import pytest
from numpy.testing import assert_allclose

from lorelast.fields import FunctionField, TrigField, TrigScalar, ZeroField, random_trig_field
from lorelast.grid import Grid4, SampledField, band_limited_field, bump_field, diff, sample


def central(f, x, h=1e-5):
    cols = []
    for b in range(4):
        e = np.zeros(4)
        e[b] = h
        cols.append((f(x + e) - f(x - e)) / (2 * h))
    return np.stack(cols, axis=-1)


def test_trig_field_derivatives(rng):
    A = random_trig_field(rng, 3, 0.4, 2)
    A.G = rng.standard_normal((4, 4))
    x = rng.uniform(-2, 2, 4)
    assert_allclose(A.jacobian(x), central(A, x), atol=1e-8)
    assert_allclose(A.hessian(x), central(A.jacobian, x), atol=1e-8)


def test_field_arithmetic(rng):
    A, B = random_trig_field(rng), random_trig_field(rng)
    x = rng.uniform(-1, 1, (5, 4))
    assert_allclose((A - 2 * B)(x), A(x) - 2 * B(x))
    assert_allclose((-A).jacobian(x), -A.jacobian(x))
    assert_allclose((A + ZeroField()).hessian(x), A.hessian(x))


def test_function_field_fallback(rng):
    A = random_trig_field(rng, 2, 0.3, 1)
    F = FunctionField(A)
    x = rng.uniform(-1, 1, 4)
    assert_allclose(F.jacobian(x), A.jacobian(x), atol=1e-9)
    assert_allclose(F.hessian(x), A.hessian(x), atol=1e-5)


def test_trig_scalar_gradient(rng):
    p = TrigScalar([0.3 - 0.2j, 1.0], [[1, 0, 2, 0], [0, 1, 0, -1]], slope=[0.1, 0, 0, 0.2], const=3)
    y = rng.uniform(-2, 2, 4)
    assert_allclose(p.gradient(y), central(p, y), atol=1e-9)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid4.cube(7)
    with pytest.raises(ValueError):
        Grid4((8, 8, 8), (1, 1, 1))


def test_spectral_derivative_is_exact():
    grid = Grid4((8, 8, 8, 8), (2 * np.pi, 2 * np.pi, 2 * np.pi, np.pi))
    x = grid.points()
    f = np.sin(2 * x[..., 0]) * np.cos(2 * x[..., 3])
    assert_allclose(diff(f, 0, grid, "spectral"), 2 * np.cos(2 * x[..., 0]) * np.cos(2 * x[..., 3]), atol=1e-13)
    assert_allclose(diff(f, 3, grid, "spectral"), -2 * np.sin(2 * x[..., 0]) * np.sin(2 * x[..., 3]), atol=1e-13)
    with pytest.raises(ValueError):
        diff(f, 0, grid, "fd2")


def test_fd4_is_fourth_order():
    errs = []
    for n in (16, 32):
        grid = Grid4((n, 8, 8, 8), (2 * np.pi,) * 4)
        x = grid.points()
        errs.append(np.abs(diff(np.sin(x[..., 0]), 0, grid) - np.cos(x[..., 0])).max())
    assert np.log2(errs[0] / errs[1]) == pytest.approx(4, abs=0.1)


def test_secular_part_gradient():
    grid = Grid4.cube(8)
    x = grid.points()
    ell = np.array([0, 0, 0, 1.0])
    P = np.cos(x[..., 2])
    F = SampledField(grid, np.zeros(grid.shape), [(ell, P)])
    assert not F.is_periodic
    assert_allclose(F.values(), x[..., 3] * P)
    g = F.gradient("spectral").values()
    assert_allclose(g[..., 3], P, atol=1e-13)
    assert_allclose(g[..., 2], -x[..., 3] * np.sin(x[..., 2]), atol=1e-12)
    assert len((F + F).simplify().secular) == 1


def test_band_limited_and_bump(rng):
    grid = Grid4.cube(8)
    f = band_limited_field(grid, rng, (4,), 1, 0.5)
    assert f.sup_norm() == pytest.approx(0.5)
    assert_allclose(f.gradient("spectral").values(), f.gradient("fd4").values(), atol=0.05)
    b = bump_field(grid, np.zeros(4), [1.0, 0, 0, 0])
    assert b.values()[0, 0, 0, 0, 0] == pytest.approx(1.0)
    s = sample(grid, lambda x: x[..., 0])
    assert s.tensor_shape == ()
