"""Periodic 4-torus grids, discrete derivatives and sampled fields.

A :class:`SampledField` stores ``periodic + sum_j (ell_j . x) P_j`` where the
periodic parts live on the grid and ell_j are constant covectors.  The
secular terms let us represent fields that grow linearly, such as the
massive solution's (p.x) v or a Lorenz-gauge potential sourced by a
gradient current, while every derivative stays exact up to the chosen
difference scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

METHODS = ("fd4", "spectral")


@dataclass(frozen=True)
class Grid4:
    shape: tuple
    periods: tuple

    def __post_init__(self):
        shape = tuple(int(n) for n in self.shape)
        periods = tuple(float(L) for L in self.periods)
        if len(shape) != 4 or len(periods) != 4:
            raise ValueError("Grid4 needs four sizes and four periods")
        if any(n < 8 or n % 2 for n in shape):
            raise ValueError(f"grid sizes must be even and >= 8, got {shape}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "periods", periods)

    @classmethod
    def cube(cls, n, L=2 * np.pi):
        return cls((n,) * 4, (L,) * 4)

    @property
    def spacing(self):
        return np.array(self.periods) / np.array(self.shape)

    @property
    def cell_volume(self):
        return float(np.prod(self.spacing))

    def points(self):
        axes = [np.arange(n) * h for n, h in zip(self.shape, self.spacing)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    def wavenumbers(self, axis):
        n = self.shape[axis]
        return 2 * np.pi * np.fft.fftfreq(n, d=self.spacing[axis])

    def integrate(self, f):
        """Rectangle rule over the four grid axes."""
        return np.sum(f, axis=(0, 1, 2, 3)) * self.cell_volume


def diff(f, axis, grid, method="fd4"):
    """Periodic derivative along grid axis ``axis`` of an array with leading grid axes."""
    h = grid.spacing[axis]
    if method == "fd4":
        return (-np.roll(f, -2, axis) + 8 * np.roll(f, -1, axis)
                - 8 * np.roll(f, 1, axis) + np.roll(f, 2, axis)) / (12 * h)
    if method == "spectral":
        k = 1j * grid.wavenumbers(axis)
        k[grid.shape[axis] // 2] = 0.0     # odd derivative: drop the Nyquist mode
        shape = [1] * f.ndim
        shape[axis] = -1
        fh = np.fft.fft(f, axis=axis)
        out = np.fft.ifft(fh * k.reshape(shape), axis=axis)
        return out.real if np.isrealobj(f) else out
    raise ValueError(f"unknown derivative method {method!r}; choose from {METHODS}")


def gradient(f, grid, method="fd4"):
    """Stack of the four derivatives as a new trailing axis."""
    return np.stack([diff(f, mu, grid, method) for mu in range(4)], axis=-1)


class SampledField:
    """Tensor field on a grid, possibly with secular (linearly growing) terms."""

    def __init__(self, grid, periodic, secular=()):
        self.grid = grid
        self.periodic = np.asarray(periodic)
        if self.periodic.shape[:4] != grid.shape:
            raise ValueError("periodic part must have the grid shape as leading axes")
        self.secular = [(np.asarray(ell, float), np.asarray(P)) for ell, P in secular]

    @property
    def tensor_shape(self):
        return self.periodic.shape[4:]

    @property
    def is_periodic(self):
        return not self.secular

    def values(self):
        x = self.grid.points()
        out = self.periodic.copy() if not self.secular else self.periodic.astype(
            np.result_type(self.periodic, *[P for _, P in self.secular]))
        for ell, P in self.secular:
            lin = (x @ ell).reshape(self.grid.shape + (1,) * len(self.tensor_shape))
            out = out + lin * P
        return out

    def gradient(self, method="fd4"):
        per = gradient(self.periodic, self.grid, method)
        sec = []
        for ell, P in self.secular:
            per = per + P[..., None] * ell
            sec.append((ell, gradient(P, self.grid, method)))
        return SampledField(self.grid, per, sec)

    def apply(self, fn):
        """Apply a pointwise linear map to every part."""
        return SampledField(self.grid, fn(self.periodic), [(ell, fn(P)) for ell, P in self.secular])

    def __add__(self, other):
        return SampledField(self.grid, self.periodic + other.periodic, self.secular + other.secular)

    def __sub__(self, other):
        return self + other * -1.0

    def __mul__(self, s):
        return self.apply(lambda P: s * P)

    __rmul__ = __mul__

    def simplify(self):
        """Merge secular parts sharing the same covector."""
        merged = {}
        for ell, P in self.secular:
            key = tuple(np.round(ell, 15))
            merged[key] = merged.get(key, 0) + P
        return SampledField(self.grid, self.periodic, [(np.array(k), P) for k, P in merged.items()])

    def sup_norm(self):
        return float(np.max(np.abs(self.values()), initial=0.0))


def sample(grid, fun):
    """Periodic sampled field from a callable of the point array."""
    return SampledField(grid, fun(grid.points()))


def band_limited_field(grid, rng, tensor_shape=(4,), max_mode=1, amplitude=1.0):
    """Random real periodic field with Fourier modes |n_i| <= max_mode."""
    spec = np.zeros(grid.shape + tuple(tensor_shape), complex)
    idx = [np.r_[0:max_mode + 1, n - max_mode:n] for n in grid.shape]
    sub = np.ix_(*idx)
    shape = tuple(len(i) for i in idx) + tuple(tensor_shape)
    spec[sub] = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    f = np.fft.ifftn(spec, axes=(0, 1, 2, 3)).real
    f *= amplitude / np.max(np.abs(f))
    return SampledField(grid, f)


def bump_field(grid, center, amplitude, order=2):
    """Smooth localized trigonometric bump: amplitude * prod ((1 + cos)/2)^order."""
    x = grid.points()
    w = np.ones(grid.shape)
    for i in range(4):
        w *= ((1 + np.cos(2 * np.pi * (x[..., i] - center[i]) / grid.periods[i])) / 2) ** order
    return SampledField(grid, w[..., None] * np.asarray(amplitude, float))
