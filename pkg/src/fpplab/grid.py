"""Periodic lattice, transforms, radial multipliers, and discrete norms.

Conventions, fixed once for the whole package:

* wavenumbers per axis are k_j = 2 pi j / L for j in {-N/2, ..., N/2 - 1},
  stored in FFT order;
* spectral coefficients are plain DFT sums, F_k = sum_x f(x) exp(-i k x),
  so the discrete Parseval identity reads

      sum_j |f(x_j)|^2 h^n  =  (L^n / N^(2n)) sum_k |F_k|^2;

* a continuum radial profile uhat0(r) is planted on the lattice through
  ``field_from_spectral_profile`` so that box norms approximate the
  whole-space norms computed by the quadrature oracle (both sides use the
  unitary-in-energy normalization; see that function's docstring).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import cutoff_chi


@dataclass(frozen=True)
class GridSpec:
    """Cubic periodic lattice: `points_per_dim` nodes per axis on [0, box_length)^n."""

    n: int
    points_per_dim: int
    box_length: float

    def __post_init__(self):
        if float(self.n) != int(self.n) or not 1 <= int(self.n) <= 3:
            raise ValueError(f"dimension n must be an integer in 1..3, got {self.n}")
        N = self.points_per_dim
        if float(N) != int(N) or int(N) < 4 or int(N) % 2 != 0:
            raise ValueError(f"points_per_dim must be an even integer >= 4, got {N}")
        if not self.box_length > 0:
            raise ValueError(f"box_length must be positive, got {self.box_length}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "points_per_dim", int(self.points_per_dim))
        object.__setattr__(self, "box_length", float(self.box_length))

    @property
    def spacing(self) -> float:
        return self.box_length / self.points_per_dim

    @property
    def shape(self) -> tuple:
        return (self.points_per_dim,) * self.n

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.n


def make_grid(n: int, N: int, L: float) -> GridSpec:
    return GridSpec(n=n, points_per_dim=N, box_length=L)


@lru_cache(maxsize=64)
def axis_wavenumbers(grid: GridSpec) -> np.ndarray:
    """1-D wavenumber axis 2 pi j / L in FFT order, read-only."""
    N, L = grid.points_per_dim, grid.box_length
    k = 2.0 * np.pi * np.fft.fftfreq(N, d=L / N)
    k.setflags(write=False)
    return k


@lru_cache(maxsize=64)
def wavenumber_magnitude(grid: GridSpec) -> np.ndarray:
    """|k| over the full lattice, shape grid.shape, read-only."""
    k = axis_wavenumbers(grid)
    axes = np.meshgrid(*([k] * grid.n), indexing="ij")
    mag = np.sqrt(sum(a * a for a in axes))
    mag.setflags(write=False)
    return mag


@lru_cache(maxsize=64)
def physical_nodes(grid: GridSpec) -> np.ndarray:
    """1-D physical axis x_j = j h, read-only."""
    x = grid.spacing * np.arange(grid.points_per_dim, dtype=float)
    x.setflags(write=False)
    return x


@dataclass(frozen=True)
class SpectralField:
    """A field stored as plain-DFT spectral coefficients over the lattice.

    Treat instances as immutable values: operations return new fields.
    """

    grid: GridSpec
    coefficients: np.ndarray

    def __post_init__(self):
        if self.coefficients.shape != self.grid.shape:
            raise ValueError(
                f"coefficient shape {self.coefficients.shape} does not match "
                f"grid shape {self.grid.shape}"
            )

    def with_coefficients(self, coefficients: np.ndarray) -> "SpectralField":
        return SpectralField(self.grid, coefficients)


def to_spectral(grid: GridSpec, samples: np.ndarray) -> SpectralField:
    """Forward transform of physical samples (shape must match the grid)."""
    samples = np.asarray(samples)
    if samples.shape != grid.shape:
        raise ValueError(f"sample shape {samples.shape} does not match grid shape {grid.shape}")
    return SpectralField(grid, np.fft.fftn(samples))


def to_physical(field: SpectralField) -> np.ndarray:
    """Inverse transform; complex array (imaginary part ~ roundoff for real data)."""
    return np.fft.ifftn(field.coefficients)


def apply_radial_multiplier(field: SpectralField, g) -> SpectralField:
    """Multiply coefficients by g(|k|); g must accept an ndarray of radii."""
    mag = wavenumber_magnitude(field.grid)
    return field.with_coefficients(field.coefficients * g(mag))


def spectral_weighted_norm(field: SpectralField, weights: np.ndarray) -> float:
    """sqrt( (L^n / N^(2n)) sum_k |w_k F_k|^2 ) for a precomputed weight array."""
    g = field.grid
    scale = math.sqrt(g.box_length ** g.n) / g.points_per_dim ** g.n
    return scale * float(np.linalg.norm(weights * field.coefficients))


def sobolev_seminorm(field: SpectralField, l: float) -> float:
    """Homogeneous seminorm ||Lam^l u||_L2 with spectral weight |k|^l.

    l = 0 reduces exactly to the L2 norm; the zero mode drops out for l > 0.
    """
    if l < 0:
        raise ValueError(f"derivative order l must be nonnegative, got {l}")
    mag = wavenumber_magnitude(field.grid)
    return spectral_weighted_norm(field, mag ** float(l))


def sobolev_norm(field: SpectralField, s: float) -> float:
    """Inhomogeneous norm with spectral weight (1 + |k|^2)^(s/2)."""
    mag = wavenumber_magnitude(field.grid)
    return spectral_weighted_norm(field, (1.0 + mag * mag) ** (0.5 * float(s)))


def lp_norm(field: SpectralField, p) -> float:
    """Physical-space norm: sum |u(x_j)|^p h^n (max over nodes for p = inf)."""
    u = np.abs(to_physical(field))
    g = field.grid
    if p == 1:
        return float(np.sum(u)) * g.cell_volume
    if p == 2:
        return float(np.linalg.norm(u)) * math.sqrt(g.cell_volume)
    if p in (np.inf, float("inf"), "inf"):
        return float(np.max(u))
    raise ValueError(f"unsupported p={p!r}; p must be 1, 2, or inf")


def split_low_high(field: SpectralField, R: float) -> tuple:
    """Split into (low, high) parts with the smooth cutoff at radius R.

    low has multiplier chi(|k|), high has 1 - chi(|k|); their sum restores
    the field to machine precision because the weights sum to 1 exactly.
    """
    chi = cutoff_chi(wavenumber_magnitude(field.grid), R)
    low = field.with_coefficients(field.coefficients * chi)
    high = field.with_coefficients(field.coefficients * (1.0 - chi))
    return low, high


def _reverse_indices(N: int) -> np.ndarray:
    return (-np.arange(N)) % N


def reflected_conjugate(field: SpectralField) -> np.ndarray:
    """conj(F(-k)), the array a real-data field must equal."""
    N = field.grid.points_per_dim
    idx = _reverse_indices(N)
    return np.conj(field.coefficients[np.ix_(*([idx] * field.grid.n))])


def hermitian_symmetrize(field: SpectralField) -> SpectralField:
    """Project onto the real-data subspace by conjugate averaging."""
    return field.with_coefficients(0.5 * (field.coefficients + reflected_conjugate(field)))


def hermitian_defect(field: SpectralField) -> float:
    """Max deviation from conjugate symmetry, relative to the largest mode."""
    top = float(np.max(np.abs(field.coefficients)))
    if top == 0.0:
        return 0.0
    return float(np.max(np.abs(field.coefficients - reflected_conjugate(field)))) / top


def field_from_spectral_profile(grid: GridSpec, profile) -> SpectralField:
    """Plant a continuum radial spectral profile uhat0(r) on the lattice.

    The Fourier-series coefficient at lattice wavenumber k is set to
    uhat0(|k|) (2 pi)^(n/2) / L^n, which makes every box norm a lattice
    Riemann sum of the corresponding whole-space spectral integral: the
    grid then reproduces the quadrature oracle's norms up to exponentially
    small periodization error (while the profile is resolved by the box).
    """
    mag = wavenumber_magnitude(grid)
    vals = np.asarray(profile(mag), dtype=complex)
    scale = (2.0 * np.pi) ** (grid.n / 2.0) * (grid.points_per_dim / grid.box_length) ** grid.n
    return SpectralField(grid, vals * scale)


def _pad_slabs(N: int, M: int):
    half = N // 2
    return [(slice(0, half), slice(0, half)), (slice(half, N), slice(M - half, M))]


def padded_physical(field: SpectralField, pad_factor: float) -> tuple:
    """Physical samples of the field on a zero-padded grid of M >= pad_factor*N points.

    Returns (real samples on the fine grid, M).  Used for alias-free
    pointwise products: a product of degree d is exact on the original
    lattice when pad_factor >= (d + 1) / 2.
    """
    g = field.grid
    N = g.points_per_dim
    M = int(math.ceil(N * pad_factor))
    M += M % 2
    if M <= N:
        return np.real(to_physical(field)), N
    padded = np.zeros((M,) * g.n, dtype=complex)
    slabs = _pad_slabs(N, M)
    for combo in itertools.product(slabs, repeat=g.n):
        src = tuple(c[0] for c in combo)
        dst = tuple(c[1] for c in combo)
        padded[dst] = field.coefficients[src]
    up = np.fft.ifftn(padded) * (M / N) ** g.n
    return np.real(up), M


def pointwise_power(field: SpectralField, power: int, pad_factor: float) -> SpectralField:
    """Spectral image of u^power, computed alias-free on a zero-padded grid.

    The input is treated as real data (real part taken after the inverse
    transform); modes beyond the original lattice are discarded, which is
    exact for the lattice modes themselves when pad_factor >= (power+1)/2.
    """
    g = field.grid
    N = g.points_per_dim
    up, M = padded_physical(field, pad_factor)
    with np.errstate(over="ignore", invalid="ignore"):
        w = np.fft.fftn(up ** power)
        if M == N:
            return field.with_coefficients(w)
        out = np.empty((N,) * g.n, dtype=complex)
        slabs = _pad_slabs(N, M)
        for combo in itertools.product(slabs, repeat=g.n):
            src = tuple(c[0] for c in combo)
            dst = tuple(c[1] for c in combo)
            out[src] = w[dst]
        return field.with_coefficients(out * (N / M) ** g.n)
