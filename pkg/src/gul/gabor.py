"""Gabor-transform evaluation, sampling-set geometry, spectrogram grids.

Public sign convention:

    Gf(x, w) = exp(-i pi x w) * Bf(x - i w) * exp(-pi (x^2 + w^2) / 2)

where Bf is the Bargmann image. Some references state the linking formula
with w reflected (Gf(x, -w) against Bf(x + i w)); the two are the same
identity and magnitudes are unaffected. The fast path evaluates the right
side on Fock images; `gabor_quadrature` integrates the defining
time-domain transform directly and serves as the independent oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from . import fock
from .fock import FockFunction
from .quad import adaptive_trapezoid
from .signals import ClosedFormSignal, _window_for

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# sampling sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineFamily:
    """Equidistant parallel lines rotate(theta)(R x aZ) + lambda0 in the
    time-frequency plane, identified with {e^{i theta}(x + i a n) + lambda0}."""

    a: float
    theta: float = 0.0
    lambda0: complex = 0.0
    n_range: Tuple[int, int] = (-20, 20)

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("line spacing a must be positive")
        if self.n_range[0] > self.n_range[1]:
            raise ValueError("empty line index range")

    def point(self, x: float, n: int) -> complex:
        return cmath.exp(1j * self.theta) * complex(x, self.a * n) + complex(self.lambda0)


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice L Z^k given by a 2 x k basis with independent columns."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != 2 or b.shape[1] not in (1, 2):
            raise ValueError("basis must be a 2 x k matrix with k in {1, 2}")
        if np.linalg.matrix_rank(b, tol=1e-12) != b.shape[1]:
            raise ValueError("basis columns must be linearly independent")
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return self.basis.shape[1]


def _x_values(x_range: Tuple[float, float], x_step: float) -> np.ndarray:
    x0, x1 = x_range
    if x_step <= 0:
        raise ValueError("x_step must be positive")
    if x1 < x0:
        raise ValueError("empty x range")
    count = int(math.floor((x1 - x0) / x_step + 1e-9)) + 1
    return x0 + x_step * np.arange(count)


def sample_line_family(fam: LineFamily, x_range: Tuple[float, float] = (-5.0, 5.0),
                       x_step: float = 0.1) -> List[Tuple[complex, Tuple[float, float]]]:
    """Deterministic enumeration of window samples on each materialized line.

    Each entry is (z, (x, w)) where (x, w) is the time-frequency point and
    z = x - i w is the matching Fock-side argument for `gabor_eval`.
    """
    xs = _x_values(x_range, x_step)
    rot = cmath.exp(1j * fam.theta)
    out = []
    for n in range(fam.n_range[0], fam.n_range[1] + 1):
        for x in xs:
            p = rot * complex(x, fam.a * n) + complex(fam.lambda0)
            out.append((p.conjugate(), (p.real, p.imag)))
    return out


def sample_arrays(fam: LineFamily, x_range=(-5.0, 5.0), x_step=0.1):
    """Vectorized sampling: arrays (z, x, w) flattened over (line, x)."""
    xs = _x_values(x_range, x_step)
    ns = np.arange(fam.n_range[0], fam.n_range[1] + 1)
    rot = cmath.exp(1j * fam.theta)
    p = rot * (xs[None, :] + 1j * fam.a * ns[:, None]) + complex(fam.lambda0)
    p = p.ravel()
    return np.conj(p), p.real, p.imag


def _gauss_reduce(v1: np.ndarray, v2: np.ndarray):
    """Lagrange/Gauss reduction of a rank-2 basis; returns (shortest, other)."""
    v1 = v1.astype(np.float64).copy()
    v2 = v2.astype(np.float64).copy()
    if v1 @ v1 > v2 @ v2:
        v1, v2 = v2, v1
    for _ in range(10000):
        mu = round(float(v1 @ v2) / float(v1 @ v1))
        v2 = v2 - mu * v1
        if v2 @ v2 >= v1 @ v1:
            return v1, v2
        v1, v2 = v2, v1
    raise RuntimeError("basis reduction did not terminate")


def lattice_embed(L: LatticeSpec, n_range: Tuple[int, int] = (-20, 20)) -> LineFamily:
    """Embed the lattice into equidistant parallel lines through its points.

    Line direction is the Lagrange-reduced shortest basis vector (so the
    spacing |det L| / |v1| is maximal among the two obvious choices); every
    lattice point then lies on the line with index equal to its coefficient
    on the second reduced vector.
    """
    b = L.basis
    if L.rank == 1:
        v = b[:, 0]
        theta = math.atan2(v[1], v[0])
        return LineFamily(a=float(np.linalg.norm(v)), theta=theta, lambda0=0.0, n_range=(0, 0))
    v1, v2 = _gauss_reduce(b[:, 0], b[:, 1])
    det = abs(float(v1[0] * v2[1] - v1[1] * v2[0]))
    theta = math.atan2(float(v1[1]), float(v1[0]))
    spacing = det / float(np.linalg.norm(v1))
    return LineFamily(a=spacing, theta=theta, lambda0=0.0, n_range=n_range)


def line_residual(fam: LineFamily, points: np.ndarray) -> np.ndarray:
    """Distance from each time-frequency point (complex) to the nearest line."""
    p = (np.asarray(points, dtype=np.complex128) - complex(fam.lambda0)) * cmath.exp(-1j * fam.theta)
    m = p.imag / fam.a
    return np.abs(m - np.round(m)) * fam.a


# ---------------------------------------------------------------------------
# Gabor evaluation
# ---------------------------------------------------------------------------

def gabor_eval(F: FockFunction, x, w):
    """Gf(x, w) from the Fock image: e^{-i pi x w} F(x - i w) e^{-pi(x^2+w^2)/2}.

    Evaluated in overflow-safe form; the magnitude equals
    |F(x - i w)| e^{-pi(x^2+w^2)/2} and is bounded by the Fock norm of F.
    """
    x_arr = np.asarray(x, dtype=np.float64)
    w_arr = np.asarray(w, dtype=np.float64)
    scalar = x_arr.ndim == 0 and w_arr.ndim == 0
    x_b, w_b = np.broadcast_arrays(np.atleast_1d(x_arr), np.atleast_1d(w_arr))
    z = x_b - 1j * w_b
    vals = fock.evaluate_weighted(F, z) * np.exp(-1j * math.pi * x_b * w_b)
    return complex(vals.ravel()[0]) if scalar else vals


def gabor_quadrature_batch(f: ClosedFormSignal, x: float, omegas, tol: float) -> np.ndarray:
    """Gf(x, w) for one x and a batch of w by direct time-domain integration."""
    if tol < 1e-12:
        raise ValueError("tol must be at least 1e-12")
    omegas = np.atleast_1d(np.asarray(omegas, dtype=np.float64))
    lo, hi = _window_for(f, x)

    def sample(t):
        base = (2.0 ** 0.25) * f(t) * np.exp(-math.pi * (t - x) ** 2)
        return base[None, :] * np.exp(-1j * _TWO_PI * np.outer(omegas, t))

    h0 = min(0.25, 0.5 / (1.0 + float(np.max(np.abs(omegas)))))
    return np.asarray(adaptive_trapezoid(sample, lo, hi, tol, h0=h0))


def gabor_quadrature(f: ClosedFormSignal, x: float, w: float, tol: float) -> complex:
    """Direct integral 2**0.25 int f(t) e^{-pi(t-x)^2} e^{-2 pi i t w} dt.

    Independent oracle for `gabor_eval` (certified absolute accuracy tol).
    """
    return complex(gabor_quadrature_batch(f, float(x), [float(w)], tol)[0])


# ---------------------------------------------------------------------------
# spectrogram grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    x_step: float
    w_min: float
    w_max: float
    w_step: float

    def axes(self):
        return _x_values((self.x_min, self.x_max), self.x_step), _x_values(
            (self.w_min, self.w_max), self.w_step
        )


@dataclass(frozen=True)
class SpectrogramGrid:
    """Rectangular table of Gabor magnitudes; values[i, j] sits at
    (x_min + i x_step, w_min + j w_step)."""

    x_min: float
    x_max: float
    x_step: float
    w_min: float
    w_max: float
    w_step: float
    values: np.ndarray

    @property
    def x_axis(self) -> np.ndarray:
        return self.x_min + self.x_step * np.arange(self.values.shape[0])

    @property
    def w_axis(self) -> np.ndarray:
        return self.w_min + self.w_step * np.arange(self.values.shape[1])


def spectrogram_grid(F: FockFunction, grid: GridSpec, cell_cap: int = 10_000_000) -> SpectrogramGrid:
    """Tabulate |Gf| over the rectangle, row-major with x as the outer axis."""
    xs, ws = grid.axes()
    if xs.size * ws.size > cell_cap:
        raise ValueError(f"grid of {xs.size * ws.size} cells exceeds the cap {cell_cap}")
    z = xs[:, None] - 1j * ws[None, :]
    vals = np.abs(fock.evaluate_weighted(F, z))
    return SpectrogramGrid(grid.x_min, grid.x_max, grid.x_step,
                           grid.w_min, grid.w_max, grid.w_step, vals)
