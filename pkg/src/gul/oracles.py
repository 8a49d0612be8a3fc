"""Independent numerical oracles used by the acceptance suite and tests.

These deliberately avoid the closed-form paths they check: the Fock inner
product is integrated directly against the Gaussian weight over a disk,
and L2 norms of Hermite expansions are integrated on the real line.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import fock
from .fock import FockFunction
from .quad import adaptive_trapezoid


def fock_inner_quadrature(F: FockFunction, G: FockFunction,
                          radius: float = None, n_radial: int = 400,
                          n_angular: int = 512) -> complex:
    """int_C F(z) conj(G(z)) e^{-pi |z|^2} dA over a disk large enough that
    the discarded tail is negligible for finite-type atoms.

    Gauss-Legendre in r, periodic trapezoid in the angle (both spectrally
    accurate for these analytic integrands).
    """
    rate = max(
        [abs(a.expo) for a in F.atoms + G.atoms] or [0.0]
    )
    deg = max([a.power for a in F.atoms + G.atoms] or [0])
    if radius is None:
        radius = rate / math.pi + 5.0 + 0.5 * math.sqrt(deg + 1.0)
        n_radial = max(n_radial, int(60 * radius))
        n_angular = max(n_angular, 1 << int(math.ceil(math.log2(16 * (rate * radius + deg + 4)))))

    nodes, weights = leggauss(n_radial)
    r = 0.5 * radius * (nodes + 1.0)
    wr = 0.5 * radius * weights
    phi = 2.0 * math.pi * np.arange(n_angular) / n_angular
    z = r[:, None] * np.exp(1j * phi)[None, :]
    vals = fock.evaluate(F, z) * np.conj(fock.evaluate(G, z))
    vals *= np.exp(-math.pi * r[:, None] ** 2) * r[:, None]
    ang = vals.mean(axis=1) * 2.0 * math.pi
    return complex(np.sum(wr * ang))


def l2_norm_quadrature(sample, half_width: float, tol: float = 1e-9) -> float:
    """sqrt(int |f(t)|^2 dt) over [-half_width, half_width] by adaptive trapezoid."""

    def integrand(t):
        v = sample(t)
        return (v * np.conj(v)).real

    val = adaptive_trapezoid(integrand, -half_width, half_width, tol)
    return math.sqrt(max(0.0, float(np.real(val))))
