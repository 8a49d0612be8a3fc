"""Exact algebra and inner-product geometry of polynomial-times-exponential
entire functions inside the Fock space over the complex plane.

The representation class is finite sums of atoms ``c * z**n * exp(b*z)``.
It is closed under addition, multiplication, argument translation and
contains every object this library manipulates: normalized monomials
``e_n(z) = (pi**n/n!)**0.5 * z**n`` (an orthonormal basis), the magnitude
multipliers ``1 ± i*delta*exp((pi*e^{i*theta}/a)(z - conj(lambda0)))`` and
all Bargmann images of the constructed signals.

Inner products are evaluated in closed form from the kernel identity
``(e^{bz}, e^{gz}) = exp(b*conj(g)/pi)`` and its derivatives; the
two-dimensional quadrature version lives in :mod:`gul.oracles` and is used
only as an independent check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import atom_sum, atom_sum_weighted

_LN_PI = math.log(math.pi)


@dataclass(frozen=True)
class FockAtom:
    """One term ``coeff * z**power * exp(expo*z)``; power >= 0, finite type."""

    coeff: complex
    power: int
    expo: complex

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("atom power must be a nonnegative integer")


def _atom_key(atom: FockAtom):
    return (atom.expo.real, atom.expo.imag, atom.power)


@dataclass(frozen=True)
class FockFunction:
    """Canonicalized finite sum of atoms.

    Atoms with equal (power, expo) are merged, zero coefficients dropped,
    and the result ordered by (Re expo, Im expo, power) so equal functions
    within the class have equal representations.
    """

    atoms: tuple

    @staticmethod
    def from_atoms(atoms: Iterable[FockAtom]) -> "FockFunction":
        merged: dict = {}
        for a in atoms:
            key = (a.power, complex(a.expo))
            merged[key] = merged.get(key, 0.0 + 0.0j) + complex(a.coeff)
        kept = [
            FockAtom(c, p, b)
            for (p, b), c in merged.items()
            if c != 0
        ]
        kept.sort(key=_atom_key)
        return FockFunction(tuple(kept))

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "FockFunction") -> "FockFunction":
        return FockFunction.from_atoms(self.atoms + other.atoms)

    def __sub__(self, other: "FockFunction") -> "FockFunction":
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, FockFunction):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def scale(self, scalar) -> "FockFunction":
        return FockFunction.from_atoms(
            FockAtom(a.coeff * scalar, a.power, a.expo) for a in self.atoms
        )

    def __call__(self, z):
        return evaluate(self, z)

    @property
    def is_zero(self) -> bool:
        return not self.atoms

    @property
    def is_polynomial(self) -> bool:
        return all(a.expo == 0 for a in self.atoms)

    def arrays(self):
        """(coeffs, powers, expos) as contiguous arrays for the kernels."""
        n = len(self.atoms)
        coeffs = np.empty(n, dtype=np.complex128)
        powers = np.empty(n, dtype=np.int64)
        expos = np.empty(n, dtype=np.complex128)
        for i, a in enumerate(self.atoms):
            coeffs[i] = a.coeff
            powers[i] = a.power
            expos[i] = a.expo
        return coeffs, powers, expos

    def isclose(self, other: "FockFunction", rtol=1e-12, atol=1e-12) -> bool:
        """Representation-level comparison with floating tolerance."""
        if len(self.atoms) != len(other.atoms):
            return self.norm_of_difference(other) <= atol
        for a, b in zip(self.atoms, other.atoms):
            if a.power != b.power:
                return False
            scale = max(abs(a.coeff), abs(b.coeff), abs(a.expo), abs(b.expo))
            if abs(a.coeff - b.coeff) > atol + rtol * scale:
                return False
            if abs(a.expo - b.expo) > atol + rtol * scale:
                return False
        return True

    def norm_of_difference(self, other: "FockFunction") -> float:
        return norm(self - other)


ZERO = FockFunction(())
ONE = FockFunction.from_atoms([FockAtom(1.0, 0, 0.0)])


def normalized_monomial(n: int) -> FockFunction:
    """The orthonormal basis element ``e_n(z) = (pi**n/n!)**0.5 z**n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ln_c = 0.5 * (n * _LN_PI - math.lgamma(n + 1))
    return FockFunction.from_atoms([FockAtom(math.exp(ln_c), n, 0.0)])


def from_series_coeffs(coeffs: Sequence[complex]) -> FockFunction:
    """Polynomial ``sum_n coeffs[n] * e_n`` as a FockFunction."""
    atoms = []
    for n, c in enumerate(coeffs):
        if c == 0:
            continue
        ln_c = 0.5 * (n * _LN_PI - math.lgamma(n + 1))
        atoms.append(FockAtom(complex(c) * math.exp(ln_c), n, 0.0))
    return FockFunction.from_atoms(atoms)


# ---------------------------------------------------------------------------
# pointwise evaluation
# ---------------------------------------------------------------------------

def evaluate(F: FockFunction, z):
    """Exact finite sum ``sum coeff * z**n * exp(expo*z)`` in floating point."""
    arr = np.asarray(z, dtype=np.complex128)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    if not F.atoms:
        out = np.zeros(flat.shape, dtype=np.complex128)
    else:
        out = atom_sum(*F.arrays(), flat)
    out = out.reshape(np.atleast_1d(arr).shape)
    return complex(out[0]) if scalar else out.reshape(arr.shape)


def evaluate_weighted(F: FockFunction, z):
    """``F(z) * exp(-pi*|z|^2/2)``, overflow-safe for any z in the plane.

    This is the quantity whose modulus the Gabor magnitude equals; by the
    reproducing-kernel bound it never exceeds the Fock norm of F.
    """
    arr = np.asarray(z, dtype=np.complex128)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    if not F.atoms:
        out = np.zeros(flat.shape, dtype=np.complex128)
    else:
        out = atom_sum_weighted(*F.arrays(), flat)
    return complex(out[0]) if scalar else out.reshape(arr.shape)


# ---------------------------------------------------------------------------
# inner product, norm, products
# ---------------------------------------------------------------------------

def _pair_inner(c1: complex, n1: int, b1: complex, c2: complex, n2: int, b2: complex) -> complex:
    """<c1 z^n1 e^{b1 z}, c2 z^n2 e^{b2 z}> via kernel derivatives.

    (z^n e^{bz}, z^m e^{gz}) = sum_{k<=min(n,m)} C(n,k) m!/(m-k)!
        b^{m-k} conj(g)^{n-k} pi^{-(m+n-k)} exp(b conj(g)/pi).
    Magnitudes are accumulated in log space so transient factorial growth
    cannot overflow when the true value is representable.
    """
    if c1 == 0 or c2 == 0:
        return 0.0

    g = b2.conjugate()
    base_ln = math.log(abs(c1)) + math.log(abs(c2)) + (b1 * g).real / math.pi
    base_ph = cmath.phase(c1) - cmath.phase(c2) + (b1 * g).imag / math.pi

    ab = abs(b1)
    ag = abs(g)
    ln_b = math.log(ab) if ab else 0.0
    ln_g = math.log(ag) if ag else 0.0
    ph_b = cmath.phase(b1) if ab else 0.0
    ph_g = cmath.phase(g) if ag else 0.0

    total = 0.0 + 0.0j
    for k in range(min(n1, n2) + 1):
        pb = n2 - k  # power of b1
        pg = n1 - k  # power of conj(b2)
        if pb and not ab:
            continue
        if pg and not ag:
            continue
        ln_mag = (
            base_ln
            + math.lgamma(n1 + 1) - math.lgamma(k + 1) - math.lgamma(n1 - k + 1)
            + math.lgamma(n2 + 1) - math.lgamma(n2 - k + 1)
            + pb * ln_b + pg * ln_g
            - (n1 + n2 - k) * _LN_PI
        )
        phase = base_ph + pb * ph_b + pg * ph_g
        total += cmath.rect(math.exp(ln_mag), phase)
    return total


def inner(F: FockFunction, G: FockFunction) -> complex:
    """Fock-space inner product, closed form; linear in F, conjugate in G."""
    total = 0.0 + 0.0j
    for a in F.atoms:
        for b in G.atoms:
            total += _pair_inner(a.coeff, a.power, a.expo, b.coeff, b.power, b.expo)
    return total


def norm(F: FockFunction) -> float:
    """sqrt(inner(F, F)); zero iff F == 0."""
    return math.sqrt(max(0.0, inner(F, F).real))


def multiply(F: FockFunction, G: FockFunction) -> FockFunction:
    """Canonical product; evaluates pointwise to F(z)*G(z) exactly."""
    atoms = [
        FockAtom(a.coeff * b.coeff, a.power + b.power, a.expo + b.expo)
        for a in F.atoms
        for b in G.atoms
    ]
    return FockFunction.from_atoms(atoms)


def multiplier(delta: float, a: float, sign: str, theta: float = 0.0, lambda0: complex = 0.0) -> FockFunction:
    """Magnitude multiplier ``1 ± i*delta*exp((pi e^{i theta}/a)(z - conj(lambda0)))``.

    The two signs have equal modulus exactly on the line family
    conj(lambda0) + e^{-i theta}(R + i a Z) and differ elsewhere.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if a <= 0:
        raise ValueError("a must be positive")
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    rate = math.pi * cmath.exp(1j * theta) / a
    s = 1j if sign == "+" else -1j
    shift = cmath.exp(-rate * complex(lambda0).conjugate())
    return FockFunction.from_atoms(
        [FockAtom(1.0, 0, 0.0), FockAtom(s * delta * shift, 0, rate)]
    )


def multiplier_roots(delta: float, a: float, sign: str, theta: float = 0.0,
                     lambda0: complex = 0.0, ks: Iterable[int] = (0,)) -> list:
    """Closed-form roots of the ± multiplier, indexed by branch k.

    Solves delta*exp(rate*(z - conj(lambda0))) = ±i:
    z_k = conj(lambda0) + (a e^{-i theta}/pi) (log(1/delta) + i(±pi/2 + 2 pi k)).
    """
    if delta <= 0 or a <= 0:
        raise ValueError("delta and a must be positive")
    half = math.pi / 2 if sign == "+" else -math.pi / 2
    base = complex(lambda0).conjugate()
    rot = a * cmath.exp(-1j * theta) / math.pi
    return [base + rot * complex(math.log(1.0 / delta), half + 2 * math.pi * k) for k in ks]


def translate_argument(F: FockFunction, u: float) -> FockFunction:
    """z -> F(z - u) at the representation level (binomial expansion)."""
    atoms = []
    for a in F.atoms:
        pref = a.coeff * cmath.exp(-a.expo * u)
        for k in range(a.power + 1):
            c = pref * math.comb(a.power, k) * (-u) ** (a.power - k)
            atoms.append(FockAtom(c, k, a.expo))
    return FockFunction.from_atoms(atoms)


def bargmann_translate(F: FockFunction, u: float) -> FockFunction:
    """Image of time translation by u: F(z-u) * exp(pi*u*z) * exp(-pi*u^2/2)."""
    shifted = translate_argument(F, u)
    gauge = FockFunction.from_atoms(
        [FockAtom(math.exp(-0.5 * math.pi * u * u), 0, math.pi * u)]
    )
    return multiply(shifted, gauge)


# ---------------------------------------------------------------------------
# expansion in the orthonormal monomial basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientSeries:
    """Coefficients in the e_n basis plus a rigorous l2 bound on the tail."""

    coeffs: np.ndarray
    tail_bound: float

    @property
    def norm_squared_lower(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


def _atom_basis_coeff(c: complex, n: int, b: complex, m: int) -> complex:
    """e_m coefficient of the atom c z^n e^{bz}: c b^{m-n}/(m-n)! sqrt(m!/pi^m)."""
    if m < n:
        return 0.0
    k = m - n
    ab = abs(b)
    if k and not ab:
        return 0.0
    ln_mag = (
        math.log(abs(c))
        + (k * math.log(ab) if k else 0.0)
        - math.lgamma(k + 1)
        + 0.5 * (math.lgamma(m + 1) - m * _LN_PI)
    )
    phase = cmath.phase(c) + (k * cmath.phase(b) if k else 0.0)
    return cmath.rect(math.exp(ln_mag), phase)


def _atom_ratio_cutoff(n: int, b: complex) -> int:
    """Smallest M >= n with |coeff ratio| <= 1/2 for all m >= M."""
    ab = abs(b)
    if ab == 0:
        return n
    m = n
    while True:
        # |d_{m+1}/d_m| = |b| sqrt(m+1) / ((m+1-n) sqrt(pi))
        ratio = ab * math.sqrt(m + 1) / ((m + 1 - n) * math.sqrt(math.pi))
        if ratio <= 0.5:
            return m
        m += 1


def monomial_coeffs(F: FockFunction, tol: float) -> CoefficientSeries:
    """Expand F in the orthonormal monomial basis with a certified l2 tail <= tol.

    Each exponential factor is Taylor-expanded; beyond the per-atom ratio-test
    cutoff the coefficient moduli decay at least geometrically with ratio 1/2,
    so the discarded mass is bounded by twice the first omitted square.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not F.atoms:
        return CoefficientSeries(np.zeros(1, dtype=np.complex128), 0.0)

    cutoffs = [_atom_ratio_cutoff(a.power, a.expo) for a in F.atoms]
    m_star = max(max(cutoffs) + 2, max(a.power for a in F.atoms) + 2)

    while True:
        table = np.zeros(m_star + 1, dtype=np.complex128)
        beyond = 0.0  # l2 bound on everything past m_star, summed per atom
        for a, cut in zip(F.atoms, cutoffs):
            for m in range(a.power, m_star + 1):
                table[m] += _atom_basis_coeff(a.coeff, a.power, a.expo, m)
            if a.expo != 0:
                first_omitted = abs(_atom_basis_coeff(a.coeff, a.power, a.expo, m_star + 1))
                beyond += math.sqrt(2.0) * first_omitted
        # tail(N) <= ||coeffs between N+1 and m_star|| + beyond
        sq = np.abs(table) ** 2
        suffix = np.sqrt(np.cumsum(sq[::-1])[::-1])
        n_cut = None
        for n in range(m_star + 1):
            tail = (suffix[n + 1] if n + 1 <= m_star else 0.0) + beyond
            if tail <= tol:
                n_cut = n
                tail_bound = tail
                break
        if n_cut is not None:
            return CoefficientSeries(table[: n_cut + 1].copy(), float(tail_bound))
        m_star *= 2
        if m_star > 200000:
            raise RuntimeError("monomial expansion did not reach requested tolerance")
