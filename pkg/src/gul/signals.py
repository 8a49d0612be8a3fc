"""Time-domain signals in the Hermite basis, the Bargmann transform in both
directions, L2 geometry with interval certificates, and the independent
integral oracle.

The Hermite family used everywhere is the one whose Bargmann images are the
normalized monomials e_n; it is orthonormal in L2 and satisfies

    H_0(t) = 2**0.25 * exp(-pi t^2)           (the normalized Gaussian)
    H_{n+1} = (2 sqrt(pi) t H_n - sqrt(n) H_{n-1}) / sqrt(n+1).

Signals are canonically Fock-side: a TimeSignal is its coefficient vector
in this basis plus a rigorous l2 bound on the truncated tail, and
time-domain evaluation is the finite Hermite sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from . import fock
from ._kernels import hermite_bank, hermite_series
from .fock import CoefficientSeries, FockFunction
from .quad import adaptive_trapezoid

DEFAULT_N_MAX = 64
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Interval:
    """Certified enclosure [low, high] of a nonnegative quantity."""

    low: float
    high: float

    def __post_init__(self):
        if self.high < self.low:
            raise ValueError("interval upper bound below lower bound")

    @property
    def mid(self) -> float:
        return 0.5 * (self.low + self.high)


@dataclass(frozen=True, eq=False)
class TimeSignal:
    """Finite Hermite expansion with an l2 tail bound.

    Represents f = sum_n coeffs[n] H_n + tail with ||tail|| <= tail_bound.
    """

    coeffs: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        object.__setattr__(self, "coeffs", c)
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def norm_upper(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.coeffs) ** 2))) + self.tail_bound

    def time_values(self, t) -> np.ndarray:
        """Pointwise sum of the stored Hermite series at real t."""
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        return hermite_series(np.ascontiguousarray(self.coeffs), t)

    def __call__(self, t):
        return self.time_values(t)


def hermite_signal(n: int) -> TimeSignal:
    """The n-th Hermite function as a unit coefficient vector."""
    c = np.zeros(n + 1, dtype=np.complex128)
    c[n] = 1.0
    return TimeSignal(c, 0.0)


def gaussian_signal() -> TimeSignal:
    return hermite_signal(0)


# ---------------------------------------------------------------------------
# closed-form signals (quadrature-oracle side)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormSignal:
    """Machine-precision evaluable descriptor used only by the oracles.

    kind: 'gaussian' | 'hermite' | 'hyperbolic_pair' | 'lincomb'.
    'hyperbolic_pair' is phi(t) (cosh(pi t/a) + sign*i*sinh(pi t/a)), the
    base counterexample member; all kinds carry a time shift u.
    """

    kind: str
    n: int = 0
    a: float = 0.0
    sign: int = +1
    shift: float = 0.0
    terms: tuple = field(default_factory=tuple)  # ((coeff, ClosedFormSignal), ...)

    def shifted(self, u: float) -> "ClosedFormSignal":
        if self.kind == "lincomb":
            return ClosedFormSignal(
                kind="lincomb",
                terms=tuple((c, s.shifted(u)) for c, s in self.terms),
            )
        return ClosedFormSignal(self.kind, self.n, self.a, self.sign, self.shift + u, self.terms)

    @property
    def growth_rate(self) -> float:
        """c such that |f(t)| <= A exp(-pi(t-u)^2 + c|t-u|) * poly."""
        if self.kind == "hyperbolic_pair":
            return math.pi / self.a
        if self.kind == "lincomb":
            return max((s.growth_rate for _, s in self.terms), default=0.0)
        return 0.0

    @property
    def poly_degree(self) -> int:
        if self.kind == "hermite":
            return self.n
        if self.kind == "lincomb":
            return max((s.poly_degree for _, s in self.terms), default=0)
        return 0

    @property
    def center(self) -> float:
        if self.kind == "lincomb":
            cs = [s.center for _, s in self.terms]
            return 0.5 * (min(cs) + max(cs)) if cs else 0.0
        return self.shift

    def __call__(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        if self.kind == "lincomb":
            out = np.zeros(t.shape, dtype=np.complex128)
            for c, s in self.terms:
                out += c * s(t)
            return out
        u = t - self.shift
        if self.kind == "gaussian":
            return (2.0 ** 0.25) * np.exp(-math.pi * u**2) + 0.0j
        if self.kind == "hermite":
            bank = hermite_bank(self.n, u)
            return bank[self.n] + 0.0j
        if self.kind == "hyperbolic_pair":
            # phi*cosh and phi*sinh recombined from exponentials so the
            # Gaussian always tames the hyperbolic growth before overflow
            c = math.pi / self.a
            ep = np.exp(-math.pi * u**2 + c * u)
            em = np.exp(-math.pi * u**2 - c * u)
            s = 1j if self.sign > 0 else -1j
            return (2.0 ** 0.25) * 0.5 * ((1.0 + s) * ep + (1.0 - s) * em)
        raise ValueError(f"unknown closed-form kind {self.kind!r}")


def closed_gaussian(shift: float = 0.0) -> ClosedFormSignal:
    return ClosedFormSignal("gaussian", shift=shift)


def closed_hermite(n: int, shift: float = 0.0) -> ClosedFormSignal:
    return ClosedFormSignal("hermite", n=n, shift=shift)


def closed_hyperbolic(a: float, sign: int, shift: float = 0.0) -> ClosedFormSignal:
    if a <= 0:
        raise ValueError("a must be positive")
    return ClosedFormSignal("hyperbolic_pair", a=a, sign=+1 if sign >= 0 else -1, shift=shift)


def closed_lincomb(terms) -> ClosedFormSignal:
    return ClosedFormSignal("lincomb", terms=tuple((complex(c), s) for c, s in terms))


def closed_from_signal(f: TimeSignal) -> ClosedFormSignal:
    """Finite Hermite combination matching f's stored coefficients."""
    return closed_lincomb(
        (c, closed_hermite(n)) for n, c in enumerate(f.coeffs) if c != 0
    )


# ---------------------------------------------------------------------------
# Hermite evaluation
# ---------------------------------------------------------------------------

def hermite_eval(n: int, t, n_max: int = DEFAULT_N_MAX):
    """H_n(t) for the Bargmann-normalized orthonormal Hermite family.

    The three-term recurrence is certified (against the integral oracle) up
    to n_max; pass a larger n_max explicitly to evaluate beyond the default.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > n_max:
        raise ValueError(f"n={n} exceeds the certified recurrence cap n_max={n_max}")
    arr = np.asarray(t, dtype=np.float64)
    bank = hermite_bank(n, np.atleast_1d(arr).ravel())
    out = bank[n].reshape(np.atleast_1d(arr).shape)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


# ---------------------------------------------------------------------------
# Bargmann transform: series side
# ---------------------------------------------------------------------------

def bargmann_series(f: TimeSignal) -> FockFunction:
    """sum c_n H_n  ->  sum c_n e_n (exact coefficient relabeling)."""
    return fock.from_series_coeffs(f.coeffs)


def inverse_bargmann(F: FockFunction, tol: float) -> TimeSignal:
    """Pull back through the monomial expansion; resulting tail_bound <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    series: CoefficientSeries = fock.monomial_coeffs(F, tol)
    return TimeSignal(series.coeffs, series.tail_bound)


# ---------------------------------------------------------------------------
# Bargmann transform: integral oracle
# ---------------------------------------------------------------------------

def _window_for(f: ClosedFormSignal, center: float) -> Tuple[float, float]:
    half = f.growth_rate / (4.0 * math.pi) + 4.0 + 0.5 * math.sqrt(f.poly_degree + 1.0)
    mid = 0.5 * (f.center + center)
    spread = 0.5 * abs(f.center - center)
    return mid - spread - half, mid + spread + half


def bargmann_quadrature(f: ClosedFormSignal, z: complex, tol: float) -> complex:
    """Direct integral 2**0.25 * int f(t) exp(2 pi t z - pi t^2 - pi z^2/2) dt.

    Certified to absolute accuracy tol; raises OverflowError when the
    integrand leaves floating-point range (|Im z| beyond ~21).
    """
    if tol < 1e-12:
        raise ValueError("tol must be at least 1e-12")
    z = complex(z)
    if 0.5 * math.pi * abs(z) ** 2 - math.log(1e300) > 0:
        raise OverflowError("integrand exceeds floating-point range")

    lo, hi = _window_for(f, z.real)

    def sample(t):
        return (2.0 ** 0.25) * f(t) * np.exp(_TWO_PI * t * z - math.pi * t**2 - 0.5 * math.pi * z * z)

    return complex(adaptive_trapezoid(sample, lo, hi, tol))


# ---------------------------------------------------------------------------
# translation
# ---------------------------------------------------------------------------

def translate(f: Union[TimeSignal, ClosedFormSignal], u: float, tol: float = 1e-12):
    """Time shift T_u f; Fock side satisfies B(T_u f)(z) = Bf(z-u) e^{pi u z - pi u^2/2}.

    TimeSignals are shifted on the Fock side and pulled back (translation is
    unitary, so the stored tail bound carries over plus the pullback tol).
    """
    if isinstance(f, ClosedFormSignal):
        return f.shifted(u)
    if u == 0:
        return f
    image = fock.bargmann_translate(bargmann_series(f), u)
    pulled = inverse_bargmann(image, tol)
    return TimeSignal(pulled.coeffs, pulled.tail_bound + f.tail_bound)


# ---------------------------------------------------------------------------
# L2 geometry
# ---------------------------------------------------------------------------

def _padded(a: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.complex128)
    out[: len(a)] = a
    return out


def l2_distance(f: TimeSignal, g: TimeSignal) -> Interval:
    """Coefficient-space distance as a certified interval including both tails."""
    n = max(len(f.coeffs), len(g.coeffs))
    d = float(np.linalg.norm(_padded(f.coeffs, n) - _padded(g.coeffs, n)))
    slack = f.tail_bound + g.tail_bound
    return Interval(max(0.0, d - slack), d + slack)


def phase_distance(f: TimeSignal, g: TimeSignal) -> Tuple[float, float]:
    """Best global phase and residual distance.

    Returns (alpha, dist) with alpha in [0, 2 pi) minimizing ||g - e^{i alpha} f||
    (so g ~ e^{i alpha} f when dist vanishes) and
    dist^2 = ||f||^2 + ||g||^2 - 2|<f, g>| on the stored coefficients.
    """
    n = max(len(f.coeffs), len(g.coeffs))
    cf = _padded(f.coeffs, n)
    cg = _padded(g.coeffs, n)
    ip = complex(np.sum(cg * np.conj(cf)))  # <g, f>
    alpha = cmath.phase(ip) % _TWO_PI
    # aligned difference instead of ||f||^2+||g||^2-2|<f,g>|: same value,
    # no catastrophic cancellation when the pair is a pure phase rotation
    dist = float(np.linalg.norm(cg - cmath.exp(1j * alpha) * cf))
    return alpha, dist
