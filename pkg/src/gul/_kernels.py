"""Hot numeric kernels: numba-jitted when available, pure numpy otherwise.

Set GUL_NO_NUMBA=1 to force the numpy fallback path. GUL_THREADS caps the
numba thread pool. Both implementations are importable side by side
(``*_np`` / ``*_nb``) so the benchmark and the equivalence tests can compare
them directly; the public names dispatch to the active path.
"""

from __future__ import annotations

import math
import os

import numpy as np

_SQRT_PI = math.sqrt(math.pi)
_PHI0 = 2.0 ** 0.25  # normalized Gaussian at 0


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


# ---------------------------------------------------------------------------
# pure numpy implementations
# ---------------------------------------------------------------------------

def atom_sum_np(coeffs, powers, expos, z):
    """Sum_j coeffs[j] * z**powers[j] * exp(expos[j]*z) over a 1-D complex grid."""
    out = np.zeros(z.shape, dtype=np.complex128)
    for c, p, b in zip(coeffs, powers, expos):
        term = np.exp(b * z) if b != 0 else np.ones_like(z)
        if p:
            term = term * z**int(p)
        out += c * term
    return out


def atom_sum_weighted_np(coeffs, powers, expos, z):
    """Gaussian-weighted atom sum: sum_j c_j exp(p_j*log z + b_j*z - pi|z|^2/2).

    Stable for arbitrarily large |z|: the real exponent is bounded above by
    log of the Fock norm, so no intermediate overflow occurs. z == 0 handled
    separately (only p == 0 atoms contribute).
    """
    out = np.zeros(z.shape, dtype=np.complex128)
    w = -0.5 * math.pi * (z.real**2 + z.imag**2)
    zero = z == 0
    nz = ~zero
    logz = np.zeros(z.shape, dtype=np.complex128)
    logz[nz] = np.log(z[nz])
    for c, p, b in zip(coeffs, powers, expos):
        expnt = int(p) * logz + b * z
        term = c * np.exp(expnt.real + w + 1j * expnt.imag)
        if p:
            term[zero] = 0.0
        else:
            term[zero] = c * np.exp(w[zero])
        out += term
    return out


def hermite_bank_np(n_max, t):
    """Matrix H[n, i] of orthonormal Hermite functions H_n(t_i), n = 0..n_max."""
    t = np.asarray(t, dtype=np.float64)
    out = np.empty((n_max + 1, t.size), dtype=np.float64)
    out[0] = _PHI0 * np.exp(-math.pi * t**2)
    if n_max >= 1:
        out[1] = 2.0 * _SQRT_PI * t * out[0]
    for n in range(1, n_max):
        out[n + 1] = (2.0 * _SQRT_PI * t * out[n] - math.sqrt(n) * out[n - 1]) / math.sqrt(n + 1)
    return out


def hermite_series_np(coeffs, t):
    """Evaluate sum_n coeffs[n] H_n(t) pointwise on a real grid."""
    t = np.asarray(t, dtype=np.float64)
    n_max = len(coeffs) - 1
    h0 = _PHI0 * np.exp(-math.pi * t**2)
    acc = coeffs[0] * h0
    if n_max >= 1:
        h1 = 2.0 * _SQRT_PI * t * h0
        acc = acc + coeffs[1] * h1
        for n in range(1, n_max):
            h2 = (2.0 * _SQRT_PI * t * h1 - math.sqrt(n) * h0) / math.sqrt(n + 1)
            acc = acc + coeffs[n + 1] * h2
            h0, h1 = h1, h2
    return acc


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

HAS_NUMBA = False
USING_NUMBA = False
atom_sum_nb = None
atom_sum_weighted_nb = None
hermite_bank_nb = None
hermite_series_nb = None

if not _env_flag("GUL_NO_NUMBA"):
    try:
        import numba
        from numba import njit, prange

        HAS_NUMBA = True
        threads = os.environ.get("GUL_THREADS")
        if threads:
            try:
                numba.set_num_threads(max(1, int(threads)))
            except (ValueError, RuntimeError):
                pass

        # parallel loops write disjoint cells only, so results are
        # bitwise-identical for any thread count

        @njit(cache=True, parallel=True)
        def atom_sum_nb(coeffs, powers, expos, z):  # pragma: no cover - jitted
            out = np.zeros(z.shape[0], dtype=np.complex128)
            for i in prange(z.shape[0]):
                zi = z[i]
                acc = 0.0 + 0.0j
                for j in range(coeffs.shape[0]):
                    b = expos[j]
                    term = np.exp(b * zi) if b != 0 else 1.0 + 0.0j
                    for _ in range(powers[j]):
                        term *= zi
                    acc += coeffs[j] * term
                out[i] = acc
            return out

        @njit(cache=True, parallel=True)
        def atom_sum_weighted_nb(coeffs, powers, expos, z):  # pragma: no cover
            out = np.zeros(z.shape[0], dtype=np.complex128)
            half_pi = 0.5 * np.pi
            for i in prange(z.shape[0]):
                zi = z[i]
                w = -half_pi * (zi.real * zi.real + zi.imag * zi.imag)
                acc = 0.0 + 0.0j
                if zi == 0:
                    for j in range(coeffs.shape[0]):
                        if powers[j] == 0:
                            acc += coeffs[j] * np.exp(w)
                else:
                    lz = np.log(zi)
                    for j in range(coeffs.shape[0]):
                        e = powers[j] * lz + expos[j] * zi
                        acc += coeffs[j] * np.exp(complex(e.real + w, e.imag))
                out[i] = acc
            return out

        @njit(cache=True, parallel=True)
        def hermite_bank_nb(n_max, t):  # pragma: no cover - jitted
            out = np.empty((n_max + 1, t.shape[0]), dtype=np.float64)
            sp = np.sqrt(np.pi)
            c0 = 2.0 ** 0.25
            for i in prange(t.shape[0]):
                ti = t[i]
                h0 = c0 * np.exp(-np.pi * ti * ti)
                out[0, i] = h0
                if n_max >= 1:
                    h1 = 2.0 * sp * ti * h0
                    out[1, i] = h1
                    for n in range(1, n_max):
                        h2 = (2.0 * sp * ti * h1 - np.sqrt(n) * h0) / np.sqrt(n + 1.0)
                        out[n + 1, i] = h2
                        h0 = h1
                        h1 = h2
            return out

        @njit(cache=True, parallel=True)
        def hermite_series_nb(coeffs, t):  # pragma: no cover - jitted
            n_max = coeffs.shape[0] - 1
            out = np.empty(t.shape[0], dtype=np.complex128)
            sp = np.sqrt(np.pi)
            c0 = 2.0 ** 0.25
            for i in prange(t.shape[0]):
                ti = t[i]
                h0 = c0 * np.exp(-np.pi * ti * ti)
                acc = coeffs[0] * h0
                if n_max >= 1:
                    h1 = 2.0 * sp * ti * h0
                    acc += coeffs[1] * h1
                    for n in range(1, n_max):
                        h2 = (2.0 * sp * ti * h1 - np.sqrt(n) * h0) / np.sqrt(n + 1.0)
                        acc += coeffs[n + 1] * h2
                        h0 = h1
                        h1 = h2
                out[i] = acc
            return out

        USING_NUMBA = True
    except ImportError:
        HAS_NUMBA = False


def _dispatch(nb_fn, np_fn):
    return nb_fn if USING_NUMBA and nb_fn is not None else np_fn


def atom_sum(coeffs, powers, expos, z):
    return _dispatch(atom_sum_nb, atom_sum_np)(coeffs, powers, expos, z)


def atom_sum_weighted(coeffs, powers, expos, z):
    return _dispatch(atom_sum_weighted_nb, atom_sum_weighted_np)(coeffs, powers, expos, z)


def hermite_bank(n_max, t):
    return _dispatch(hermite_bank_nb, hermite_bank_np)(n_max, t)


def hermite_series(coeffs, t):
    return _dispatch(hermite_series_nb, hermite_series_np)(coeffs, t)
