"""Numerical probe of Gaussian uniqueness on quadratic lattices.

The underlying fact (used as a black box): an entire function of
subcritical quadratic growth that is bounded on a unit lattice is
constant, so a Fock function with |F| = 1 on a Z + i a Z, a < 1, is a
unimodular constant — equivalently, the Gaussian is not a counterexample
on such lattices. Desk-scale support comes in two forms:

* hypothesis checks (`growth_hypothesis_check`, `pointwise_bound_check`)
  that the representation class satisfies the growth assumptions, and
* `constant_fit_search`, a seeded multistart least-squares feasibility
  search for |F| = 1 on a finite lattice window: with a < 1 and more
  constraints than unknowns, every feasible minimizer found lands on the
  constant circle. This corroborates, and cannot prove, the statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import fock
from .fock import FockFunction


class UnderdeterminedError(ValueError):
    """Fewer lattice constraints than real degrees of freedom."""


@dataclass(frozen=True)
class ProbeConfig:
    a: float                    # lattice spacing (uniqueness regime is a < 1)
    radius: float               # constraint window: lattice points with |z| <= radius
    max_degree: int             # coefficient cutoff N; F = sum_{n<=N} c_n e_n
    starts: int = 20
    tol_feas: float = 1e-8
    seed: int = 0
    near_constant_tol: float = 1e-4

    def __post_init__(self):
        if self.a <= 0 or self.radius <= 0:
            raise ValueError("a and radius must be positive")
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        if self.starts < 1:
            raise ValueError("starts must be at least 1")
        if self.tol_feas <= 0 or self.near_constant_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class Minimizer:
    start_index: int
    coeffs: np.ndarray
    residual: float
    grad_norm: float
    iterations: int
    distance_to_constants: float
    feasible: bool


@dataclass(frozen=True)
class ProbeResult:
    config: ProbeConfig
    n_points: int
    minimizers: Tuple[Minimizer, ...]
    verdict: str  # all-near-constant | nonconstant-feasible-found | inconclusive

    @property
    def feasible(self) -> List[Minimizer]:
        return [m for m in self.minimizers if m.feasible]


@dataclass(frozen=True)
class GrowthReport:
    order_hypothesis_holds: bool
    analytic_ratio_limit: float
    ratio_curve: Tuple[Tuple[float, float], ...]  # (r, log M(r) / r^2)
    lattice_bound_holds: bool
    max_lattice_value: float
    violation_point: Optional[complex]
    both_hold: bool


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    slack: float


def lattice_points(a: float, radius: float) -> np.ndarray:
    """Points of a(Z + iZ) inside the closed disk of the given radius."""
    k = int(math.floor(radius / a))
    m, n = np.meshgrid(np.arange(-k, k + 1), np.arange(-k, k + 1), indexing="ij")
    z = a * (m + 1j * n)
    return z[np.abs(z) <= radius + 1e-12].ravel()


def distance_to_constants(coeffs: np.ndarray) -> float:
    """Phase-minimized distance to {e^{i alpha}}: sqrt(sum_{n>=1}|c_n|^2 + (|c_0|-1)^2)."""
    c = np.asarray(coeffs, dtype=np.complex128)
    rest = float(np.sum(np.abs(c[1:]) ** 2)) if len(c) > 1 else 0.0
    return math.sqrt((abs(c[0]) - 1.0) ** 2 + rest)


# ---------------------------------------------------------------------------
# hypothesis checks
# ---------------------------------------------------------------------------

def growth_hypothesis_check(F: FockFunction, kappa: float, r_max: float,
                            n_radii: int = 24, n_angles: int = 256) -> GrowthReport:
    """Check the two constancy-theorem hypotheses on a finite window.

    The representation class has order at most one (polynomial times
    exponentials of finite type), so log M(r)/r^2 -> 0 < pi/2 always; that
    part is decided analytically and the sampled curve is corroboration.
    The lattice bound |F(m + i n)| <= kappa is checked exhaustively for
    |m|, |n| <= r_max.
    """
    if r_max <= 2:
        raise ValueError("r_max must exceed 2")
    if kappa <= 0:
        raise ValueError("kappa must be positive")

    radii = np.linspace(1.0, r_max, n_radii)
    angles = np.exp(2j * math.pi * np.arange(n_angles) / n_angles)
    curve = []
    for r in radii:
        vals = np.abs(fock.evaluate(F, r * angles))
        m = float(np.max(vals))
        curve.append((float(r), math.log(m) / (r * r) if m > 0 else -math.inf))

    k = int(math.floor(r_max))
    m_grid, n_grid = np.meshgrid(np.arange(-k, k + 1), np.arange(-k, k + 1), indexing="ij")
    pts = (m_grid + 1j * n_grid).ravel()
    order = np.argsort(np.abs(pts), kind="stable")
    pts = pts[order]
    vals = np.abs(fock.evaluate(F, pts))
    over = vals > kappa * (1.0 + 1e-12)
    if np.any(over):
        first = int(np.argmax(over))
        violation = complex(pts[first])
        lattice_ok = False
    else:
        violation = None
        lattice_ok = True

    return GrowthReport(
        order_hypothesis_holds=True,
        analytic_ratio_limit=0.0,
        ratio_curve=tuple(curve),
        lattice_bound_holds=lattice_ok,
        max_lattice_value=float(np.max(vals)),
        violation_point=violation,
        both_hold=lattice_ok,
    )


def pointwise_bound_check(F: FockFunction, z: complex) -> BoundCheck:
    """Reproducing-kernel bound |F(z)| <= ||F|| e^{pi |z|^2 / 2} (with 1e-10 slack)."""
    z = complex(z)
    bound = fock.norm(F) * math.exp(0.5 * math.pi * abs(z) ** 2) * (1.0 + 1e-10)
    slack = bound - abs(fock.evaluate(F, z))
    return BoundCheck(holds=bool(slack >= 0.0), slack=float(slack))


# ---------------------------------------------------------------------------
# feasibility search
# ---------------------------------------------------------------------------

def _design_matrix(points: np.ndarray, max_degree: int) -> np.ndarray:
    """E[i, n] = e_n(points[i]) by the stable ratio recurrence."""
    e = np.empty((len(points), max_degree + 1), dtype=np.complex128)
    e[:, 0] = 1.0
    for n in range(1, max_degree + 1):
        e[:, n] = e[:, n - 1] * points * math.sqrt(math.pi / n)
    return e


def _gauss_newton(E: np.ndarray, c0: np.ndarray, grad_tol: float = 1e-10,
                  max_iter: int = 500):
    """Damped Gauss-Newton on sum_i (|F(z_i)|^2 - 1)^2 over complex coefficients.

    Monotone nonincreasing residual by backtracking line search; returns
    (coeffs, residual, grad_norm, iterations).
    """
    c = c0.astype(np.complex128).copy()

    def resid(cv):
        return np.abs(E @ cv) ** 2 - 1.0

    r = resid(c)
    s = float(r @ r)
    it = 0
    g_norm = math.inf
    for it in range(1, max_iter + 1):
        fvals = E @ c
        # d|F|^2/dRe(c_n) = 2 Re(conj(F) E_n); d/dIm(c_n) = -2 Im(conj(F) E_n)
        base = np.conj(fvals)[:, None] * E
        jac = np.concatenate((2.0 * base.real, -2.0 * base.imag), axis=1)
        grad = 2.0 * jac.T @ r
        g_norm = float(np.linalg.norm(grad))
        if g_norm < grad_tol:
            break
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        dc = step[: len(c)] + 1j * step[len(c):]
        alpha = 1.0
        improved = False
        for _ in range(40):
            cand = c + alpha * dc
            rc = resid(cand)
            sc = float(rc @ rc)
            if sc <= s:
                c, r, s = cand, rc, sc
                improved = True
                break
            alpha *= 0.5
        if not improved:
            # steepest-descent fallback keeps the monotonicity contract
            dc = -(grad[: len(c)] + 1j * grad[len(c):])
            alpha = 1.0 / max(1.0, float(np.linalg.norm(dc)))
            for _ in range(60):
                cand = c + alpha * dc
                rc = resid(cand)
                sc = float(rc @ rc)
                if sc < s:
                    c, r, s = cand, rc, sc
                    improved = True
                    break
                alpha *= 0.5
            if not improved:
                break
    return c, s, g_norm, it


def constant_fit_search(cfg: ProbeConfig, allow_underdetermined: bool = False) -> ProbeResult:
    """Seeded multistart feasibility search for |F| = 1 on the lattice window.

    Raises UnderdeterminedError when the window holds fewer constraint
    points than the 2(N+1) real unknowns (a verdict would be meaningless);
    pass allow_underdetermined=True to run anyway, e.g. to exhibit
    nonconstant feasible functions on degenerate windows.
    """
    pts = lattice_points(cfg.a, cfg.radius)
    dof = 2 * (cfg.max_degree + 1)
    if len(pts) < dof and not allow_underdetermined:
        raise UnderdeterminedError(
            f"{len(pts)} constraint points for {dof} real degrees of freedom"
        )
    E = _design_matrix(pts, cfg.max_degree)

    rng = np.random.default_rng(cfg.seed)
    inits = (rng.standard_normal((cfg.starts, cfg.max_degree + 1))
             + 1j * rng.standard_normal((cfg.starts, cfg.max_degree + 1))) / math.sqrt(2.0)

    minimizers = []
    for i in range(cfg.starts):
        c, s, g, it = _gauss_newton(E, inits[i])
        minimizers.append(Minimizer(
            start_index=i,
            coeffs=c,
            residual=s,
            grad_norm=g,
            iterations=it,
            distance_to_constants=distance_to_constants(c),
            feasible=bool(s < cfg.tol_feas),
        ))

    feas = [m for m in minimizers if m.feasible]
    if not feas:
        verdict = "inconclusive"
    elif all(m.distance_to_constants < cfg.near_constant_tol for m in feas):
        verdict = "all-near-constant"
    else:
        verdict = "nonconstant-feasible-found"
    return ProbeResult(cfg, len(pts), tuple(minimizers), verdict)
