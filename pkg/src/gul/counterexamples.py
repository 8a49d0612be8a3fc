"""Construction and certification of counterexample pairs to uniqueness in
sampled Gabor phase retrieval.

Every constructor produces two signals whose Gabor magnitudes agree
exactly on a family of equidistant parallel lines while the signals differ
by more than a global phase. The engine is always the same: a pair of
entire multipliers ``1 ± i * delta * exp(rate * (z - conj(lambda0)))`` with
equal modulus on the lines, applied to a common Fock-side factor.

Certification is numerical and window-restricted: `verify_agreement`
samples magnitudes on the materialized lines (fast Fock-side path, or the
time-domain quadrature oracle), `verify_distinct` certifies the pair is
not a global-phase rotation and produces a closed-form root witness. For
multiplier pairs agreement also holds as a representation-level identity,
recorded in the `symbolic_agreement` flag.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import fock, signals
from .fock import FockAtom, FockFunction
from .gabor import LineFamily, gabor_eval, gabor_quadrature_batch, sample_arrays
from .signals import ClosedFormSignal, Interval, TimeSignal

_DEFAULT_PULLBACK_TOL = 1e-12


@dataclass(frozen=True)
class PairMeta:
    mode: str
    a: float
    delta: float
    theta: float = 0.0
    lambda0: complex = 0.0
    p: Optional[FockFunction] = None
    epsilon: Optional[float] = None
    shift: float = 0.0


@dataclass
class Certificates:
    agreement: Optional["AgreementReport"] = None
    distance: Optional[Interval] = None
    phase_distance: Optional[float] = None
    symbolic_agreement: bool = False


@dataclass(frozen=True)
class CounterexamplePair:
    g_plus: TimeSignal
    g_minus: TimeSignal
    image_plus: FockFunction
    image_minus: FockFunction
    family: LineFamily
    meta: PairMeta
    closed_plus: Optional[ClosedFormSignal] = None
    closed_minus: Optional[ClosedFormSignal] = None
    certificates: Certificates = field(default_factory=Certificates)

    def closed_form(self, sign: str) -> ClosedFormSignal:
        """Closed form for the oracle: stored descriptor or Hermite lincomb."""
        stored = self.closed_plus if sign == "+" else self.closed_minus
        if stored is not None:
            return stored
        sig = self.g_plus if sign == "+" else self.g_minus
        return signals.closed_from_signal(sig)


@dataclass(frozen=True)
class Window:
    x_range: Tuple[float, float] = (-5.0, 5.0)
    x_step: float = 0.1
    n_range: Optional[Tuple[int, int]] = None  # defaults to the family's lines


@dataclass(frozen=True)
class AgreementReport:
    max_abs_diff: float
    max_rel_diff: float
    points_checked: int
    passed: bool
    tol: float
    oracle: bool
    argmax_point: Tuple[float, float]
    max_magnitude: float


@dataclass(frozen=True)
class DistinctReport:
    phase_distance: float
    alpha: float
    passed: bool
    root_witness: Optional[complex]
    witness_plus_mag: Optional[float]
    witness_minus_mag: Optional[float]


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _base_images(a: float):
    """Exact two-atom Bargmann images of the hyperbolic pair.

    B[phi(t)(cosh(pi t/a) ± i sinh(pi t/a))](z)
        = C_a [(1 ∓ i) e^{-pi z/(2a)} + (1 ± i) e^{pi z/(2a)}],  C_a = e^{pi/(8 a^2)}/2.
    """
    expo_arg = math.pi / (8.0 * a * a)
    if expo_arg > 700:
        raise OverflowError("a too small: image constant exceeds floating-point range")
    c = 0.5 * math.exp(expo_arg)
    rate = math.pi / (2.0 * a)
    plus = FockFunction.from_atoms(
        [FockAtom(c * (1 - 1j), 0, -rate), FockAtom(c * (1 + 1j), 0, rate)]
    )
    minus = FockFunction.from_atoms(
        [FockAtom(c * (1 + 1j), 0, -rate), FockAtom(c * (1 - 1j), 0, rate)]
    )
    return plus, minus


def base_pair(a: float, pullback_tol: float = _DEFAULT_PULLBACK_TOL,
              n_range: Tuple[int, int] = (-20, 20)) -> CounterexamplePair:
    """The hyperbolic pair h± on the unrotated family R x aZ.

    Time domain: h±(t) = phi(t) (cosh(pi t/a) ± i sinh(pi t/a)); the Fock
    images are the exact two-atom functions with explicit constants.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    img_p, img_m = _base_images(a)
    pair = CounterexamplePair(
        g_plus=signals.inverse_bargmann(img_p, pullback_tol),
        g_minus=signals.inverse_bargmann(img_m, pullback_tol),
        image_plus=img_p,
        image_minus=img_m,
        family=LineFamily(a=a, n_range=n_range),
        meta=PairMeta(mode="base", a=a, delta=1.0),
        closed_plus=signals.closed_hyperbolic(a, +1),
        closed_minus=signals.closed_hyperbolic(a, -1),
    )
    pair.certificates.symbolic_agreement = True
    return pair


def shifted_pair(a: float, delta: float, pullback_tol: float = _DEFAULT_PULLBACK_TOL,
                 n_range: Tuple[int, int] = (-20, 20)) -> CounterexamplePair:
    """Time-shifted hyperbolic pair T_u h± with u = -(a/pi) log(delta).

    Multiplying the images by delta^{a z} e^{pi z/(2a)} (1 ± i)/2 recovers
    exactly the ± multiplier with parameter delta; `multiplier_form` checks
    that identity at the representation level.
    """
    if a <= 0 or delta <= 0:
        raise ValueError("a and delta must be positive")
    u = -(a / math.pi) * math.log(delta)
    img_p, img_m = _base_images(a)
    img_p = fock.bargmann_translate(img_p, u)
    img_m = fock.bargmann_translate(img_m, u)
    pair = CounterexamplePair(
        g_plus=signals.inverse_bargmann(img_p, pullback_tol),
        g_minus=signals.inverse_bargmann(img_m, pullback_tol),
        image_plus=img_p,
        image_minus=img_m,
        family=LineFamily(a=a, n_range=n_range),
        meta=PairMeta(mode="shifted", a=a, delta=delta, shift=u),
        closed_plus=signals.closed_hyperbolic(a, +1, shift=u),
        closed_minus=signals.closed_hyperbolic(a, -1, shift=u),
    )
    pair.certificates.symbolic_agreement = True
    return pair


def multiplier_form(pair: CounterexamplePair):
    """Renormalize a shifted/base pair's images to the plain ± multipliers."""
    a, delta, u = pair.meta.a, pair.meta.delta, pair.meta.shift
    c_a = 0.5 * math.exp(math.pi / (8.0 * a * a))
    c_total = c_a * math.exp(-0.5 * math.pi * u * u) * delta ** (-0.5)
    expo = a * math.log(delta) + math.pi / (2.0 * a)
    out = []
    for img, s in ((pair.image_plus, 1 + 1j), (pair.image_minus, 1 - 1j)):
        gauge = FockFunction.from_atoms([FockAtom(s / (2.0 * c_total), 0, expo)])
        out.append(fock.multiply(img, gauge))
    return tuple(out)


def _growth_factor(fam: LineFamily) -> FockFunction:
    """The unit-coefficient exponential exp(rate (z - conj(lambda0))) of the family."""
    rate = math.pi * cmath.exp(1j * fam.theta) / fam.a
    return FockFunction.from_atoms(
        [FockAtom(cmath.exp(-rate * complex(fam.lambda0).conjugate()), 0, rate)]
    )


def perturb_pair(F: FockFunction, fam: LineFamily, epsilon: Optional[float] = None,
                 delta: Optional[float] = None,
                 pullback_tol: float = _DEFAULT_PULLBACK_TOL) -> CounterexamplePair:
    """Multiplier perturbation of a Fock-side factor F: G± = F * H±_delta.

    With delta below epsilon / ||F * exp-factor|| the two pullbacks are
    epsilon-close to the pullback of F. Either epsilon (delta is then chosen
    with a 1/2 safety factor) or an explicit delta must be given. Products
    of finite-type atoms always stay in the space, so no membership failure
    can occur for this representation class.
    """
    if F.is_zero:
        raise ValueError("F must be nonzero")
    if epsilon is None and delta is None:
        raise ValueError("provide epsilon or delta")
    if epsilon is not None and epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if delta is not None and delta <= 0:
        raise ValueError("delta must be positive")

    grown = fock.multiply(F, _growth_factor(fam))
    scale = fock.norm(grown)
    if not math.isfinite(scale):
        raise OverflowError("perturbation norm exceeds floating-point range")
    if delta is None:
        delta = 0.5 * epsilon / scale
    eps_implied = delta * scale

    img_p = fock.multiply(F, fock.multiplier(delta, fam.a, "+", fam.theta, fam.lambda0))
    img_m = fock.multiply(F, fock.multiplier(delta, fam.a, "-", fam.theta, fam.lambda0))
    g_p = signals.inverse_bargmann(img_p, pullback_tol)
    g_m = signals.inverse_bargmann(img_m, pullback_tol)
    f0 = signals.inverse_bargmann(F, pullback_tol)
    d_p = signals.l2_distance(g_p, f0)
    d_m = signals.l2_distance(g_m, f0)

    pair = CounterexamplePair(
        g_plus=g_p,
        g_minus=g_m,
        image_plus=img_p,
        image_minus=img_m,
        family=fam,
        meta=PairMeta(mode="perturb", a=fam.a, delta=delta, theta=fam.theta,
                      lambda0=fam.lambda0, p=F, epsilon=epsilon if epsilon is not None else eps_implied),
    )
    pair.certificates.symbolic_agreement = True
    pair.certificates.distance = Interval(
        min(d_p.low, d_m.low), max(d_p.high, d_m.high)
    )
    return pair


def density_construct(f: TimeSignal, epsilon: float, fam: LineFamily,
                      pullback_tol: Optional[float] = None) -> CounterexamplePair:
    """Certified epsilon-close pair around an arbitrary resolved signal.

    (i) truncate the signal's Fock image to a polynomial P within epsilon/4
    (half the epsilon/2 budget as safety); (ii) pick delta so the multiplier
    perturbation moves P by at most epsilon/4 in Fock norm; (iii) pull back
    P*H± and certify ||f - g±|| < epsilon through the coefficient-space
    interval (triangle inequality plus all truncation tails).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if f.tail_bound >= epsilon / 4:
        raise ValueError("input tail bound too large: signal insufficiently resolved")
    if pullback_tol is None:
        pullback_tol = min(_DEFAULT_PULLBACK_TOL, epsilon * 1e-4)

    # (i) polynomial truncation of the image
    sq = np.abs(f.coeffs) ** 2
    suffix = np.sqrt(np.concatenate((np.cumsum(sq[::-1])[::-1], [0.0]))[1:] + f.tail_bound**2)
    cut = len(f.coeffs) - 1
    for n in range(len(f.coeffs)):
        if suffix[n] <= epsilon / 4:
            cut = n
            break
    p_poly = fock.from_series_coeffs(f.coeffs[: cut + 1])

    # (ii) delta from the displayed norm identity, with a 1/2 safety factor
    scale = fock.norm(fock.multiply(p_poly, _growth_factor(fam)))
    if not math.isfinite(scale) or scale == 0.0:
        raise OverflowError("perturbation norm not representable")
    delta = 0.5 * (epsilon / 2.0) / scale

    pair = perturb_pair(p_poly, fam, delta=delta, pullback_tol=pullback_tol)
    d_p = signals.l2_distance(f, pair.g_plus)
    d_m = signals.l2_distance(f, pair.g_minus)
    certified = Interval(min(d_p.low, d_m.low), max(d_p.high, d_m.high))

    out = CounterexamplePair(
        g_plus=pair.g_plus,
        g_minus=pair.g_minus,
        image_plus=pair.image_plus,
        image_minus=pair.image_minus,
        family=fam,
        meta=PairMeta(mode="density", a=fam.a, delta=delta, theta=fam.theta,
                      lambda0=fam.lambda0, p=p_poly, epsilon=epsilon),
    )
    out.certificates.symbolic_agreement = True
    out.certificates.distance = certified
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_agreement(pair: CounterexamplePair, window: Window = Window(),
                     tol: float = 1e-10, oracle: bool = False,
                     oracle_tol: float = 1e-9) -> AgreementReport:
    """Sample |G g+| and |G g-| on the family inside the window.

    Fast path evaluates the cached Fock images; oracle mode integrates the
    closed forms in the time domain (pick tol compatible with oracle_tol,
    the per-point quadrature accuracy). Pass criterion:
    max_abs_diff <= tol * (1 + max sampled magnitude).
    """
    fam = pair.family
    if window.n_range is not None:
        fam = LineFamily(fam.a, fam.theta, fam.lambda0, window.n_range)
    z, xs, ws = sample_arrays(fam, window.x_range, window.x_step)
    if oracle:
        mags = []
        for sig in ("+", "-"):
            closed = pair.closed_form(sig)
            vals = np.empty(len(z), dtype=np.float64)
            # group by x: one batched quadrature per abscissa
            order = np.lexsort((ws, xs))
            xs_sorted = xs[order]
            for x in np.unique(xs):
                idx = order[np.searchsorted(xs_sorted, x, "left"):
                            np.searchsorted(xs_sorted, x, "right")]
                vals[idx] = np.abs(gabor_quadrature_batch(closed, float(x), ws[idx], oracle_tol))
            mags.append(vals)
        m_p, m_m = mags
    else:
        m_p = np.abs(gabor_eval(pair.image_plus, xs, ws))
        m_m = np.abs(gabor_eval(pair.image_minus, xs, ws))
    diff = np.abs(m_p - m_m)
    denom = np.maximum(np.maximum(m_p, m_m), 1e-300)
    i = int(np.argmax(diff))
    max_mag = float(max(m_p.max(), m_m.max()))
    report = AgreementReport(
        max_abs_diff=float(diff[i]),
        max_rel_diff=float(np.max(diff / denom)),
        points_checked=len(z),
        passed=bool(diff[i] <= tol * (1.0 + max_mag)),
        tol=tol,
        oracle=oracle,
        argmax_point=(float(xs[i]), float(ws[i])),
        max_magnitude=max_mag,
    )
    pair.certificates.agreement = report
    return report


def verify_distinct(pair: CounterexamplePair, tol_dist: float = 1e-8,
                    window: Window = Window()) -> DistinctReport:
    """Certify the pair is not a global-phase rotation.

    Passes iff the phase-aligned distance (less both tail bounds) exceeds
    tol_dist. Additionally reports a closed-form root witness: a zero of
    the + image where the - image stays away from zero, taken from the
    multiplier root of smallest |line offset| that lies inside the window
    and misses the roots of the common factor.
    """
    alpha, dist = signals.phase_distance(pair.g_plus, pair.g_minus)
    dist_low = dist - pair.g_plus.tail_bound - pair.g_minus.tail_bound
    passed = dist_low > tol_dist

    meta = pair.meta
    witness = None
    wp = wm = None
    ks = [0, -1, 1, -2, 2, -3, 3]
    roots = fock.multiplier_roots(meta.delta, meta.a, "+", meta.theta, meta.lambda0, ks)
    x0, x1 = window.x_range
    if window.n_range is not None:
        n_lo, n_hi = window.n_range
    else:
        n_lo, n_hi = pair.family.n_range
    for z in roots:
        # window check in family coordinates
        q = (z.conjugate() - complex(meta.lambda0)) * cmath.exp(-1j * meta.theta)
        if not (x0 - 1e-9 <= q.real <= x1 + 1e-9):
            continue
        if not (meta.a * n_lo - 1e-9 <= q.imag <= meta.a * n_hi + 1e-9):
            continue
        vp = abs(fock.evaluate_weighted(pair.image_plus, z))
        vm = abs(fock.evaluate_weighted(pair.image_minus, z))
        if vm > 1e-10 and vp <= 1e-8 * vm:
            witness, wp, wm = z, vp, vm
            break
    report = DistinctReport(
        phase_distance=dist,
        alpha=alpha,
        passed=bool(passed),
        root_witness=witness,
        witness_plus_mag=wp,
        witness_minus_mag=wm,
    )
    pair.certificates.phase_distance = dist
    return report
