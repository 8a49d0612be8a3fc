import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial.hermite import hermgauss

from gul import fock, signals
from gul.signals import (ClosedFormSignal, TimeSignal, bargmann_quadrature,
                         bargmann_series, closed_gaussian, closed_hermite,
                         closed_hyperbolic, hermite_eval, hermite_signal,
                         inverse_bargmann, l2_distance, phase_distance,
                         translate)


# ---------------------------------------------------------------------------
# hermite_eval
# ---------------------------------------------------------------------------

def test_hermite_zero_is_normalized_gaussian():
    assert hermite_eval(0, 0.0) == pytest.approx(2.0 ** 0.25, abs=1e-15)
    assert hermite_eval(0, 1.3) == pytest.approx(2.0 ** 0.25 * math.exp(-math.pi * 1.69), rel=1e-14)


def test_hermite_one_odd():
    assert hermite_eval(1, 0.0) == 0.0


def test_hermite_cap_enforced():
    with pytest.raises(ValueError):
        hermite_eval(65, 0.0)
    with pytest.raises(ValueError):
        hermite_eval(-1, 0.0)
    # explicit override admits higher orders
    assert math.isfinite(hermite_eval(80, 0.5, n_max=128))


def test_hermite_five_matches_bargmann_oracle():
    # quadrature of B H_5 at a few z equals e_5(z)
    e5 = fock.normalized_monomial(5)
    for z in (1.0, 1j, 1 + 1j):
        q = bargmann_quadrature(closed_hermite(5), z, 1e-10)
        assert abs(q - fock.evaluate(e5, z)) < 1e-8


def test_hermite_orthonormal_by_quadrature():
    # Gauss-Hermite nodes x = sqrt(2 pi) t absorb the e^{-x^2} weight
    x, w = hermgauss(120)
    t = x / math.sqrt(2.0 * math.pi)
    bank = np.array([hermite_eval(n, t) for n in range(9)])
    # undo the weight: H_n(t) = e^{-pi t^2} * (polynomial), e^{-x^2} = e^{-2 pi t^2}
    poly = bank * np.exp(math.pi * t**2)
    gram = (poly * w) @ poly.T / math.sqrt(2.0 * math.pi)
    np.testing.assert_allclose(gram, np.eye(9), atol=1e-8)


def test_hermite_high_order_stability():
    # recurrence vs explicit formula through physicists' polynomials at n=40
    from numpy.polynomial.hermite import hermval
    n = 40
    t = np.linspace(-2.5, 2.5, 11)
    c = np.zeros(n + 1)
    c[n] = 1.0
    htilde = hermval(math.sqrt(2.0 * math.pi) * t, c)
    expected = (2.0 ** 0.25) * np.exp(-math.pi * t**2) * htilde \
        / (2.0 ** (n / 2.0) * math.sqrt(math.factorial(n)))
    got = hermite_eval(n, t)
    np.testing.assert_allclose(got, expected, rtol=1e-10, atol=1e-12)


# ---------------------------------------------------------------------------
# bargmann series / inverse
# ---------------------------------------------------------------------------

def test_series_gaussian_is_one():
    assert bargmann_series(hermite_signal(0)) == fock.ONE


def test_series_hermite_is_monomial():
    assert bargmann_series(hermite_signal(5)).isclose(fock.normalized_monomial(5))


def test_series_zero_signal():
    assert bargmann_series(TimeSignal(np.zeros(3))) == fock.ZERO


def test_inverse_of_one_is_gaussian():
    sig = inverse_bargmann(fock.ONE, 1e-12)
    assert sig.tail_bound == 0.0
    np.testing.assert_allclose(sig.coeffs, [1.0])


def test_inverse_of_e5_is_h5():
    sig = inverse_bargmann(fock.normalized_monomial(5), 1e-12)
    np.testing.assert_allclose(sig.coeffs, hermite_signal(5).coeffs, atol=1e-15)


def test_inverse_roundtrip_random_polynomials():
    rng = np.random.default_rng(3)
    for _ in range(5):
        coeffs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
        P = fock.from_series_coeffs(coeffs)
        back = bargmann_series(inverse_bargmann(P, 1e-14))
        assert back.isclose(P, rtol=1e-12, atol=1e-12)


def test_inverse_rejects_bad_tol():
    with pytest.raises(ValueError):
        inverse_bargmann(fock.ONE, 0.0)


# ---------------------------------------------------------------------------
# bargmann_quadrature
# ---------------------------------------------------------------------------

def test_quadrature_gaussian_is_one():
    assert abs(bargmann_quadrature(closed_gaussian(), 1 + 1j, 1e-10) - 1.0) < 1e-10


def test_quadrature_translated_gaussian():
    # B(T_1 phi)(i) = e^{pi i - pi/2}
    got = bargmann_quadrature(closed_gaussian(1.0), 1j, 1e-10)
    assert got == pytest.approx(cmath.exp(1j * math.pi - math.pi / 2), abs=1e-10)


def test_quadrature_hyperbolic_matches_closed_image(base_half):
    got = bargmann_quadrature(closed_hyperbolic(0.5, +1), 0.0, 1e-10)
    expected = fock.evaluate(base_half.image_plus, 0.0)
    assert abs(got - expected) < 1e-8 * abs(expected)


def test_quadrature_rejects_overflow():
    with pytest.raises(OverflowError):
        bargmann_quadrature(closed_gaussian(), 40j, 1e-10)


def test_quadrature_rejects_too_small_tol():
    with pytest.raises(ValueError):
        bargmann_quadrature(closed_gaussian(), 0.0, 1e-13)


# ---------------------------------------------------------------------------
# translate
# ---------------------------------------------------------------------------

def test_translate_identity():
    f = TimeSignal(np.array([0.5, -0.5j, 1.0]))
    assert translate(f, 0.0) is f


def test_translate_gaussian_covariance():
    # image of T_1 phi must match e^{pi z - pi/2} from the covariance rule
    shifted = translate(hermite_signal(0), 1.0, tol=1e-12)
    img = bargmann_series(shifted)
    for z in (0.0, 0.5 - 0.3j, 1j):
        expected = cmath.exp(math.pi * z - math.pi / 2)
        assert fock.evaluate(img, z) == pytest.approx(expected, rel=1e-9, abs=1e-9)
    oracle = bargmann_quadrature(closed_gaussian(1.0), 0.5 - 0.3j, 1e-10)
    assert fock.evaluate(img, 0.5 - 0.3j) == pytest.approx(oracle, rel=1e-8)


def test_translate_group_action():
    f = TimeSignal(np.array([0.3, -0.2j, 0.5, 0.1 + 0.1j]))
    one_hop = translate(f, 0.3)
    two_hops = translate(translate(f, 0.7), -0.4)
    assert l2_distance(one_hop, two_hops).high < 1e-10


def test_translate_closed_form_shift():
    g = closed_gaussian()
    assert translate(g, 2.0).shift == 2.0
    lc = signals.closed_lincomb([(1.0, closed_hermite(2)), (2j, closed_gaussian())])
    moved = translate(lc, -1.0)
    np.testing.assert_allclose(moved(np.array([0.5])), lc(np.array([1.5])), rtol=1e-14)


def test_translate_hyperbolic_preserves_line_agreement():
    # T_u h± keep equal Gabor magnitudes on the family lines
    from gul.gabor import gabor_quadrature
    a = 0.5
    u = -(a / math.pi) * math.log(0.3)
    hp = closed_hyperbolic(a, +1, shift=u)
    hm = closed_hyperbolic(a, -1, shift=u)
    for x in (-0.5, 0.8):
        for n in (-1, 0, 2):
            mp = abs(gabor_quadrature(hp, x, a * n, 1e-10))
            mm = abs(gabor_quadrature(hm, x, a * n, 1e-10))
            assert abs(mp - mm) < 1e-9 * (1.0 + mp)


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def test_l2_distance_self_zero():
    f = TimeSignal(np.array([1.0, 2.0j]), tail_bound=1e-12)
    d = l2_distance(f, f)
    assert d.low == 0.0
    assert d.high <= 2.1e-12


def test_l2_distance_orthonormal_pair():
    d = l2_distance(hermite_signal(0), hermite_signal(1))
    assert d.low == pytest.approx(math.sqrt(2.0), abs=1e-15)
    assert d.high == pytest.approx(math.sqrt(2.0), abs=1e-15)


def test_l2_distance_reference_perturbation(reference_pair):
    # delta ||e_5 e^{pi z/a}||_F bounds the H5 -> g+ distance
    d = l2_distance(hermite_signal(5), reference_pair.g_plus)
    scale = fock.norm(fock.multiply(
        fock.normalized_monomial(5),
        fock.FockFunction.from_atoms([fock.FockAtom(1.0, 0, math.pi / 0.25)]),
    ))
    predicted = reference_pair.meta.delta * scale
    assert d.high < 1e-2 or predicted >= d.low  # small perturbation regime
    assert d.mid == pytest.approx(predicted, rel=1e-9)


def test_phase_distance_pure_phase():
    f = TimeSignal(np.array([0.7, -0.1j, 0.4]))
    alpha, dist = phase_distance(f, TimeSignal(f.coeffs * cmath.exp(1j * math.pi / 3)))
    assert alpha == pytest.approx(math.pi / 3, abs=1e-12)
    assert dist <= 1e-12


def test_phase_distance_orthogonal():
    _, dist = phase_distance(hermite_signal(0), hermite_signal(1))
    assert dist == pytest.approx(math.sqrt(2.0), abs=1e-14)


def test_phase_distance_reference_pair(reference_pair):
    _, dist = phase_distance(reference_pair.g_plus, reference_pair.g_minus)
    assert dist > 1e-3  # bounded away from zero


@given(st.sampled_from([0.0, 1.0, math.pi, 5.0]))
@settings(max_examples=8, deadline=None)
def test_phase_distance_recovers_alpha(alpha):
    f = TimeSignal(np.array([0.5, 0.2 - 0.1j, -0.3j]))
    got_alpha, dist = phase_distance(f, TimeSignal(f.coeffs * cmath.exp(1j * alpha)))
    wrapped = abs((got_alpha - alpha + math.pi) % (2 * math.pi) - math.pi)
    assert wrapped <= 1e-12
    assert dist <= 1e-12


# ---------------------------------------------------------------------------
# oracle agreement across the transform
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(0, 9, 2))
def test_series_vs_quadrature_on_disk(n):
    img = bargmann_series(hermite_signal(n))
    rng = np.random.default_rng(n)
    for _ in range(3):
        z = complex(*rng.uniform(-3 / math.sqrt(2), 3 / math.sqrt(2), 2))
        q = bargmann_quadrature(closed_hermite(n), z, 1e-9)
        assert abs(fock.evaluate(img, z) - q) <= 1e-8
