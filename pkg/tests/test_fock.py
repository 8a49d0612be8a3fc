import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gul import fock
from gul.fock import FockAtom, FockFunction
from gul.oracles import fock_inner_quadrature


def en(n):
    return fock.normalized_monomial(n)


def expo(beta, coeff=1.0):
    return FockFunction.from_atoms([FockAtom(coeff, 0, beta)])


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def test_eval_constant_function():
    one = fock.ONE
    for z in (0.0, 1.5 - 2j, 10j):
        assert fock.evaluate(one, z) == 1.0


def test_eval_normalized_monomial():
    # e_5(1) = (pi^5/5!)^(1/2)
    assert fock.evaluate(en(5), 1.0) == pytest.approx((math.pi**5 / 120.0) ** 0.5, abs=1e-14)


def test_eval_multiplier_closed_form_root():
    # 1 + i delta e^{pi z / a} = 0 at z = (a/pi) log(1/delta) + i a/2
    a, delta = 0.25, math.exp(-math.pi)
    H = fock.multiplier(delta, a, "+")
    z_star = (a / math.pi) * math.log(1.0 / delta) + 0.5j * a
    assert z_star == pytest.approx(0.25 + 0.125j)
    assert abs(fock.evaluate(H, z_star)) < 1e-12


def test_eval_vectorized_matches_scalar():
    F = FockFunction.from_atoms(
        [FockAtom(1.2 - 0.3j, 2, 0.5 + 0.1j), FockAtom(-0.7j, 0, -1.0)]
    )
    zs = np.array([0.3 + 0.2j, -1.0, 2.0j])
    vec = fock.evaluate(F, zs)
    for i, z in enumerate(zs):
        assert vec[i] == pytest.approx(fock.evaluate(F, complex(z)), rel=1e-14)


def test_eval_weighted_matches_plain_at_moderate_z():
    F = en(3) + expo(1.0, 0.5j)
    z = 1.2 - 0.8j
    expected = fock.evaluate(F, z) * math.exp(-0.5 * math.pi * abs(z) ** 2)
    assert fock.evaluate_weighted(F, z) == pytest.approx(expected, rel=1e-13)


# ---------------------------------------------------------------------------
# inner product / norm
# ---------------------------------------------------------------------------

def test_monomials_orthonormal():
    for n in range(9):
        for m in range(9):
            val = fock.inner(en(n), en(m))
            assert val == pytest.approx(1.0 if n == m else 0.0, abs=1e-12)


def test_kernel_identity_example():
    # (e^z, e^z) = e^{1/pi}; series oracle sum (1/pi)^n / n!
    series = sum((1 / math.pi) ** k / math.factorial(k) for k in range(40))
    got = fock.inner(expo(1.0), expo(1.0))
    assert got.real == pytest.approx(series, abs=1e-12)
    assert got.imag == pytest.approx(0.0, abs=1e-14)


def test_kernel_identity_closed_vs_series():
    # |inner(e^{bz}, e^{gz}) - series| <= 1e-10 over |b|,|g| <= 2 pi
    rng = np.random.default_rng(7)
    for _ in range(25):
        b = complex(*rng.uniform(-2 * math.pi / math.sqrt(2), 2 * math.pi / math.sqrt(2), 2))
        g = complex(*rng.uniform(-2 * math.pi / math.sqrt(2), 2 * math.pi / math.sqrt(2), 2))
        w = b * g.conjugate() / math.pi
        series = sum(w**k / math.factorial(k) for k in range(80))
        assert abs(fock.inner(expo(b), expo(g)) - series) <= 1e-10


def test_kernel_identity_vs_quadrature():
    rng = np.random.default_rng(11)
    for _ in range(5):
        b = complex(*rng.uniform(-math.sqrt(2), math.sqrt(2), 2))
        g = complex(*rng.uniform(-math.sqrt(2), math.sqrt(2), 2))
        closed = fock.inner(expo(b), expo(g))
        quad = fock_inner_quadrature(expo(b), expo(g))
        assert abs(closed - quad) <= 1e-8


def test_unit_constant_inner():
    assert fock.inner(fock.ONE, fock.ONE) == pytest.approx(1.0, abs=1e-15)


def test_norm_zero_iff_zero():
    assert fock.norm(fock.ZERO) == 0.0
    assert fock.norm(en(4)) == pytest.approx(1.0, abs=1e-12)


def test_norm_monomial_times_exponential_vs_quadrature():
    # z^5-type atom against a fast exponential; relative cross-check
    a = 0.25
    F = fock.multiply(en(5), expo(math.pi / a))
    closed = fock.norm(F)
    quad = math.sqrt(abs(fock_inner_quadrature(F, F)))
    assert math.isfinite(closed) and closed > 0
    assert abs(closed - quad) <= 1e-6 * closed


def test_inner_conjugate_symmetry_and_linearity():
    F = en(2) + expo(0.7 + 0.2j, 1.5)
    G = en(1) + expo(-0.4j, 2.0 - 1.0j)
    assert fock.inner(F, G) == pytest.approx(fock.inner(G, F).conjugate(), rel=1e-12)
    lhs = fock.inner(F.scale(2.0 - 1.0j) + G, G)
    rhs = (2.0 - 1.0j) * fock.inner(F, G) + fock.inner(G, G)
    assert lhs == pytest.approx(rhs, rel=1e-12)


# ---------------------------------------------------------------------------
# multiply
# ---------------------------------------------------------------------------

def test_multiply_identity():
    F = en(3) + expo(1.0 - 0.5j, 0.3)
    assert fock.multiply(F, fock.ONE) == F


def test_multiply_e1_e1_is_sqrt2_e2():
    prod = fock.multiply(en(1), en(1))
    assert prod.isclose(en(2).scale(math.sqrt(2.0)), rtol=1e-14)


def test_multiply_distributes_over_multiplier():
    a, delta = 0.25, 1e-3
    prod = fock.multiply(en(5), fock.multiplier(delta, a, "+"))
    assert len(prod.atoms) == 2
    powers = sorted(atom.power for atom in prod.atoms)
    assert powers == [5, 5]
    rates = sorted(abs(atom.expo) for atom in prod.atoms)
    assert rates[0] == 0.0
    assert rates[1] == pytest.approx(math.pi / a)


_dyadic = st.integers(-8, 8).map(lambda k: k / 16.0)
_dyadic_atom = st.builds(
    FockAtom,
    coeff=st.builds(complex, _dyadic, _dyadic),
    power=st.integers(0, 3),
    expo=st.builds(complex, _dyadic, _dyadic),
)
_dyadic_fn = st.lists(_dyadic_atom, min_size=0, max_size=3).map(FockFunction.from_atoms)


@given(_dyadic_fn, _dyadic_fn)
@settings(max_examples=60, deadline=None)
def test_multiply_commutative_exact(F, G):
    assert fock.multiply(F, G) == fock.multiply(G, F)


@given(_dyadic_fn, _dyadic_fn, _dyadic_fn)
@settings(max_examples=60, deadline=None)
def test_multiply_associative_on_dyadics(F, G, H):
    # dyadic data keeps the float arithmetic exact, so canonical forms match
    assert fock.multiply(fock.multiply(F, G), H) == fock.multiply(F, fock.multiply(G, H))


# ---------------------------------------------------------------------------
# multiplier
# ---------------------------------------------------------------------------

def test_multiplier_at_origin():
    H = fock.multiplier(0.1, 0.5, "+")
    assert fock.evaluate(H, 0.0) == pytest.approx(1.0 + 0.1j, abs=1e-15)


def test_multiplier_rejects_bad_parameters():
    with pytest.raises(ValueError):
        fock.multiplier(0.0, 1.0, "+")
    with pytest.raises(ValueError):
        fock.multiplier(0.1, -1.0, "+")
    with pytest.raises(ValueError):
        fock.multiplier(0.1, 1.0, "x")


@pytest.mark.parametrize("a", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("delta", [1e-1, 1e-6])
def test_multiplier_magnitude_agreement_on_lines(a, delta):
    Hp = fock.multiplier(delta, a, "+")
    Hm = fock.multiplier(delta, a, "-")
    xs = np.linspace(-5.0, 5.0, 200)
    for n in range(-2, 3):
        z = xs + 1j * a * n
        mp = np.abs(fock.evaluate(Hp, z))
        mm = np.abs(fock.evaluate(Hm, z))
        assert np.all(np.abs(mp - mm) < 1e-12 * (1.0 + mp))


def test_multiplier_magnitude_agreement_rotated_offset():
    # theta = pi/2, lambda0 = i: sample the rotated-translated line family
    a, delta, theta, lam = 0.5, 1e-2, math.pi / 2, 1j
    Hp = fock.multiplier(delta, a, "+", theta, lam)
    Hm = fock.multiplier(delta, a, "-", theta, lam)
    xs = np.linspace(-3.0, 3.0, 100)
    for n in range(-2, 3):
        z = complex(lam).conjugate() + cmath.exp(-1j * theta) * (xs + 1j * a * n)
        mp = np.abs(fock.evaluate(Hp, z))
        mm = np.abs(fock.evaluate(Hm, z))
        assert np.max(np.abs(mp - mm) / (1.0 + mp)) < 1e-12


def test_multiplier_off_line_magnitudes_differ():
    a, delta = 0.5, 0.1
    Hp = fock.multiplier(delta, a, "+")
    Hm = fock.multiplier(delta, a, "-")
    z = 1.0 + 1j * a / 2  # half-spacing line
    assert abs(abs(fock.evaluate(Hp, z)) - abs(fock.evaluate(Hm, z))) > 1e-3


def test_multiplier_roots_no_common_zero():
    # roots of one sign stay away from roots of the other:
    # at any root of H+, delta*e^{pi z/a} = i so H- = 2 there
    for a, delta in [(0.25, 1e-3), (1.0, 0.2)]:
        Hp = fock.multiplier(delta, a, "+")
        Hm = fock.multiplier(delta, a, "-")
        for z in fock.multiplier_roots(delta, a, "+", ks=range(-3, 4)):
            assert abs(fock.evaluate(Hp, z)) < 1e-10
            lower = 2.0 * delta * math.exp(math.pi * z.real / a) * (1.0 - 1e-9)
            assert abs(fock.evaluate(Hm, z)) >= lower > 0


# ---------------------------------------------------------------------------
# monomial_coeffs
# ---------------------------------------------------------------------------

def test_monomial_coeffs_basis_element():
    series = fock.monomial_coeffs(en(3), 1e-12)
    assert series.tail_bound == 0.0
    expected = np.zeros(4)
    expected[3] = 1.0
    np.testing.assert_allclose(series.coeffs, expected, atol=1e-15)


def test_monomial_coeffs_exponential_norm():
    F = expo(1.0)
    series = fock.monomial_coeffs(F, 1e-10)
    target = math.exp(1.0 / math.pi)  # norm^2 from the kernel identity
    assert abs(series.norm_squared_lower - target) <= 2 * series.tail_bound * math.sqrt(target) + 1e-12


def test_monomial_coeffs_multiplier_isometry():
    # the norm here is ~8.2e7, so the float-rounding allowance must scale
    F = fock.multiplier(1e-3, 0.25, "+")
    series = fock.monomial_coeffs(F, 1e-8)
    closed = fock.norm(F)
    slack = series.tail_bound + 1e-12 * (1.0 + closed)
    assert abs(math.sqrt(series.norm_squared_lower) - closed) <= slack


@pytest.mark.parametrize("tol", [1e-4, 1e-8, 1e-12])
def test_monomial_coeffs_certified_tail(tol):
    # isometry of the expansion: norm recovered within the certified tail
    F = FockFunction.from_atoms(
        [FockAtom(0.5 - 1.0j, 2, 1.5j), FockAtom(2.0, 0, -0.8 + 0.3j)]
    )
    series = fock.monomial_coeffs(F, tol)
    assert series.tail_bound <= tol
    n2 = fock.norm(F) ** 2
    assert abs(n2 - series.norm_squared_lower) <= series.tail_bound**2 \
        + 2 * series.tail_bound * math.sqrt(n2) + 1e-12


def test_monomial_coeffs_rejects_bad_tol():
    with pytest.raises(ValueError):
        fock.monomial_coeffs(fock.ONE, 0.0)


# ---------------------------------------------------------------------------
# translation
# ---------------------------------------------------------------------------

def test_translate_argument_pointwise():
    F = en(3) + expo(0.5 - 0.2j, 1.0 + 1.0j)
    G = fock.translate_argument(F, 0.7)
    for z in (0.0, 1.0 + 0.5j, -2.0j):
        assert fock.evaluate(G, z) == pytest.approx(fock.evaluate(F, z - 0.7), rel=1e-12)


def test_bargmann_translate_gauge():
    # B(T_u f)(z) = Bf(z-u) e^{pi u z} e^{-pi u^2/2}
    F = en(2)
    u = 0.6
    G = fock.bargmann_translate(F, u)
    z = 0.9 - 0.4j
    expected = fock.evaluate(F, z - u) * cmath.exp(math.pi * u * z) * math.exp(-0.5 * math.pi * u * u)
    assert fock.evaluate(G, z) == pytest.approx(expected, rel=1e-12)


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

def test_canonical_merge_and_zero_drop():
    F = FockFunction.from_atoms([
        FockAtom(1.0, 2, 0.5), FockAtom(-1.0, 2, 0.5), FockAtom(3.0, 0, 0.0),
    ])
    assert len(F.atoms) == 1
    assert F.atoms[0].power == 0


def test_canonical_ordering_deterministic():
    atoms = [FockAtom(1.0, 1, 1.0), FockAtom(1.0, 0, -1.0), FockAtom(1.0, 0, 1.0)]
    F = FockFunction.from_atoms(atoms)
    G = FockFunction.from_atoms(reversed(atoms))
    assert F == G
    keys = [(a.expo.real, a.expo.imag, a.power) for a in F.atoms]
    assert keys == sorted(keys)
