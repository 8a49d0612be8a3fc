"""gul: counterexample lab for sampled Gabor phase retrieval.

Constructs, certifies and tabulates pairs of square-integrable signals
whose Gabor magnitudes agree on lattices / families of parallel lines
while the signals differ beyond a global phase, plus a numerical probe of
the Gaussian-uniqueness phenomenon on dense quadratic lattices.
"""

__version__ = "0.1.0"

from .fock import (FockAtom, FockFunction, from_series_coeffs, inner,
                   monomial_coeffs, multiplier, multiply, norm,
                   normalized_monomial)
from .gabor import (GridSpec, LatticeSpec, LineFamily, SpectrogramGrid,
                    gabor_eval, gabor_quadrature, lattice_embed,
                    sample_line_family, spectrogram_grid)
from .signals import (ClosedFormSignal, Interval, TimeSignal,
                      bargmann_quadrature, bargmann_series, hermite_eval,
                      hermite_signal, inverse_bargmann, l2_distance,
                      phase_distance, translate)
from .counterexamples import (CounterexamplePair, Window, base_pair,
                              density_construct, perturb_pair, shifted_pair,
                              verify_agreement, verify_distinct)
from .probe import (ProbeConfig, ProbeResult, constant_fit_search,
                    growth_hypothesis_check, pointwise_bound_check)

__all__ = [
    "FockAtom", "FockFunction", "from_series_coeffs", "inner",
    "monomial_coeffs", "multiplier", "multiply", "norm", "normalized_monomial",
    "GridSpec", "LatticeSpec", "LineFamily", "SpectrogramGrid", "gabor_eval",
    "gabor_quadrature", "lattice_embed", "sample_line_family", "spectrogram_grid",
    "ClosedFormSignal", "Interval", "TimeSignal", "bargmann_quadrature",
    "bargmann_series", "hermite_eval", "hermite_signal", "inverse_bargmann",
    "l2_distance", "phase_distance", "translate",
    "CounterexamplePair", "Window", "base_pair", "density_construct",
    "perturb_pair", "shifted_pair", "verify_agreement", "verify_distinct",
    "ProbeConfig", "ProbeResult", "constant_fit_search",
    "growth_hypothesis_check", "pointwise_bound_check",
]
