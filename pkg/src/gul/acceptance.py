"""Acceptance criteria for the library, runnable via `gul selftest` or the
pytest suite. Each criterion is a self-contained check returning a report;
all tolerances are fixed here, none are calibrated at run time.
"""

from __future__ import annotations

import itertools
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np

from . import fock, oracles, signals, storage
from .counterexamples import (Window, base_pair, density_construct,
                              perturb_pair, verify_agreement, verify_distinct)
from .gabor import GridSpec, LineFamily, gabor_eval, gabor_quadrature_batch, spectrogram_grid
from .probe import ProbeConfig, constant_fit_search, pointwise_bound_check
from .signals import closed_gaussian, closed_hermite

REFERENCE_DELTA = math.exp(-10.0 * math.pi) / 50.0  # showcase pair parameter
REFERENCE_A = 0.25


@dataclass
class CriterionResult:
    name: str
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extras = " ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{status} {self.name} ({self.elapsed:.1f}s) {extras}".rstrip()


def _reference_pair():
    fam = LineFamily(a=REFERENCE_A)
    return perturb_pair(fock.normalized_monomial(5), fam, delta=REFERENCE_DELTA)


def criterion_1_oracle_equivalence() -> CriterionResult:
    """Fast Gabor evaluation vs direct quadrature over the signal family."""
    sigs = [(closed_gaussian(), fock.ONE)]
    for n in range(1, 9):
        sigs.append((closed_hermite(n), fock.normalized_monomial(n)))
    bp = base_pair(0.25)
    sigs.append((bp.closed_plus, bp.image_plus))
    sigs.append((bp.closed_minus, bp.image_minus))

    ws = np.arange(-3.0, 3.0001, 0.25)
    worst = 0.0
    for closed, image in sigs:
        for x in np.arange(-3.0, 3.0001, 0.25):
            q = np.abs(gabor_quadrature_batch(closed, float(x), ws, 1e-9))
            f = np.abs(gabor_eval(image, np.full_like(ws, x), ws))
            worst = max(worst, float(np.max(np.abs(q - f))))
    return CriterionResult(
        "oracle_equivalence",
        worst <= 1e-8,
        {"max_abs_diff": f"{worst:.3e}", "signals": len(sigs)},
    )


def criterion_2_reference_pair() -> CriterionResult:
    """Certification of the showcase pair (fifth Hermite factor, a = 1/4)."""
    pair = _reference_pair()
    fast = verify_agreement(pair, Window(), tol=1e-10)
    oracle = verify_agreement(pair, Window(), tol=1e-8, oracle=True, oracle_tol=1e-9)
    distinct = verify_distinct(pair)
    expected_root = (REFERENCE_A / math.pi) * math.log(1.0 / REFERENCE_DELTA) \
        + 0.5j * REFERENCE_A
    witness_ok = (
        distinct.root_witness is not None
        and abs(distinct.root_witness - expected_root) < 1e-9
    )
    passed = fast.passed and oracle.passed and distinct.passed and witness_ok
    return CriterionResult(
        "reference_pair_certification",
        passed,
        {
            "fast_max_abs": f"{fast.max_abs_diff:.3e}",
            "oracle_max_abs": f"{oracle.max_abs_diff:.3e}",
            "phase_distance": f"{distinct.phase_distance:.3e}",
            "root_witness": str(distinct.root_witness),
        },
    )


def criterion_3_off_lattice_distinctness() -> CriterionResult:
    """The showcase pair separates on the half-spacing line omega = 1/8."""
    pair = _reference_pair()
    xs = np.arange(-5.0, 5.0001, 0.1)
    ws = np.full_like(xs, 0.125)
    m_p = np.abs(gabor_eval(pair.image_plus, xs, ws))
    m_m = np.abs(gabor_eval(pair.image_minus, xs, ws))
    rel = np.abs(m_p - m_m) / np.maximum(np.maximum(m_p, m_m), 1e-300)
    i = int(np.argmax(rel))
    x_star = (1.0 / (4.0 * math.pi)) * math.log(1.0 / REFERENCE_DELTA)
    passed = rel[i] >= 1e-3 and abs(xs[i] - x_star) <= 0.2
    return CriterionResult(
        "off_lattice_distinctness",
        bool(passed),
        {"max_rel_diff": f"{rel[i]:.3e}", "at_x": f"{xs[i]:.2f}",
         "predicted_x": f"{x_star:.2f}"},
    )


def criterion_4_density_procedure() -> CriterionResult:
    """Certified epsilon-closeness of the density construction, cross-checked
    by direct time-domain quadrature of the squared difference."""
    fam = LineFamily(a=REFERENCE_A)
    f = signals.hermite_signal(5)
    passed = True
    details: Dict[str, object] = {}
    prev_high = math.inf
    for eps in (1e-1, 1e-2, 1e-3):
        pair = density_construct(f, eps, fam)
        cert = pair.certificates.distance
        ok_cert = cert is not None and cert.high < eps
        ok_mono = cert.high < prev_high
        prev_high = cert.high
        ok_quad = True
        for g in (pair.g_plus, pair.g_minus):
            n = max(len(f.coeffs), len(g.coeffs))
            dc = np.zeros(n, dtype=np.complex128)
            dc[: len(f.coeffs)] += f.coeffs
            dc[: len(g.coeffs)] -= g.coeffs
            half = math.sqrt(2.0 * n / math.pi) + 4.0
            dq = oracles.l2_norm_quadrature(
                lambda t, c=dc: signals.TimeSignal(c).time_values(t), half, 1e-14
            )
            if abs(dq - signals.l2_distance(f, g).mid) > 1e-6 or dq > eps:
                ok_quad = False
        details[f"eps_{eps:g}"] = f"high={cert.high:.3e} quad_ok={ok_quad}"
        passed = passed and ok_cert and ok_quad and ok_mono
    return CriterionResult("density_procedure", passed, details)


def criterion_5_base_pair() -> CriterionResult:
    """Hyperbolic pair: oracle magnitude agreement on the lines and
    time-domain match of the pulled-back images."""
    passed = True
    details: Dict[str, object] = {}
    ts = np.linspace(-3.0, 3.0, 50)
    for a in (0.25, 0.5):
        bp = base_pair(a)
        rep = verify_agreement(bp, Window(x_range=(-5.0, 5.0), x_step=0.1, n_range=(-2, 2)),
                               tol=1e-9, oracle=True, oracle_tol=2e-10)
        ok_lines = rep.max_abs_diff <= 1e-9
        td = max(
            float(np.max(np.abs(bp.g_plus.time_values(ts) - bp.closed_plus(ts)))),
            float(np.max(np.abs(bp.g_minus.time_values(ts) - bp.closed_minus(ts)))),
        )
        ok_time = td <= 1e-8
        details[f"a_{a:g}"] = f"line_diff={rep.max_abs_diff:.2e} time_diff={td:.2e}"
        passed = passed and ok_lines and ok_time
    return CriterionResult("base_pair", passed, details)


def criterion_6_fock_identities() -> CriterionResult:
    """Monomial norms, kernel identity vs 2-D quadrature, pointwise bound."""
    ok_norm = all(abs(fock.norm(fock.normalized_monomial(n)) - 1.0) <= 1e-12
                  for n in range(9))

    rng = np.random.default_rng(61803)
    worst_kernel = 0.0
    for _ in range(20):
        b, g = [complex(*rng.uniform(-2 / math.sqrt(2), 2 / math.sqrt(2), 2)) for _ in range(2)]
        fb = fock.FockFunction.from_atoms([fock.FockAtom(1.0, 0, b)])
        fg = fock.FockFunction.from_atoms([fock.FockAtom(1.0, 0, g)])
        quad = oracles.fock_inner_quadrature(fb, fg)
        worst_kernel = max(worst_kernel, abs(quad - fock.inner(fb, fg)))
    ok_kernel = worst_kernel <= 1e-6

    worst_slack = math.inf
    ok_bound = True
    for _ in range(100):
        n_atoms = 6
        F = fock.FockFunction.from_atoms(
            fock.FockAtom(complex(*rng.standard_normal(2)),
                          int(rng.integers(0, 7)),
                          complex(*rng.uniform(-2 / math.sqrt(2), 2 / math.sqrt(2), 2)))
            for _ in range(n_atoms)
        )
        z = complex(*rng.uniform(-3 / math.sqrt(2), 3 / math.sqrt(2), 2))
        chk = pointwise_bound_check(F, z)
        worst_slack = min(worst_slack, chk.slack)
        ok_bound = ok_bound and chk.holds
    passed = ok_norm and ok_kernel and ok_bound
    return CriterionResult(
        "fock_identities",
        passed,
        {"norm_ok": ok_norm, "kernel_vs_quad": f"{worst_kernel:.3e}",
         "min_bound_slack": f"{worst_slack:.3e}"},
    )


def criterion_7_gaussian_probe() -> CriterionResult:
    """All-near-constant verdict over the seeded configuration matrix."""
    passed = True
    worst = 0.0
    cells = 0
    for a, radius, deg in itertools.product((0.25, 0.5, 0.75), (2.0, 3.0), (4, 8)):
        res = constant_fit_search(
            ProbeConfig(a=a, radius=radius, max_degree=deg, starts=20, seed=20260808)
        )
        cells += 1
        worst = max(worst, max((m.distance_to_constants for m in res.feasible), default=0.0))
        if res.verdict != "all-near-constant":
            passed = False
    return CriterionResult(
        "gaussian_probe",
        passed and worst < 1e-4,
        {"cells": cells, "worst_feasible_distance": f"{worst:.3e}"},
    )


def criterion_8_cli_contract() -> CriterionResult:
    """construct -> verify -> spectrogram round trip plus malformed-argument
    exits, in a temporary directory."""
    from . import cli

    ok = True
    details: Dict[str, object] = {}
    with tempfile.TemporaryDirectory() as tmp:
        pair_dir = os.path.join(tmp, "pair")
        rc = cli.main([
            "construct", "--mode", "perturb", "--hermite", "5",
            "--a", str(REFERENCE_A), "--delta", repr(REFERENCE_DELTA),
            "--out", pair_dir,
        ])
        ok = ok and rc == 0 and os.path.exists(os.path.join(pair_dir, "manifest.txt"))
        details["construct_rc"] = rc

        rc = cli.main(["verify", "--pair", pair_dir])
        ok = ok and rc == 0
        details["verify_rc"] = rc
        if rc == 0:
            rep = storage.read_manifest(os.path.join(pair_dir, "verify_manifest.txt"))
            ok = ok and rep.get("agreement_pass") == "true" and rep.get("distinct_pass") == "true"

        csv_path = os.path.join(tmp, "grid.csv")
        rc = cli.main([
            "spectrogram", "--pair", pair_dir, "--which", "plus",
            "--xmin", "-3", "--xmax", "3", "--xstep", "0.25",
            "--wmin", "-3", "--wmax", "3", "--wstep", "0.25",
            "--format", "csv", "--out", csv_path,
        ])
        ok = ok and rc == 0
        details["spectrogram_rc"] = rc
        if rc == 0:
            grid = storage.read_grid_csv(csv_path)
            ok = ok and grid.values.shape == (25, 25)

        pgm_path = os.path.join(tmp, "grid.pgm")
        rc = cli.main([
            "spectrogram", "--hermite", "5",
            "--xmin", "-3", "--xmax", "3", "--xstep", "0.25",
            "--wmin", "-3", "--wmax", "3", "--wstep", "0.25",
            "--format", "pgm", "--out", pgm_path,
        ])
        ok = ok and rc == 0
        if rc == 0:
            with open(pgm_path, "r", encoding="utf-8") as fh:
                head = [fh.readline().strip() for _ in range(3)]
            ok = ok and head[0] == "P2" and head[2] == "65535"

        # malformed arguments must exit 2
        rc_bad1 = cli.main(["spectrogram", "--hermite", "5",
                            "--xmin", "3", "--xmax", "-3", "--xstep", "0.25",
                            "--wmin", "-1", "--wmax", "1", "--wstep", "0.5",
                            "--format", "pgm", "--out", os.path.join(tmp, "x.pgm")])
        rc_bad2 = cli.main(["construct", "--mode", "bogus", "--out", tmp])
        details["bad_range_rc"] = rc_bad1
        details["bad_mode_rc"] = rc_bad2
        ok = ok and rc_bad1 == 2 and rc_bad2 == 2
    return CriterionResult("cli_contract", ok, details)


CRITERIA: List[Callable[[], CriterionResult]] = [
    criterion_1_oracle_equivalence,
    criterion_2_reference_pair,
    criterion_3_off_lattice_distinctness,
    criterion_4_density_procedure,
    criterion_5_base_pair,
    criterion_6_fock_identities,
    criterion_7_gaussian_probe,
    criterion_8_cli_contract,
]


def run_all(report=print) -> List[CriterionResult]:
    results = []
    for fn in CRITERIA:
        t0 = time.time()
        try:
            res = fn()
        except Exception as exc:  # a crashed criterion is a failed criterion
            res = CriterionResult(fn.__name__, False, {"error": repr(exc)})
        res.elapsed = time.time() - t0
        results.append(res)
        if report:
            report(res.line())
    return results
