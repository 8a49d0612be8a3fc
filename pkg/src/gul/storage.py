"""On-disk formats: coefficient files, run manifests, CSV grids, PGM images.

All writers are atomic (temp file + rename) and deterministic. Formats:

* signal / polynomial coefficients: one ``n re im`` triple per line;
* manifest: line-oriented ``key = value``, UTF-8, LF endings;
* spectrogram CSV: header ``x,omega,magnitude``, row-major with x outer,
  17 significant digits (lossless float64 round trip);
* PGM: ASCII ``P2``, 16-bit gray, linear map from [0, grid max].
"""

from __future__ import annotations

import math
import os
import tempfile
from typing import Dict, Optional, Tuple

import numpy as np

from . import fock, signals
from .counterexamples import Certificates, CounterexamplePair, PairMeta
from .gabor import LineFamily, SpectrogramGrid
from .signals import TimeSignal

FORMAT_VERSION = "1"


def atomic_write_text(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# coefficient files
# ---------------------------------------------------------------------------

def signal_text(sig: TimeSignal) -> str:
    lines = [f"{n} {_fmt(c.real)} {_fmt(c.imag)}" for n, c in enumerate(sig.coeffs)]
    return "\n".join(lines) + "\n"


def write_signal(path: str, sig: TimeSignal) -> None:
    atomic_write_text(path, signal_text(sig))


def read_signal(path: str, tail_bound: float = 0.0) -> TimeSignal:
    coeffs: Dict[int, complex] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            parts = raw.split()
            if len(parts) != 3:
                raise ValueError(f"malformed coefficient line: {raw!r}")
            n = int(parts[0])
            if n < 0:
                raise ValueError("negative basis index in coefficient file")
            coeffs[n] = complex(float(parts[1]), float(parts[2]))
    if not coeffs:
        raise ValueError(f"empty coefficient file: {path}")
    arr = np.zeros(max(coeffs) + 1, dtype=np.complex128)
    for n, c in coeffs.items():
        arr[n] = c
    return TimeSignal(arr, tail_bound)


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------

def manifest_text(entries: Dict[str, object]) -> str:
    lines = []
    for key, value in entries.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = _fmt(value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def write_manifest(path: str, entries: Dict[str, object]) -> None:
    atomic_write_text(path, manifest_text(entries))


def read_manifest(path: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            if "=" not in raw:
                raise ValueError(f"malformed manifest line: {raw!r}")
            key, value = raw.split("=", 1)
            out[key.strip()] = value.strip()
    return out


# ---------------------------------------------------------------------------
# spectrogram grids
# ---------------------------------------------------------------------------

def grid_csv_text(grid: SpectrogramGrid) -> str:
    xs = grid.x_axis
    ws = grid.w_axis
    lines = ["x,omega,magnitude"]
    for i, x in enumerate(xs):
        for j, w in enumerate(ws):
            lines.append(f"{_fmt(x)},{_fmt(w)},{_fmt(grid.values[i, j])}")
    return "\n".join(lines) + "\n"


def write_grid_csv(path: str, grid: SpectrogramGrid) -> None:
    atomic_write_text(path, grid_csv_text(grid))


def read_grid_csv(path: str) -> SpectrogramGrid:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "x,omega,magnitude":
            raise ValueError(f"unexpected CSV header: {header!r}")
        xs, ws, vals = [], [], []
        for raw in fh:
            raw = raw.strip()
            if not raw:
                continue
            sx, sw, sv = raw.split(",")
            xs.append(float(sx))
            ws.append(float(sw))
            vals.append(float(sv))
    ux = sorted(set(xs))
    uw = sorted(set(ws))
    if len(vals) != len(ux) * len(uw):
        raise ValueError("CSV grid is not rectangular")
    arr = np.array(vals, dtype=np.float64).reshape(len(ux), len(uw))
    x_step = ux[1] - ux[0] if len(ux) > 1 else 1.0
    w_step = uw[1] - uw[0] if len(uw) > 1 else 1.0
    return SpectrogramGrid(ux[0], ux[-1], x_step, uw[0], uw[-1], w_step, arr)


def pgm_text(grid: SpectrogramGrid) -> str:
    """ASCII P2, 16-bit gray; rows scan omega from top (w_max) down."""
    vmax = float(np.max(grid.values)) if grid.values.size else 0.0
    n_x, n_w = grid.values.shape
    if vmax > 0:
        pix = np.rint(grid.values / vmax * 65535.0).astype(np.int64)
    else:
        pix = np.zeros((n_x, n_w), dtype=np.int64)
    lines = ["P2", f"{n_x} {n_w}", "65535"]
    for j in range(n_w - 1, -1, -1):
        lines.append(" ".join(str(int(pix[i, j])) for i in range(n_x)))
    return "\n".join(lines) + "\n"


def write_pgm(path: str, grid: SpectrogramGrid) -> None:
    atomic_write_text(path, pgm_text(grid))


# ---------------------------------------------------------------------------
# pair directories
# ---------------------------------------------------------------------------

PLUS_FILE = "g_plus.txt"
MINUS_FILE = "g_minus.txt"
P_FILE = "p_fock.txt"
MANIFEST_FILE = "manifest.txt"


def _poly_series(p: fock.FockFunction) -> TimeSignal:
    """Store a polynomial factor through its e_n coefficients."""
    series = fock.monomial_coeffs(p, 1e-300) if p.is_polynomial else None
    if series is None:
        raise ValueError("only polynomial factors are persisted")
    return TimeSignal(series.coeffs, 0.0)


def save_pair(directory: str, pair: CounterexamplePair,
              extra: Optional[Dict[str, object]] = None) -> Dict[str, object]:
    os.makedirs(directory, exist_ok=True)
    write_signal(os.path.join(directory, PLUS_FILE), pair.g_plus)
    write_signal(os.path.join(directory, MINUS_FILE), pair.g_minus)
    files = [PLUS_FILE, MINUS_FILE]
    meta = pair.meta
    entries: Dict[str, object] = {
        "format_version": FORMAT_VERSION,
        "mode": meta.mode,
        "a": meta.a,
        "delta": meta.delta,
        "theta": meta.theta,
        "lambda0_re": complex(meta.lambda0).real,
        "lambda0_im": complex(meta.lambda0).imag,
        "shift": meta.shift,
        "n_lo": pair.family.n_range[0],
        "n_hi": pair.family.n_range[1],
        "tail_bound_plus": pair.g_plus.tail_bound,
        "tail_bound_minus": pair.g_minus.tail_bound,
        "symbolic_agreement": pair.certificates.symbolic_agreement,
    }
    if meta.epsilon is not None:
        entries["epsilon"] = meta.epsilon
    if pair.certificates.distance is not None:
        entries["distance_low"] = pair.certificates.distance.low
        entries["distance_high"] = pair.certificates.distance.high
    if meta.p is not None and meta.p.is_polynomial:
        write_signal(os.path.join(directory, P_FILE), _poly_series(meta.p))
        files.append(P_FILE)
    if extra:
        entries.update(extra)
    for i, name in enumerate(files):
        entries[f"output_file_{i}"] = name
    write_manifest(os.path.join(directory, MANIFEST_FILE), entries)
    return entries


def load_pair(directory: str) -> CounterexamplePair:
    """Rebuild a pair from disk.

    Fock images are reconstructed from the stored signals themselves (so
    verification certifies the bytes on disk); construction metadata is
    kept for the root-witness bookkeeping.
    """
    mf = read_manifest(os.path.join(directory, MANIFEST_FILE))
    g_p = read_signal(os.path.join(directory, PLUS_FILE),
                      float(mf.get("tail_bound_plus", 0.0)))
    g_m = read_signal(os.path.join(directory, MINUS_FILE),
                      float(mf.get("tail_bound_minus", 0.0)))
    lam = complex(float(mf.get("lambda0_re", 0.0)), float(mf.get("lambda0_im", 0.0)))
    fam = LineFamily(
        a=float(mf["a"]),
        theta=float(mf.get("theta", 0.0)),
        lambda0=lam,
        n_range=(int(mf.get("n_lo", -20)), int(mf.get("n_hi", 20))),
    )
    p_path = os.path.join(directory, P_FILE)
    p = None
    if os.path.exists(p_path):
        p = fock.from_series_coeffs(read_signal(p_path).coeffs)
    meta = PairMeta(
        mode=mf.get("mode", "unknown"),
        a=fam.a,
        delta=float(mf.get("delta", 1.0)),
        theta=fam.theta,
        lambda0=lam,
        p=p,
        epsilon=float(mf["epsilon"]) if "epsilon" in mf else None,
        shift=float(mf.get("shift", 0.0)),
    )
    certs = Certificates(
        symbolic_agreement=mf.get("symbolic_agreement", "false") == "true",
    )
    if "distance_low" in mf and "distance_high" in mf:
        certs.distance = signals.Interval(float(mf["distance_low"]), float(mf["distance_high"]))
    return CounterexamplePair(
        g_plus=g_p,
        g_minus=g_m,
        image_plus=signals.bargmann_series(g_p),
        image_minus=signals.bargmann_series(g_m),
        family=fam,
        meta=meta,
        certificates=certs,
    )
