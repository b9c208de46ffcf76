"""Dual-path detection: splitting, amplification noise, and moment recovery.

A 50:50 hybrid ring divides the signal between two amplification chains
whose added noise is independent; averaged products that combine one path
with the conjugate of the other are therefore free of amplifier noise, and
from the table of I/Q cross moments <I1^n I2^m Q1^k Q2^l> up to fourth
order all signal moments <(a^dag)^n a^m> at the beam-splitter input can be
recovered.  The same module hosts the Planck-spectroscopy calibration that
ties detected power to emitter temperature, and the quadrature-variance /
Gaussian-Wigner readouts used to rule out squeezing.

The simulation operates on complex envelopes drawn from the Wigner
distribution of the input state; the intermediate frequency is carried as
metadata only (the statistics under test are envelope moments).  For
record generation and moment accumulation, work is split into fixed-size
batches with seeds keyed by (seed, stream, batch); results are therefore
identical no matter how batches are scheduled, and batch totals are
combined with compensated summation.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.constants import h as PLANCK_H, k as k_B

from .chains import CompressionPoint, compression_power, linear_to_db
from .states import (
    MAX_MOMENT_ORDER,
    MicrowaveState,
    ModeSpec,
    MomentSet,
    Ordering,
    _batch_layout,
    _batch_seed,
    moment_keys,
    ordering_convert,
    sample_envelopes,
)

__all__ = [
    "DetectionRecord",
    "CrossMomentSet",
    "PlanckSweep",
    "PlanckCalibration",
    "JpaCalibration",
    "hybrid_split",
    "simulate_detection",
    "cross_moments",
    "reconstruct_signal_moments",
    "planck_power",
    "jpa_planck_power",
    "planck_fit",
    "jpa_planck_fit",
    "quadrature_variances",
    "wigner_gaussian_contour",
    "save_record_binary",
    "load_record_binary",
    "save_record_csv",
    "load_record_csv",
]

#: Number of batches used for moment accumulation and standard errors.
ERROR_BATCHES = 20

DEFAULT_IF_FREQUENCY = 11e6  # Hz


# ---------------------------------------------------------------------------
# Record and moment containers
# ---------------------------------------------------------------------------

@dataclass
class DetectionRecord:
    """Paired complex envelope sequences from the two amplification chains."""

    envelopes_1: np.ndarray
    envelopes_2: np.ndarray
    chain_gains: Tuple[float, float]
    if_frequency: float = DEFAULT_IF_FREQUENCY
    seed: int = 0

    def __post_init__(self):
        self.envelopes_1 = np.asarray(self.envelopes_1, dtype=complex)
        self.envelopes_2 = np.asarray(self.envelopes_2, dtype=complex)
        if self.envelopes_1.shape != self.envelopes_2.shape or self.envelopes_1.ndim != 1:
            raise ValueError("the two envelope sequences must be 1-d and of equal length")
        if self.envelopes_1.size < 2:
            raise ValueError("a detection record needs at least 2 samples")
        g1, g2 = self.chain_gains
        if not (g1 > 0 and g2 > 0):
            raise ValueError("chain gains must be positive")

    @property
    def sample_count(self) -> int:
        return int(self.envelopes_1.size)


def _cross_keys() -> Tuple[Tuple[int, int, int, int], ...]:
    keys = []
    for total in range(MAX_MOMENT_ORDER + 1):
        for n in range(total + 1):
            for m in range(total - n + 1):
                for k in range(total - n - m + 1):
                    keys.append((n, m, k, total - n - m - k))
    return tuple(keys)


CROSS_MOMENT_KEYS = _cross_keys()  # 70 entries for order <= 4


@dataclass
class CrossMomentSet:
    """Averaged I/Q products <I1^n I2^m Q1^k Q2^l> for 0 <= n+m+k+l <= 4."""

    entries: Dict[Tuple[int, int, int, int], float]
    std_errors: Optional[Dict[Tuple[int, int, int, int], float]] = None
    sample_count: int = 0

    def __post_init__(self):
        if (0, 0, 0, 0) not in self.entries:
            raise ValueError("cross-moment set must contain the (0,0,0,0) entry")
        if abs(self.entries[(0, 0, 0, 0)] - 1.0) > 1e-12:
            raise ValueError("entry (0,0,0,0) must equal 1")
        for key, value in self.entries.items():
            if not math.isfinite(value):
                raise ValueError(f"non-finite cross moment at {key}")

    def entry(self, n: int, m: int, k: int, l: int) -> float:
        try:
            return self.entries[(n, m, k, l)]
        except KeyError:
            raise ValueError(f"cross moment {(n, m, k, l)} not present") from None

    def is_complete(self) -> bool:
        return all(key in self.entries for key in CROSS_MOMENT_KEYS)

    def to_json_dict(self) -> dict:
        return {
            "entries": {
                ",".join(map(str, key)): [value, 0.0]
                for key, value in sorted(self.entries.items())
            },
            "sample_count": self.sample_count,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "CrossMomentSet":
        entries = {}
        for key, (re, _im) in payload["entries"].items():
            entries[tuple(int(tok) for tok in key.split(","))] = float(re)
        return cls(entries, sample_count=int(payload.get("sample_count", 0)))


# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------

def hybrid_split(signal: np.ndarray, vacuum: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """50:50 hybrid ring: outputs (s + v)/sqrt(2) and (s - v)/sqrt(2).

    Energy is conserved sample by sample: |out1|^2 + |out2|^2 = |s|^2 + |v|^2.
    """
    s = np.asarray(signal, dtype=complex)
    v = np.asarray(vacuum, dtype=complex)
    if s.shape != v.shape:
        raise ValueError("signal and vacuum-port sequences must have equal length")
    root_half = 1.0 / math.sqrt(2.0)
    return (s + v) * root_half, (s - v) * root_half


def _chain_noise(n_photons: float, count: int, seed) -> np.ndarray:
    """Circular Gaussian chain noise adding ``n_photons`` of envelope power.

    The per-quadrature variance is n/2, i.e. the noise photons referred to
    the chain input on top of the signal's own (already sampled) vacuum;
    on a vacuum input each chain output then has per-quadrature variance
    (2 n + 1)/4.
    """
    if n_photons == 0.0:
        return np.zeros(count, dtype=complex)
    sigma = math.sqrt(n_photons / 2.0)
    parts = []
    for index, size in _batch_layout(count):
        rng = np.random.default_rng(_batch_seed(seed, index))
        quads = rng.normal(0.0, sigma, size=(size, 2))
        parts.append(quads[:, 0] + 1j * quads[:, 1])
    return np.concatenate(parts)


def simulate_detection(
    state: MicrowaveState,
    chain_noise_photons: Tuple[float, float] = (0.0, 0.0),
    gains: Tuple[float, float] = (1.0, 1.0),
    count: int = 100_000,
    seed: int = 0,
    vacuum_port_photons: float = 0.0,
    if_frequency: float = DEFAULT_IF_FREQUENCY,
) -> DetectionRecord:
    """Simulate a dual-path record for a given input state.

    The input and the hybrid's fourth port are drawn from their Wigner
    distributions, split on the hybrid ring, and each path acquires
    independent circular-Gaussian chain noise (``chain_noise_photons``
    referred to the chain input) before multiplication by sqrt(gain).  The
    fourth port defaults to exact vacuum; a small thermal occupation can be
    injected through ``vacuum_port_photons``.
    """
    if count < 2:
        raise ValueError("need at least 2 samples")
    n1, n2 = chain_noise_photons
    if n1 < 0 or n2 < 0:
        raise ValueError("chain noise photons must be >= 0")
    if vacuum_port_photons < 0:
        raise ValueError("vacuum-port occupation must be >= 0")
    root = np.random.SeedSequence(seed)
    streams = [
        np.random.SeedSequence(entropy=root.entropy, spawn_key=(s,)) for s in range(4)
    ]
    signal = sample_envelopes(state, count, streams[0])
    port_state = (
        MicrowaveState.vacuum()
        if vacuum_port_photons == 0.0
        else MicrowaveState.thermal(vacuum_port_photons)
    )
    port = sample_envelopes(port_state, count, streams[1])
    out1, out2 = hybrid_split(signal, port)
    z1 = math.sqrt(gains[0]) * (out1 + _chain_noise(n1, count, streams[2]))
    z2 = math.sqrt(gains[1]) * (out2 + _chain_noise(n2, count, streams[3]))
    return DetectionRecord(z1, z2, tuple(gains), if_frequency, seed)


def cross_moments(rec: DetectionRecord) -> CrossMomentSet:
    """All 70 averaged products <I1^n I2^m Q1^k Q2^l> with n+m+k+l <= 4.

    Accumulation runs over ERROR_BATCHES contiguous blocks whose totals are
    combined with compensated summation, so the result is reproducible to
    1e-12 regardless of scheduling; the block means also provide per-moment
    standard errors.
    """
    count = rec.sample_count
    i1 = rec.envelopes_1.real
    q1 = rec.envelopes_1.imag
    i2 = rec.envelopes_2.real
    q2 = rec.envelopes_2.imag
    bounds = np.linspace(0, count, ERROR_BATCHES + 1).astype(int)
    batch_sums = {key: [] for key in CROSS_MOMENT_KEYS}
    batch_sizes = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi <= lo:
            continue
        batch_sizes.append(hi - lo)
        powers = {}
        for name, arr in (("i1", i1[lo:hi]), ("i2", i2[lo:hi]), ("q1", q1[lo:hi]), ("q2", q2[lo:hi])):
            acc = [np.ones(hi - lo)]
            for _ in range(MAX_MOMENT_ORDER):
                acc.append(acc[-1] * arr)
            powers[name] = acc
        for n, m, k, l in CROSS_MOMENT_KEYS:
            product = powers["i1"][n] * powers["i2"][m] * powers["q1"][k] * powers["q2"][l]
            batch_sums[(n, m, k, l)].append(float(np.sum(product)))
    entries = {}
    std_errors = {}
    sizes = np.asarray(batch_sizes, dtype=float)
    for key in CROSS_MOMENT_KEYS:
        sums = batch_sums[key]
        entries[key] = math.fsum(sums) / count
        means = np.asarray(sums) / sizes
        if len(sums) > 1:
            std_errors[key] = float(np.std(means, ddof=1) / math.sqrt(len(sums)))
        else:
            std_errors[key] = float("nan")
    entries[(0, 0, 0, 0)] = 1.0
    std_errors[(0, 0, 0, 0)] = 0.0
    return CrossMomentSet(entries, std_errors, count)


# ---------------------------------------------------------------------------
# Moment reconstruction
# ---------------------------------------------------------------------------

def _expansion_table():
    """Coefficients expressing E[z1^m conj(z2)^n] over I/Q cross moments.

    z1^m conj(z2)^n = sum over (a, c) of C(m,a) C(n,c) i^(m-a) (-i)^(n-c)
    I1^a Q1^(m-a) I2^c Q2^(n-c); solved once at import and reused.
    """
    table = {}
    for n, m in moment_keys():
        terms = []
        for a in range(m + 1):
            for c in range(n + 1):
                coeff = (
                    math.comb(m, a)
                    * math.comb(n, c)
                    * (1j) ** (m - a)
                    * (-1j) ** (n - c)
                )
                terms.append(((a, c, m - a, n - c), coeff))
        table[(n, m)] = tuple(terms)
    return table


_CROSS_EXPANSION = _expansion_table()


def reconstruct_signal_moments(
    cm: CrossMomentSet,
    gains: Tuple[float, float],
    vacuum_port_photons: float = 0.0,
) -> MomentSet:
    """Normally ordered signal moments at the beam-splitter input.

    Only cross-path products z1^m conj(z2)^n enter, so the independent,
    zero-mean, circular chain noise of both paths drops out of every
    estimator.  Writing the hybrid input as s and the fourth port as v
    (circular with <|v|^2> = n_v + 1/2), the products obey

        E[A^m B_bar^n] = 2^-(m+n)/2 * sum_p C(m,p) C(n,p) p! (-s_v)^p M(n-p, m-p)

    with A = z1/sqrt(g1), B_bar = conj(z2)/sqrt(g2), s_v = n_v + 1/2, and
    M the symmetrized signal moments.  The triangular system is solved from
    low to high order, levels are conjugate-symmetrized, and the result is
    converted to normal ordering.
    """
    g1, g2 = gains
    if g1 <= 0 or g2 <= 0:
        raise ValueError("reconstruction is singular for non-positive chain gains")
    if not cm.is_complete():
        missing = [key for key in CROSS_MOMENT_KEYS if key not in cm.entries]
        raise ValueError(f"cross-moment set incomplete; missing {missing[:5]}...")
    if vacuum_port_photons < 0:
        raise ValueError("vacuum-port occupation must be >= 0")
    s_v = vacuum_port_photons + 0.5

    raw = {}
    for n, m in moment_keys():
        total = 0j
        for key, coeff in _CROSS_EXPANSION[(n, m)]:
            total += coeff * cm.entries[key]
        total /= g1 ** (m / 2.0) * g2 ** (n / 2.0)
        raw[(n, m)] = total * 2.0 ** ((n + m) / 2.0)

    sym: Dict[Tuple[int, int], complex] = {}
    for order in range(MAX_MOMENT_ORDER + 1):
        level = [(n, m) for (n, m) in moment_keys() if n + m == order]
        for n, m in level:
            value = raw[(n, m)]
            for p in range(1, min(n, m) + 1):
                value -= (
                    math.comb(m, p)
                    * math.comb(n, p)
                    * math.factorial(p)
                    * (-s_v) ** p
                    * sym[(n - p, m - p)]
                )
            sym[(n, m)] = value
        for n, m in level:
            if n < m:
                avg = 0.5 * (sym[(n, m)] + sym[(m, n)].conjugate())
                sym[(n, m)] = avg
                sym[(m, n)] = avg.conjugate()
            elif n == m:
                sym[(n, m)] = complex(sym[(n, m)].real)
    sym[(0, 0)] = 1.0 + 0j

    tolerance = 1e-9 if cm.sample_count == 0 else 50.0 / math.sqrt(cm.sample_count)
    symmetrized = MomentSet(Ordering.SYMMETRIZED, sym, tolerance)
    return ordering_convert(symmetrized, Ordering.NORMAL)


# ---------------------------------------------------------------------------
# Planck spectroscopy calibration
# ---------------------------------------------------------------------------

@dataclass
class PlanckSweep:
    """Detected power versus emitter temperature at a fixed mode and bandwidth."""

    temperatures: np.ndarray
    powers: np.ndarray
    mode: ModeSpec
    bandwidth: float

    def __post_init__(self):
        self.temperatures = np.asarray(self.temperatures, dtype=float)
        self.powers = np.asarray(self.powers, dtype=float)
        if self.temperatures.shape != self.powers.shape or self.temperatures.ndim != 1:
            raise ValueError("temperatures and powers must be 1-d of equal length")
        if np.any(np.diff(self.temperatures) <= 0):
            raise ValueError("temperatures must be strictly increasing")
        if np.any(self.powers <= 0):
            raise ValueError("detected powers must be positive")
        if not self.bandwidth > 0:
            raise ValueError("bandwidth must be positive")


@dataclass
class PlanckCalibration:
    chain_gain: float
    chain_noise_temperature: float
    chain_noise_photons: float
    residuals: np.ndarray
    fitted_powers: np.ndarray
    chain_gain_std: float = 0.0
    chain_noise_temperature_std: float = 0.0

    @property
    def chain_gain_db(self) -> float:
        return linear_to_db(self.chain_gain)


@dataclass
class JpaCalibration:
    total_gain: float
    jpa_gain: Optional[float]
    added_photons: float
    t_1db: Optional[float]
    p_1db: Optional[CompressionPoint]

    @property
    def jpa_gain_db(self) -> Optional[float]:
        return None if self.jpa_gain is None else linear_to_db(self.jpa_gain)

    @property
    def compression_found(self) -> bool:
        return self.t_1db is not None


def _bose_einstein_array(mode: ModeSpec, temperatures: np.ndarray) -> np.ndarray:
    from .states import bose_einstein

    return np.array([bose_einstein(mode, float(t)) for t in temperatures])


def planck_power(
    temperatures,
    mode: ModeSpec,
    bandwidth: float,
    chain_gain: float,
    chain_noise_temperature: float,
) -> np.ndarray:
    """Forward model P(T) = G * B * h f * [n(T) + 1/2 + n_chain].

    The chain noise enters as a photon number n_chain = k_B T_chain / (h f)
    so the bracket stays dimensionless.
    """
    temps = np.atleast_1d(np.asarray(temperatures, dtype=float))
    quantum = PLANCK_H * mode.frequency
    n_chain = k_B * chain_noise_temperature / quantum
    occ = _bose_einstein_array(mode, temps)
    return chain_gain * bandwidth * quantum * (occ + 0.5 + n_chain)


def jpa_planck_power(
    temperatures,
    mode: ModeSpec,
    bandwidth: float,
    jpa_gain: float,
    added_photons: float,
    chain_gain: float = 1.0,
    saturation_power: Optional[float] = None,
    saturation_sharpness: float = 20.0,
) -> np.ndarray:
    """Forward model for a Planck sweep with the preamplifier on.

    In the linear regime P(T) = G_jpa G_chain B h f [n(T) + 1/2 + n_n]; an
    optional saturation P -> P / (1 + (P / P_sat)^m)^(1/m) models gain
    compression with a knee of sharpness m, putting the 1 dB point at
    P_linear = P_sat (10^(m/10) - 1)^(1/m) while leaving powers well below
    the knee essentially untouched.
    """
    temps = np.atleast_1d(np.asarray(temperatures, dtype=float))
    quantum = PLANCK_H * mode.frequency
    occ = _bose_einstein_array(mode, temps)
    linear = jpa_gain * chain_gain * bandwidth * quantum * (occ + 0.5 + added_photons)
    if saturation_power is None:
        return linear
    m = saturation_sharpness
    return linear / (1.0 + (linear / saturation_power) ** m) ** (1.0 / m)


def saturation_power_for_t1db(
    t_1db: float,
    mode: ModeSpec,
    bandwidth: float,
    jpa_gain: float,
    added_photons: float,
    chain_gain: float = 1.0,
    saturation_sharpness: float = 20.0,
) -> float:
    """Saturation power placing the 1 dB compression point at ``t_1db``."""
    linear = jpa_planck_power([t_1db], mode, bandwidth, jpa_gain, added_photons, chain_gain)[0]
    m = saturation_sharpness
    return float(linear / (10.0 ** (m / 10.0) - 1.0) ** (1.0 / m))


def _planck_linear_fit(x: np.ndarray, y: np.ndarray, weights=None):
    """Weighted LSQ of y = c1 * x + c0; returns (c1, c0) and their covariance."""
    from .analysis import _linear_least_squares

    design = np.column_stack([x, np.ones_like(x)])
    try:
        beta, covariance, _ = _linear_least_squares(design, y, weights)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise ValueError(f"degenerate Planck sweep: {exc}") from exc
    return beta[0], beta[1], covariance


def planck_fit(sweep: PlanckSweep, weights=None) -> PlanckCalibration:
    """Calibrate total chain gain and noise temperature from a Planck sweep.

    Least squares of P(T) = C1 [n(T) + 1/2] + C0 with C1 = G B h f and
    C0 = C1 * n_chain.  On data generated by :func:`planck_power` the round
    trip is exact to numerical precision.
    """
    temps = sweep.temperatures
    if temps.size < 4:
        raise ValueError("Planck calibration needs at least 4 sweep points")
    if temps[-1] / temps[0] < 3.0:
        raise ValueError("Planck sweep must span at least a factor 3 in temperature")
    x = _bose_einstein_array(sweep.mode, temps) + 0.5
    c1, c0, covariance = _planck_linear_fit(x, sweep.powers, weights)
    if c1 <= 0:
        raise ValueError("Planck fit produced a non-positive gain; sweep is unusable")
    quantum = PLANCK_H * sweep.mode.frequency
    gain = c1 / (sweep.bandwidth * quantum)
    n_chain = c0 / c1
    t_chain = n_chain * quantum / k_B
    fitted = c1 * x + c0
    gain_std = math.sqrt(max(covariance[0, 0], 0.0)) / (sweep.bandwidth * quantum)
    # n_chain = c0/c1: first-order propagation with the full covariance
    grad = np.array([-c0 / (c1 * c1), 1.0 / c1])
    n_chain_var = float(grad @ covariance @ grad)
    t_chain_std = math.sqrt(max(n_chain_var, 0.0)) * quantum / k_B
    return PlanckCalibration(
        gain, t_chain, n_chain, sweep.powers - fitted, fitted, gain_std, t_chain_std
    )


def jpa_planck_fit(
    sweep: PlanckSweep,
    fit_range_max_t: float,
    reference_chain_gain: Optional[float] = None,
    kappa_x: Optional[float] = None,
) -> JpaCalibration:
    """Extract JPA gain and added noise from a preamplified Planck sweep.

    Only points at T <= fit_range_max_t (below compression) enter the
    linear fit P = C1 [n(T) + 1/2] + C0, giving the total gain and
    n_n = C0 / C1.  The fitted line is then extended over the full sweep;
    the 1 dB compression temperature is the first crossing where the
    measured power falls 1 dB below the line (linear interpolation in the
    dB deficit), reported as absent when no crossing exists in range.
    """
    temps = sweep.temperatures
    if not np.any(temps > fit_range_max_t):
        raise ValueError("sweep must extend beyond the fit range to probe compression")
    mask = temps <= fit_range_max_t
    if np.count_nonzero(mask) < 3:
        raise ValueError("need at least 3 sweep points inside the fit range")
    x = _bose_einstein_array(sweep.mode, temps) + 0.5
    c1, c0, _ = _planck_linear_fit(x[mask], sweep.powers[mask])
    if c1 <= 0:
        raise ValueError("JPA Planck fit produced a non-positive gain")
    quantum = PLANCK_H * sweep.mode.frequency
    total_gain = c1 / (sweep.bandwidth * quantum)
    added = c0 / c1
    jpa_gain = None if reference_chain_gain is None else total_gain / reference_chain_gain

    line = c1 * x + c0
    deficit_db = 10.0 * np.log10(line / sweep.powers)
    t_1db = None
    for i in range(1, temps.size):
        if deficit_db[i] >= 1.0:
            lo, hi = deficit_db[i - 1], deficit_db[i]
            frac = (1.0 - lo) / (hi - lo) if hi > lo else 1.0
            t_1db = float(temps[i - 1] + frac * (temps[i] - temps[i - 1]))
            break
    p_1db = None
    if t_1db is not None and kappa_x is not None:
        p_1db = compression_power(kappa_x, t_1db)
    return JpaCalibration(total_gain, jpa_gain, added, t_1db, p_1db)


# ---------------------------------------------------------------------------
# Quadrature statistics
# ---------------------------------------------------------------------------

def quadrature_variances(moments: MomentSet) -> Tuple[float, float]:
    """Variances of p = i(a^dag - a)/2 and q = (a^dag + a)/2 from normal moments.

    Var(q) = [<a^dag2> + <a^2> + 2<a^dag a> + 1]/4 - <q>^2 and the p
    variant with the sign of the second harmonics flipped; for any
    unsqueezed Gaussian state both equal n/2 + 1/4.
    """
    if moments.ordering is not Ordering.NORMAL:
        raise ValueError("quadrature variances are defined on normally ordered moments")
    for key in ((0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1)):
        if key not in moments.entries:
            raise ValueError(f"moment {key} required for quadrature variances")
    n20 = moments.entry(2, 0)
    n02 = moments.entry(0, 2)
    n11 = moments.entry(1, 1)
    alpha = moments.entry(0, 1)
    mean_q = alpha.real
    mean_p = alpha.imag
    var_q = (n20 + n02 + 2.0 * n11 + 1.0).real / 4.0 - mean_q * mean_q
    var_p = (-n20 - n02 + 2.0 * n11 + 1.0).real / 4.0 - mean_p * mean_p
    return var_p, var_q


def wigner_gaussian_contour(n: float) -> float:
    """Radius of the 1/e contour of a circular Gaussian Wigner function.

    Per-quadrature variance (2n + 1)/4 gives radius sqrt(n + 1/2); the
    thermal-to-vacuum contour ratio is sqrt(2n + 1).
    """
    if n < 0:
        raise ValueError("occupation must be >= 0")
    return math.sqrt(n + 0.5)


# ---------------------------------------------------------------------------
# Record import/export
# ---------------------------------------------------------------------------

def save_record_binary(rec: DetectionRecord, data_path, sidecar_path=None) -> None:
    """Write little-endian float64 interleaved (I1, Q1, I2, Q2) plus a JSON sidecar."""
    data_path = Path(data_path)
    sidecar = Path(sidecar_path) if sidecar_path else data_path.with_suffix(data_path.suffix + ".json")
    interleaved = np.empty(4 * rec.sample_count, dtype="<f8")
    interleaved[0::4] = rec.envelopes_1.real
    interleaved[1::4] = rec.envelopes_1.imag
    interleaved[2::4] = rec.envelopes_2.real
    interleaved[3::4] = rec.envelopes_2.imag
    data_path.write_bytes(interleaved.tobytes())
    sidecar.write_text(
        json.dumps(
            {
                "sample_count": rec.sample_count,
                "chain_gains": list(rec.chain_gains),
                "if_frequency": rec.if_frequency,
                "seed": rec.seed,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )


def load_record_binary(data_path, sidecar_path=None) -> DetectionRecord:
    data_path = Path(data_path)
    sidecar = Path(sidecar_path) if sidecar_path else data_path.with_suffix(data_path.suffix + ".json")
    meta = json.loads(sidecar.read_text())
    raw = np.frombuffer(data_path.read_bytes(), dtype="<f8")
    count = int(meta["sample_count"])
    if raw.size != 4 * count:
        raise ValueError(
            f"binary record holds {raw.size} float64 values, expected {4 * count}"
        )
    z1 = raw[0::4] + 1j * raw[1::4]
    z2 = raw[2::4] + 1j * raw[3::4]
    return DetectionRecord(
        z1, z2, tuple(meta["chain_gains"]), meta["if_frequency"], int(meta["seed"])
    )


def save_record_csv(rec: DetectionRecord, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["index", "I1", "Q1", "I2", "Q2"])
        for i in range(rec.sample_count):
            writer.writerow(
                [
                    i,
                    repr(float(rec.envelopes_1[i].real)),
                    repr(float(rec.envelopes_1[i].imag)),
                    repr(float(rec.envelopes_2[i].real)),
                    repr(float(rec.envelopes_2[i].imag)),
                ]
            )


def load_record_csv(path, chain_gains=(1.0, 1.0), if_frequency=DEFAULT_IF_FREQUENCY, seed=0) -> DetectionRecord:
    i1, q1, i2, q2 = [], [], [], []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        expected = ["index", "I1", "Q1", "I2", "Q2"]
        if reader.fieldnames != expected:
            raise ValueError(f"CSV header must be {expected}, got {reader.fieldnames}")
        for row in reader:
            i1.append(float(row["I1"]))
            q1.append(float(row["Q1"]))
            i2.append(float(row["I2"]))
            q2.append(float(row["Q2"]))
    z1 = np.asarray(i1) + 1j * np.asarray(q1)
    z2 = np.asarray(i2) + 1j * np.asarray(q2)
    return DetectionRecord(z1, z2, tuple(chain_gains), if_frequency, seed)
