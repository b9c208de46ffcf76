"""Independent brute-force oracles used to freeze expected values.

Nothing in here touches the code paths under test: moments come from
explicit Fock-basis linear algebra (truncated density matrices and ladder
operators), Gaussian moments from an Isserlis pairing enumeration, and
resonator correlators from a direct stochastic integration of the damped
mode.  Tests compare package results against these.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

THERMAL_CUTOFF = 60
AMPLIFIER_CUTOFF = 80


# ---------------------------------------------------------------------------
# Fock-basis machinery
# ---------------------------------------------------------------------------

def thermal_weights(n_mean: float, cutoff: int = THERMAL_CUTOFF) -> np.ndarray:
    """Bose-Einstein occupation probabilities, truncated (tail < 1e-10 for n <= 1.5)."""
    if n_mean == 0:
        w = np.zeros(cutoff)
        w[0] = 1.0
        return w
    q = n_mean / (n_mean + 1.0)
    j = np.arange(cutoff)
    return (1.0 - q) * q ** j


def lowering_operator(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim))
    for j in range(1, dim):
        a[j - 1, j] = math.sqrt(j)
    return a


def fock_normal_moment_thermal(n_mean: float, n: int, m: int, cutoff: int = THERMAL_CUTOFF) -> complex:
    """<(a^dag)^n a^m> of a thermal state by direct Fock summation."""
    if n != m:
        return 0.0 + 0.0j
    weights = thermal_weights(n_mean, cutoff)
    total = 0.0
    for j, w in enumerate(weights):
        if j >= n:
            total += w * math.prod(range(j - n + 1, j + 1))
    return complex(total)


def coherent_vector(alpha: complex, dim: int) -> np.ndarray:
    amps = np.zeros(dim, dtype=complex)
    log_norm = -abs(alpha) ** 2 / 2.0
    for j in range(dim):
        amps[j] = np.exp(log_norm) * alpha ** j / math.sqrt(math.factorial(j))
    return amps


def _ordering_average(n: int, m: int, dim: int) -> np.ndarray:
    """Symmetrized (Weyl) product of n raising and m lowering operators.

    Averages the operator product over all distinct interleavings of the
    n + m factors.
    """
    a = lowering_operator(dim)
    ad = a.T.conj()
    factors = [ad] * n + [a] * m
    arrangements = set(itertools.permutations(range(n + m)))
    total = np.zeros((dim, dim), dtype=complex)
    seen = set()
    for arrangement in arrangements:
        signature = tuple(0 if index < n else 1 for index in arrangement)
        if signature in seen:
            continue
        seen.add(signature)
        product = np.eye(dim, dtype=complex)
        for slot in signature:
            product = product @ (ad if slot == 0 else a)
        total += product
    return total / len(seen)


def fock_symmetrized_moment_thermal(n_mean: float, n: int, m: int, cutoff: int = THERMAL_CUTOFF) -> complex:
    dim = cutoff + 5
    weights = thermal_weights(n_mean, cutoff)
    op = _ordering_average(n, m, dim)
    diag = np.diag(op)
    return complex(np.sum(weights * diag[:cutoff]))


def fock_symmetrized_moment_coherent(alpha: complex, n: int, m: int, cutoff: int = THERMAL_CUTOFF) -> complex:
    dim = cutoff + 5
    psi = coherent_vector(alpha, dim)
    op = _ordering_average(n, m, dim)
    return complex(psi.conj() @ op @ psi)


def fock_normal_moment_coherent(alpha: complex, n: int, m: int, cutoff: int = THERMAL_CUTOFF) -> complex:
    dim = cutoff + 5
    psi = coherent_vector(alpha, dim)
    a = lowering_operator(dim).astype(complex)
    ad = a.T.conj()
    op = np.linalg.matrix_power(ad, n) @ np.linalg.matrix_power(a, m)
    return complex(psi.conj() @ op @ psi)


# ---------------------------------------------------------------------------
# Two-mode amplifier brute force
# ---------------------------------------------------------------------------

def amplifier_mean_and_variance(
    gain: float, n_signal: float, n_idler: float, cutoff: int = AMPLIFIER_CUTOFF
):
    """Mean and variance of a^dag a for a = sqrt(G) b + sqrt(G-1) c^dag.

    The photon-number operator acts on |j, k> (signal, idler Fock states) as

        N |j,k> = [G j + (G-1)(k+1)] |j,k>
                  + sqrt(G(G-1)) [ sqrt((j+1)(k+1)) |j+1,k+1> + sqrt(jk) |j-1,k-1> ]

    so <j,k|N^2|j,k> follows in closed form per basis state; expectation
    values are weighted sums over the two thermal distributions.
    """
    g = gain
    wj = thermal_weights(n_signal, cutoff)
    wk = thermal_weights(n_idler, cutoff)
    j = np.arange(cutoff)[:, None]
    k = np.arange(cutoff)[None, :]
    weight = wj[:, None] * wk[None, :]
    diag = g * j + (g - 1.0) * (k + 1.0)
    n_sq = diag ** 2 + g * (g - 1.0) * ((j + 1.0) * (k + 1.0) + j * k)
    mean = float(np.sum(weight * diag))
    second = float(np.sum(weight * n_sq))
    return mean, second - mean * mean


def beamsplitter_mean_and_variance(
    transmissivity: float, n_signal: float, n_background: float, cutoff: int = AMPLIFIER_CUTOFF
):
    """Mean and variance of a^dag a for a = sqrt(eta) b + sqrt(1-eta) c.

    Both inputs thermal; N acts diagonally plus a photon-exchange term, so
    <j,k|N^2|j,k> = [eta j + (1-eta) k]^2 + eta (1-eta) [(j+1) k + j (k+1)].
    """
    eta = transmissivity
    wj = thermal_weights(n_signal, cutoff)
    wk = thermal_weights(n_background, cutoff)
    j = np.arange(cutoff)[:, None]
    k = np.arange(cutoff)[None, :]
    weight = wj[:, None] * wk[None, :]
    diag = eta * j + (1.0 - eta) * k
    n_sq = diag ** 2 + eta * (1.0 - eta) * ((j + 1.0) * k + j * (k + 1.0))
    mean = float(np.sum(weight * diag))
    second = float(np.sum(weight * n_sq))
    return mean, second - mean * mean


def commutator_free_mean_and_variance(gain, n_signal, n_idler, cutoff: int = AMPLIFIER_CUTOFF):
    """Same amplifier with the idler replaced by a classical circular amplitude.

    N = G b^dag b + sqrt(G(G-1)) (b^dag conj(gamma) + b gamma) + (G-1) |gamma|^2,
    with gamma circular Gaussian of mean square n_idler.  Independence and
    circularity reduce E[N] and E[N^2] to products of single-factor moments,
    each taken from the Fock oracle (for b) or the Gaussian moments
    E|gamma|^2 = n, E|gamma|^4 = 2 n^2 (for gamma).
    """
    g = gain
    nb = fock_normal_moment_thermal(n_signal, 1, 1, cutoff).real
    nb2 = fock_normal_moment_thermal(n_signal, 2, 2, cutoff).real  # <b^dag2 b^2>
    bdag_b_sq = nb2 + nb  # <(b^dag b)^2>
    mean = g * nb + (g - 1.0) * n_idler
    # cross term squared: <(b^dag conj(g) + b g)^2> = (2 nb + 1) n_idler
    second = (
        g * g * bdag_b_sq
        + g * (g - 1.0) * (2.0 * nb + 1.0) * n_idler
        + (g - 1.0) ** 2 * 2.0 * n_idler ** 2
        + 2.0 * g * (g - 1.0) * nb * n_idler
    )
    return mean, second - mean * mean


# ---------------------------------------------------------------------------
# Gaussian (Isserlis) moment engine
# ---------------------------------------------------------------------------

def gaussian_product_moment(factors, covariance, means=None) -> complex:
    """E[prod over factors] for jointly circular complex Gaussians.

    ``factors`` is a sequence of (index, conjugated) pairs selecting the
    variable and whether it enters conjugated; ``covariance[i][j]`` holds
    E[dz_i conj(dz_j)] of the zero-mean parts (anomalous correlations
    E[dz dz] vanish for circular variables); ``means`` supplies the
    deterministic offsets.  The expansion sums over all ways of replacing a
    subset of factors by their means and Isserlis-pairing the rest.
    """
    factors = list(factors)
    count = len(factors)
    if means is None:
        means = {}

    def mean_of(index, conj):
        value = means.get(index, 0.0)
        return np.conj(value) if conj else value

    total = 0.0 + 0.0j
    for pattern in itertools.product((0, 1), repeat=count):
        prefactor = 1.0 + 0.0j
        plain, conj = [], []
        for bit, (index, conjugated) in zip(pattern, factors):
            if bit == 0:
                prefactor *= mean_of(index, conjugated)
            elif conjugated:
                conj.append(index)
            else:
                plain.append(index)
        if prefactor == 0:
            continue
        if len(plain) != len(conj):
            continue  # unmatched circular fluctuations average to zero
        paired = 0.0 + 0.0j
        for assignment in itertools.permutations(conj):
            term = 1.0 + 0.0j
            for i, j in zip(plain, assignment):
                term *= covariance[i][j]
            paired += term
        total += prefactor * paired
    return total
