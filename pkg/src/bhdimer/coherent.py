"""Two-mode coherent states and the statistics of an energy measurement on them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .eigensystem import EigenBasisCoeffs, from_eigenbasis, to_eigenbasis_direct
from .fock import FockVector, KVector
from .hamiltonian import apply_hopping_full


class TruncationFailure(RuntimeError):
    pass


class Convention(enum.Enum):
    CD = "cd"  # exp(w c^+) exp(z d^+) |vac>
    A23 = "a23"  # exp(w a2^+) exp(z a3^+) |vac>


@dataclass(frozen=True)
class CoherentParams:
    w: complex
    z: complex
    convention: Convention = Convention.CD

    def __post_init__(self):
        w, z = complex(self.w), complex(self.z)
        if not (np.isfinite(w) and np.isfinite(z)):
            raise ValueError("coherent amplitudes must be finite")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "z", z)

    @property
    def mean_particles(self) -> float:
        return abs(self.w) ** 2 + abs(self.z) ** 2

    def __neg__(self) -> CoherentParams:
        return CoherentParams(-self.w, -self.z, self.convention)


@dataclass(frozen=True)
class TruncationPolicy:
    tail_epsilon: float = 1e-12
    k_max: int = 512

    def __post_init__(self):
        if not self.tail_epsilon > 0:
            raise ValueError("tail_epsilon must be positive")
        if self.k_max < 1:
            raise ValueError("k_max must be positive")


@dataclass(frozen=True)
class EnergyDistribution:
    entries: dict = field(default_factory=dict)

    def __getitem__(self, alpha: int) -> float:
        return self.entries.get(alpha, 0.0)

    def total(self) -> float:
        return math.fsum(self.entries.values())

    def support(self) -> list[int]:
        return sorted(self.entries)


def convert_params(p: CoherentParams) -> CoherentParams:
    """Switch between the two conventions; the map ``(w, z) -> ((w+z)/√2, (w-z)/√2)`` is an involution."""
    s = math.sqrt(0.5)
    other = Convention.A23 if p.convention is Convention.CD else Convention.CD
    return CoherentParams((p.w + p.z) * s, (p.w - p.z) * s, other)


def as_cd(p: CoherentParams) -> CoherentParams:
    return p if p.convention is Convention.CD else convert_params(p)


def truncation_order(mean: float, policy: TruncationPolicy) -> int:
    """Smallest ``K`` whose Poisson(mean) mass over ``0..K`` reaches ``1 - tail_epsilon``."""
    if mean == 0.0:
        return 0
    log_mean = math.log(mean)
    total = 0.0
    for k in range(policy.k_max + 1):
        total += math.exp(-mean + k * log_mean - math.lgamma(k + 1))
        if total >= 1.0 - policy.tail_epsilon:
            return k
    raise TruncationFailure(
        f"mean particle number {mean:.4g} needs more than k_max={policy.k_max} blocks "
        f"for tail_epsilon={policy.tail_epsilon:g}"
    )


def _scaled_powers(x: complex, n: int) -> np.ndarray:
    # x**j / sqrt(j!) for j = 0..n
    out = np.empty(n + 1, dtype=np.complex128)
    out[0] = 1.0
    for j in range(1, n + 1):
        out[j] = out[j - 1] * x / math.sqrt(j)
    return out


def coherent_state(p: CoherentParams, trunc: TruncationPolicy | None = None) -> FockVector:
    trunc = trunc or TruncationPolicy()
    kmax = truncation_order(p.mean_particles, trunc)
    pref = math.exp(-0.5 * p.mean_particles)
    pw = _scaled_powers(p.w, kmax)
    pz = _scaled_powers(p.z, kmax)
    blocks = {}
    for k in range(kmax + 1):
        # weight of index j is w^j z^(k-j) / sqrt(j! (k-j)!)
        weights = pref * pw[: k + 1] * pz[k::-1]
        if p.convention is Convention.CD:
            blocks[k] = from_eigenbasis(EigenBasisCoeffs(k, weights))
        else:
            blocks[k] = KVector(k, weights)
    return FockVector(blocks)


def expected_energy_closed(p: CoherentParams) -> float:
    q = as_cd(p)
    return abs(q.w) ** 2 - abs(q.z) ** 2


def expected_energy(v: FockVector) -> float:
    return apply_hopping_full(v).inner(v).real


def _energy_probability(big: float, small: float, alpha: int, series_epsilon: float) -> float:
    """``e^{-|a|^2-|b|^2} |big|^{2α} Σ_n |wz|^{2n} / (n! (n+α)!)`` for ``α >= 0``."""
    a2, b2 = big * big, small * small
    if alpha > 0 and a2 == 0.0:
        return 0.0
    log_pref = -a2 - b2 - math.lgamma(alpha + 1)
    if alpha > 0:
        log_pref += alpha * math.log(a2)
    ratio = a2 * b2
    term, total, n = 1.0, 1.0, 0
    while ratio > 0.0:
        term *= ratio / ((n + 1) * (n + 1 + alpha))
        n += 1
        total += term
        if term < series_epsilon * total:
            break
    return math.exp(log_pref) * total


def energy_distribution_closed(
    p: CoherentParams, alpha_min: int, alpha_max: int, series_epsilon: float = 1e-17
) -> EnergyDistribution:
    """Probability of each energy ``alpha_min..alpha_max`` for the coherent state ``p``.

    Negative energies use ``|z|^(2|α|)``; the distribution is symmetric under
    swapping ``w <-> z`` together with ``α <-> -α``.
    """
    if alpha_min > alpha_max:
        raise ValueError("alpha_min must not exceed alpha_max")
    if not series_epsilon > 0:
        raise ValueError("series_epsilon must be positive")
    q = as_cd(p)
    aw, az = abs(q.w), abs(q.z)
    entries = {}
    for alpha in range(alpha_min, alpha_max + 1):
        if alpha >= 0:
            entries[alpha] = _energy_probability(aw, az, alpha, series_epsilon)
        else:
            entries[alpha] = _energy_probability(az, aw, -alpha, series_epsilon)
    return EnergyDistribution(entries)


def energy_distribution_numeric(v: FockVector) -> EnergyDistribution:
    """Group squared eigenbasis amplitudes of ``v`` by eigenvalue ``2m - k``."""
    acc: dict[int, list[float]] = {}
    for k, block in v.blocks.items():
        weights = np.abs(to_eigenbasis_direct(block).coeffs) ** 2
        for m, wgt in enumerate(weights):
            acc.setdefault(2 * m - k, []).append(float(wgt))
    return EnergyDistribution({a: math.fsum(acc[a]) for a in sorted(acc)})


def default_alpha_window(p: CoherentParams, n_sigma: float = 10.0) -> tuple[int, int]:
    """An energy window holding all but a negligible part of the distribution.

    The energy is a difference of two independent Poisson counts, so its
    variance is ``|w|^2 + |z|^2``.
    """
    q = as_cd(p)
    reach = (abs(q.w) + abs(q.z)) ** 2 + n_sigma * math.sqrt(q.mean_particles) + n_sigma
    r = int(math.ceil(reach))
    return -r, r
