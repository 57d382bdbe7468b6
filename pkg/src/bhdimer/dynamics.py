"""Time evolution generated by the hopping term and by its square.

Evolution is diagonal in the closed-form eigenbasis: the coefficient of
eigenvector ``(k, m)`` picks up ``exp(i λ t)`` or ``exp(i λ² t)`` with
``λ = 2m - k``. The ``+i`` sign in the exponent is deliberate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coherent import CoherentParams, TruncationPolicy, coherent_state
from .eigensystem import eigenbasis_matrix, eigenvalues
from .fock import FockVector, KVector


class ZeroVector(ValueError):
    pass


@dataclass(frozen=True)
class EvolutionReport:
    time: float
    fidelity_cat: float
    fidelity_period: float
    fidelity_signflip: float
    tail_mass: float


def _evolve(v: FockVector, t: float, power: int) -> FockVector:
    blocks = {}
    for k, block in v.blocks.items():
        e = eigenbasis_matrix(k)
        lam = eigenvalues(k).astype(np.float64) ** power
        coeffs = np.exp(1j * lam * t) * (e.T @ block.amps)
        blocks[k] = KVector(k, e @ coeffs)
    return FockVector(blocks)


def evolve_h2(v: FockVector, t: float) -> FockVector:
    return _evolve(v, t, 2)


def evolve_h(v: FockVector, t: float) -> FockVector:
    return _evolve(v, t, 1)


def predicted_cat(p: CoherentParams, t: float, trunc: TruncationPolicy | None = None) -> FockVector:
    """``(e^{iπ/4} |w,z,t> + e^{-iπ/4} |-w,-z,t>) / √2``, the state expected a quarter period later."""
    plus = evolve_h2(coherent_state(p, trunc), t)
    minus = evolve_h2(coherent_state(-p, trunc), t)
    s = math.sqrt(0.5)
    return plus * (cmath.exp(0.25j * math.pi) * s) + minus * (cmath.exp(-0.25j * math.pi) * s)


def fidelity(u: FockVector, v: FockVector) -> float:
    nu, nv = u.norm(), v.norm()
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("fidelity is undefined for a zero vector")
    return min(abs(u.inner(v)) / (nu * nv), 1.0)


def cat_check(
    p: CoherentParams, times: Iterable[float], trunc: TruncationPolicy | None = None
) -> list[EvolutionReport]:
    cs = coherent_state(p, trunc)
    cs_neg = coherent_state(-p, trunc)
    tail = max(0.0, 1.0 - cs.norm_sq())
    reports = []
    for t in times:
        at_t = evolve_h2(cs, t)
        reports.append(
            EvolutionReport(
                time=float(t),
                fidelity_cat=fidelity(evolve_h2(cs, t + math.pi / 2), predicted_cat(p, t, trunc)),
                fidelity_period=fidelity(evolve_h2(cs, t + 2 * math.pi), at_t),
                fidelity_signflip=fidelity(evolve_h2(cs, t + math.pi), evolve_h2(cs_neg, t)),
                tail_mass=tail,
            )
        )
    return reports
