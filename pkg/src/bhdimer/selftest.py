"""Invariant suite behind ``bhdimer selftest``.

Every check measures one error and compares it with a fixed tolerance.
``hopping_scale`` multiplies the hopping amplitude everywhere the checks
apply the Hamiltonian; any value other than 1 must make the suite fail,
which is how the harness is tested against itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import coherent as coh
from . import eigensystem as es
from . import fock
from . import hamiltonian as ham
from .dynamics import evolve_h2, predicted_cat
from .oracle import dense_evolve, dense_symmetric_eig


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.measured)) and self.measured <= self.tolerance


def _random_block(rng: np.random.Generator, k: int) -> fock.KVector:
    return fock.KVector(k, rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1))


def _rel(a: fock.KVector, b: fock.KVector, ref: float) -> float:
    return (a - b).norm() / max(ref, 1e-300)


class _Suite:
    def __init__(self, k_max: int, hopping_scale: float, seed: int):
        self.k_max = k_max
        self.scale = hopping_scale
        self.seed = seed

    def H(self, v: fock.KVector) -> fock.KVector:
        return ham.apply_hopping(v, self.scale)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def spectrum(self) -> float:
        worst = 0.0
        for k in range(self.k_max + 1):
            lam = dense_symmetric_eig(ham.build_hopping_matrix(k, self.scale).dense()).eigenvalues
            worst = max(worst, float(np.max(np.abs(lam - es.eigenvalues(k)))))
        return worst

    def eigen_residual(self) -> float:
        worst = 0.0
        for k in range(self.k_max + 1):
            for m in range(k + 1):
                v = es.eigenvector_normalized(k, m)
                worst = max(worst, (self.H(v) - v * es.eigenvalue(k, m)).norm())
        return worst

    def raw_norm_law(self) -> float:
        worst = 0.0
        for k in range(self.k_max + 1):
            for m in range(k + 1):
                expect = math.factorial(m) * math.factorial(k - m)
                got = es.eigenvector_raw(k, m).norm() ** 2
                worst = max(worst, abs(got - expect) / expect)
        return worst

    def orthonormality(self) -> float:
        worst = 0.0
        for k in range(self.k_max + 1):
            e = es.eigenbasis_matrix(k)
            worst = max(worst, float(np.max(np.abs(e.T @ e - np.eye(k + 1)))))
        return worst

    def immersion(self) -> float:
        worst = 0.0
        for k in range(1, self.k_max + 1):
            m = es.immersion_matrix(k)
            worst = max(worst, float(np.max(np.abs(m.T @ m - np.eye(k + 1)))))
        return worst

    def cascade(self) -> float:
        rng = self.rng()
        worst = 0.0
        for k in range(self.k_max + 1):
            for _ in range(5):
                v = _random_block(rng, k)
                a = es.to_eigenbasis_cascade(v).coeffs
                b = es.to_eigenbasis_direct(v).coeffs
                worst = max(worst, float(np.max(np.abs(a - b))))
        return worst

    def hopping_paths(self) -> float:
        rng = self.rng()
        worst = 0.0
        for k in range(self.k_max + 1):
            v = _random_block(rng, k)
            worst = max(worst, _rel(self.H(v), ham.apply_hopping_via_cd(v), v.norm()))
        return worst

    def commutators(self) -> float:
        rng = self.rng()
        worst = 0.0
        for k in range(self.k_max + 1):
            v = _random_block(rng, k)
            for p in fock.SITES:
                for q in fock.SITES:
                    lhs = fock.apply_annihilate(p, fock.apply_create(q, v))
                    rhs = fock.apply_create(q, fock.apply_annihilate(p, v)) if k > 0 else fock.KVector.zeros(k)
                    if p == q:
                        rhs = rhs + v
                    worst = max(worst, _rel(lhs, rhs, v.norm()))
        return worst

    def h2_expansion(self) -> float:
        rng = self.rng()
        worst = 0.0
        for k in range(min(self.k_max, 12) + 1):
            v = _random_block(rng, k)
            hh = self.H(self.H(v))
            worst = max(worst, _rel(hh, ham.apply_h2_normal_ordered(v), hh.norm() + v.norm()))
        return worst

    def _grid(self):
        vals = [0.0, 0.8, -1.3 + 0.6j, 1.4 - 1.4j]
        return [coh.CoherentParams(w, z) for w in vals for z in vals]

    def coherent_norm(self) -> float:
        return max(abs(coh.coherent_state(p).norm_sq() - 1.0) for p in self._grid())

    def coherent_energy(self) -> float:
        worst = 0.0
        for p in self._grid():
            cs = coh.coherent_state(p)
            e = cs.map_blocks(self.H).inner(cs).real
            worst = max(worst, abs(e - coh.expected_energy_closed(p)))
        return worst

    def energy_distribution(self) -> float:
        worst = 0.0
        for p in self._grid():
            lo, hi = coh.default_alpha_window(p)
            closed = coh.energy_distribution_closed(p, lo, hi)
            numeric = coh.energy_distribution_numeric(coh.coherent_state(p))
            worst = max(worst, abs(closed.total() - 1.0))
            worst = max(worst, max(abs(closed[a] - numeric[a]) for a in range(lo, hi + 1)))
        return worst

    def cat_identity(self) -> float:
        worst = 0.0
        for p in self._grid()[::3]:
            cs = coh.coherent_state(p)
            for t in (0.0, 0.3, math.pi / 4, 1.1):
                worst = max(worst, fock.max_abs_diff(evolve_h2(cs, t + math.pi / 2), predicted_cat(p, t)))
        return worst

    def oracle_evolution(self) -> float:
        worst = 0.0
        cs = coh.coherent_state(coh.CoherentParams(1.2 + 0.4j, -0.9))
        for t in (0.3, 1.1):
            evolved = evolve_h2(cs, t)
            for k, block in cs.blocks.items():
                if k > min(self.k_max, 12):
                    continue
                ref = dense_evolve(ham.build_hopping_matrix(k, self.scale).dense(), block.amps, t, square=True)
                worst = max(worst, float(np.max(np.abs(evolved.blocks[k].amps - ref))))
        return worst


CHECKS: list[tuple[str, str, float]] = [
    ("spectrum_integrality", "spectrum", 1e-10),
    ("eigen_residual", "eigen_residual", 1e-10),
    ("raw_norm_law", "raw_norm_law", 1e-10),
    ("eigenbasis_orthonormality", "orthonormality", 1e-10),
    ("immersion_isometry", "immersion", 1e-12),
    ("cascade_vs_direct", "cascade", 1e-10),
    ("hopping_tridiagonal_vs_cd", "hopping_paths", 1e-12),
    ("canonical_commutators", "commutators", 1e-12),
    ("h2_normal_ordered", "h2_expansion", 1e-12),
    ("coherent_norm", "coherent_norm", 1e-12),
    ("coherent_energy", "coherent_energy", 1e-8),
    ("energy_distribution", "energy_distribution", 1e-8),
    ("cat_identity", "cat_identity", 1e-8),
    ("oracle_h2_evolution", "oracle_evolution", 1e-8),
]


def run_selftest(
    k_max: int = 20,
    hopping_scale: float = 1.0,
    seed: int = 12345,
    progress: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    suite = _Suite(k_max, hopping_scale, seed)
    results = []
    for name, method, tol in CHECKS:
        res = CheckResult(name, float(getattr(suite, method)()), tol)
        if progress is not None:
            progress(res)
        results.append(res)
    return results
