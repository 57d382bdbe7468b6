"""Hopping term of the two-site Bose-Hubbard Hamiltonian, ``a2^+ a3 + a3^+ a2``.

The operator conserves particle number, so it is applied block by block as
a real symmetric tridiagonal matrix with zero diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import (
    FockVector,
    KVector,
    apply_annihilate,
    apply_c,
    apply_c_dagger,
    apply_create,
    apply_d,
    apply_d_dagger,
    apply_number,
)

DENSE_CAP = 2048


@dataclass(frozen=True)
class HoppingMatrix:
    """Tridiagonal form of the hopping term on the ``k``-particle block.

    ``offdiag[a]`` couples ``|2^a 3^(k-a)>`` and ``|2^(a+1) 3^(k-a-1)>``.
    """

    k: int
    offdiag: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.k + 1

    def dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        if self.size > cap:
            raise ValueError(f"refusing to materialize a {self.size}x{self.size} matrix (cap {cap})")
        m = np.zeros((self.size, self.size))
        idx = np.arange(self.k)
        m[idx, idx + 1] = self.offdiag
        m[idx + 1, idx] = self.offdiag
        return m

    def matvec(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.result_type(x, np.float64))
        out[:-1] += self.offdiag * x[1:]
        out[1:] += self.offdiag * x[:-1]
        return out


def build_hopping_matrix(k: int, scale: float = 1.0) -> HoppingMatrix:
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    alpha = np.arange(k, dtype=np.float64)
    off = scale * np.sqrt((alpha + 1) * (k - alpha))
    off.setflags(write=False)
    return HoppingMatrix(k, off)


def apply_hopping(v: KVector, scale: float = 1.0) -> KVector:
    if v.k < 0:
        return v
    return KVector(v.k, build_hopping_matrix(v.k, scale).matvec(v.amps))


def apply_hopping_via_cd(v: KVector) -> KVector:
    """Same operator evaluated as ``c^+ c - d^+ d``."""
    if v.k <= 0:
        return KVector.zeros(v.k)
    return apply_c_dagger(apply_c(v)) - apply_d_dagger(apply_d(v))


def apply_hopping_full(v: FockVector, scale: float = 1.0) -> FockVector:
    return v.map_blocks(lambda b: apply_hopping(b, scale))


def spin_x_matrix(two_s: int) -> np.ndarray:
    """Dense ``S_x`` for spin ``s = two_s / 2`` in the ``m_s`` basis.

    Equal to half the hopping matrix on the ``two_s``-particle block.
    """
    return 0.5 * build_hopping_matrix(two_s).dense()


def apply_total_number(v: KVector) -> KVector:
    return apply_number(2, v) + apply_number(3, v)


def _ladder(v: KVector, ops) -> KVector:
    # ops are applied right to left, as written in an operator product
    for kind, site in reversed(ops):
        v = apply_create(site, v) if kind == "+" else apply_annihilate(site, v)
        if v.k < 0:
            return v
    return v


def _sum_terms(k: int, terms) -> KVector:
    out = np.zeros(k + 1, dtype=np.complex128)
    for coef, vec in terms:
        if vec.k == k:
            out += coef * vec.amps
    return KVector(k, out)


def apply_h2_normal_ordered(v: KVector) -> KVector:
    """``(a2^+)^2 a3^2 + (a3^+)^2 a2^2 + 2 a2^+ a3^+ a2 a3 + N`` applied to ``v``.

    Equals the square of the hopping term.
    """
    terms = [
        (1.0, _ladder(v, [("+", 2), ("+", 2), ("-", 3), ("-", 3)])),
        (1.0, _ladder(v, [("+", 3), ("+", 3), ("-", 2), ("-", 2)])),
        (2.0, _ladder(v, [("+", 2), ("+", 3), ("-", 2), ("-", 3)])),
        (1.0, apply_total_number(v)),
    ]
    return _sum_terms(v.k, terms)


def apply_n2_normal_ordered(v: KVector) -> KVector:
    """``(a2^+)^2 a2^2 + (a3^+)^2 a3^2 + 2 a2^+ a3^+ a2 a3 + N`` applied to ``v``.

    Equals the square of the total number operator.
    """
    terms = [
        (1.0, _ladder(v, [("+", 2), ("+", 2), ("-", 2), ("-", 2)])),
        (1.0, _ladder(v, [("+", 3), ("+", 3), ("-", 3), ("-", 3)])),
        (2.0, _ladder(v, [("+", 2), ("+", 3), ("-", 2), ("-", 3)])),
        (1.0, apply_total_number(v)),
    ]
    return _sum_terms(v.k, terms)


def apply_h2_minus_cross_term(v: KVector) -> KVector:
    """H^2 expansion with the cross term sign flipped; disagrees with H(H v) (e.g. on |2 3>)."""
    terms = [
        (1.0, _ladder(v, [("+", 2), ("+", 2), ("-", 3), ("-", 3)])),
        (1.0, _ladder(v, [("+", 3), ("+", 3), ("-", 2), ("-", 2)])),
        (-2.0, _ladder(v, [("+", 2), ("+", 3), ("-", 2), ("-", 3)])),
        (1.0, apply_total_number(v)),
    ]
    return _sum_terms(v.k, terms)
