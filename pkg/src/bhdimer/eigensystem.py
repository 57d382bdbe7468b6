"""Closed-form eigensystem of the hopping term on each k-particle block.

With ``c = (a2 + a3)/sqrt(2)`` and ``d = (a2 - a3)/sqrt(2)`` the hopping term
is ``c^+ c - d^+ d``, so ``(c^+)^m (d^+)^(k-m) |vac>`` is an eigenvector with
eigenvalue ``2m - k``. The eigenbasis coefficients of an arbitrary block
vector can be read off either by inner products or by walking down the
cascade of normalized lowering maps ``c_k``, ``d_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fock import KVector, apply_c_dagger, apply_d_dagger


class IndexOutOfRange(IndexError):
    pass


class EmptyBlock(ValueError):
    pass


@dataclass(frozen=True)
class EigenIndex:
    k: int
    m: int

    def __post_init__(self):
        _check_index(self.k, self.m)

    @property
    def eigenvalue(self) -> int:
        return 2 * self.m - self.k


@dataclass(frozen=True)
class EigenBasisCoeffs:
    """Coefficients over the orthonormal eigenbasis of block ``k``, indexed by ``m``."""

    k: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.shape[0] != self.k + 1:
            raise ValueError(f"block k={self.k} needs {self.k + 1} coefficients, got {c.shape[0]}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    @property
    def eigenvalues(self) -> np.ndarray:
        return eigenvalues(self.k)


def _check_index(k: int, m: int) -> None:
    if k < 0 or not 0 <= m <= k:
        raise IndexOutOfRange(f"need 0 <= m <= k, got k={k}, m={m}")


def eigenvalue(k: int, m: int) -> int:
    _check_index(k, m)
    return 2 * m - k


def eigenvalues(k: int) -> np.ndarray:
    """All eigenvalues of block ``k`` in ascending order (ascending ``m``)."""
    return 2 * np.arange(k + 1) - k


def _raising_schedule(k: int, m: int) -> list[bool]:
    """Order of the k raising steps, True for ``c^+``; the m of them are spread evenly.

    ``c^+`` and ``d^+`` commute, so any order gives the same vector, but
    applying all of one kind first loses accuracy exponentially in ``k``.
    """
    return [(j + 1) * m // k > j * m // k for j in range(k)] if k else []


def eigenvector_raw(k: int, m: int) -> KVector:
    """``(c^+)^m (d^+)^(k-m) |vac>``, not normalized; its squared norm is ``m! (k-m)!``."""
    _check_index(k, m)
    v = KVector.vacuum()
    for is_c in _raising_schedule(k, m):
        v = apply_c_dagger(v) if is_c else apply_d_dagger(v)
    return v


def eigenvector_normalized(k: int, m: int) -> KVector:
    _check_index(k, m)
    # divide by sqrt(j) at each raising step rather than by sqrt(m!(k-m)!) at the end
    v = KVector.vacuum()
    nc = nd = 0
    for is_c in _raising_schedule(k, m):
        if is_c:
            nc += 1
            v = apply_c_dagger(v) / np.sqrt(nc)
        else:
            nd += 1
            v = apply_d_dagger(v) / np.sqrt(nd)
    return v


@lru_cache(maxsize=1024)
def eigenbasis_matrix(k: int) -> np.ndarray:
    """Real orthogonal matrix whose column ``m`` is ``eigenvector_normalized(k, m)``."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    cols = [eigenvector_normalized(k, m).amps.real for m in range(k + 1)]
    e = np.column_stack(cols)
    e.setflags(write=False)
    return e


def _lowering_pair(x: np.ndarray, k: int, ops: list | None = None):
    """Apply ``c_k`` and ``d_k`` to the rows of ``x`` (each of length k+1)."""
    a = np.arange(k)
    s_up = np.sqrt(a + 1.0)  # a2 acting on index a+1
    s_dn = np.sqrt(k - a + 0.0)  # a3 acting on index a
    norm = 1.0 / np.sqrt(2.0 * k)
    hi = x[..., 1:] * s_up
    lo = x[..., :-1] * s_dn
    if ops is not None:
        rows = 1 if x.ndim == 1 else x.shape[0]
        # two scalings per entry, one add and one normalization per output
        ops[0] += rows * 4 * k
    return (hi + lo) * norm, (hi - lo) * norm


def apply_ck(v: KVector) -> KVector:
    if v.k < 1:
        raise EmptyBlock("c_k needs k >= 1")
    c, _ = _lowering_pair(v.amps, v.k)
    return KVector(v.k - 1, c)


def apply_dk(v: KVector) -> KVector:
    if v.k < 1:
        raise EmptyBlock("d_k needs k >= 1")
    _, d = _lowering_pair(v.amps, v.k)
    return KVector(v.k - 1, d)


def immersion_matrix(k: int) -> np.ndarray:
    """The ``2k x (k+1)`` matrix of ``c_k`` stacked on ``d_k``; its columns are orthonormal."""
    if k < 1:
        raise EmptyBlock("the immersion is defined for k >= 1")
    c, d = _lowering_pair(np.eye(k + 1), k)
    # _lowering_pair acts on rows; transpose to get the operator matrices
    return np.vstack([c.T, d.T])


def sqrt_binomials(k: int) -> np.ndarray:
    """``sqrt(C(k, m))`` for ``m = 0..k`` by a cumulative product in floating point."""
    b = np.empty(k + 1)
    b[0] = 1.0
    for m in range(k):
        b[m + 1] = b[m] * (k - m) / (m + 1)
    return np.sqrt(b)


def cascade_path(v: KVector, path: str) -> complex:
    """Scalar left after applying the normalized lowering maps in ``path`` to ``v``.

    ``path`` is a string over {'c', 'd'} of length ``v.k``, read left to right
    as the order of application. Because ``c`` and ``d`` commute the result
    only depends on how many of each appear.
    """
    if len(path) != v.k or set(path) - {"c", "d"}:
        raise ValueError(f"path must have {v.k} letters from 'cd', got {path!r}")
    for op in path:
        v = apply_ck(v) if op == "c" else apply_dk(v)
    return complex(v.amps[0])


def cascade_with_count(v: KVector) -> tuple[EigenBasisCoeffs, int]:
    """Cascade transform plus the number of arithmetic operations it performed.

    Level ``j`` of the cascade holds ``j + 1`` vectors of the ``(k - j)`` block,
    one for each count of ``c`` maps applied so far. Node ``a`` is reached by
    a ``d`` step from node ``a`` or, for the last node, a ``c`` step from
    node ``a - 1``.
    """
    k = v.k
    ops = [0]
    nodes = v.amps.reshape(1, -1)
    for j in range(1, k + 1):
        block = k - j + 1
        c_last, _ = _lowering_pair(nodes[-1], block, ops)
        _, d_all = _lowering_pair(nodes, block, ops)
        nodes = np.vstack([d_all, c_last[None, :]])
    path_scalars = nodes[:, 0]
    coeffs = path_scalars * sqrt_binomials(k)
    ops[0] += k + 1
    return EigenBasisCoeffs(k, coeffs), ops[0]


def to_eigenbasis_cascade(v: KVector) -> EigenBasisCoeffs:
    return cascade_with_count(v)[0]


def to_eigenbasis_direct(v: KVector) -> EigenBasisCoeffs:
    e = eigenbasis_matrix(v.k)
    return EigenBasisCoeffs(v.k, e.T @ v.amps)


def from_eigenbasis(c: EigenBasisCoeffs) -> KVector:
    e = eigenbasis_matrix(c.k)
    return KVector(c.k, e @ c.coeffs)
