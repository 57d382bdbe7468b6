"""Two-site bosonic Fock space with sites labelled by the primes 2 and 3.

A basis ket ``|2^a 3^b>`` holds ``a`` bosons on site 2 and ``b`` on site 3.
States are stored blockwise by particle number ``k = a + b``; inside a block
the amplitudes are indexed by ``a`` (the site-2 occupation), ascending.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

SITES = (2, 3)
_SQRT_HALF = np.sqrt(0.5)


@dataclass(frozen=True)
class BasisState:
    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError(f"occupations must be nonnegative, got ({self.alpha}, {self.beta})")

    @property
    def k(self) -> int:
        return self.alpha + self.beta


def integer_label(s: BasisState) -> int:
    """Return the number-theoretic label ``2**alpha * 3**beta``.

    Python integers are arbitrary width, so the label is always exact.
    """
    return 2**s.alpha * 3**s.beta


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class KVector:
    """Amplitudes of a state inside the ``k``-particle block.

    ``k = -1`` is the empty block produced by annihilating the vacuum; it has
    no amplitudes.
    """

    k: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.k < -1:
            raise ValueError(f"invalid particle number {self.k}")
        amps = _frozen(self.amps).reshape(-1)
        if amps.shape[0] != self.k + 1:
            raise ValueError(f"block k={self.k} needs {self.k + 1} amplitudes, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, alpha: int, beta: int) -> KVector:
        amps = np.zeros(alpha + beta + 1, dtype=np.complex128)
        amps[alpha] = 1.0
        return cls(alpha + beta, amps)

    @classmethod
    def zeros(cls, k: int) -> KVector:
        return cls(k, np.zeros(k + 1, dtype=np.complex128))

    @classmethod
    def vacuum(cls) -> KVector:
        return cls(0, [1.0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def inner(self, other: KVector) -> complex:
        """``<self|other>``, antilinear in ``self``."""
        _check_same_block(self, other)
        return complex(np.vdot(self.amps, other.amps))

    def __add__(self, other: KVector) -> KVector:
        _check_same_block(self, other)
        return KVector(self.k, self.amps + other.amps)

    def __sub__(self, other: KVector) -> KVector:
        _check_same_block(self, other)
        return KVector(self.k, self.amps - other.amps)

    def __mul__(self, scalar) -> KVector:
        return KVector(self.k, self.amps * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> KVector:
        return KVector(self.k, self.amps / scalar)

    def __neg__(self) -> KVector:
        return KVector(self.k, -self.amps)


def _check_same_block(u: KVector, v: KVector) -> None:
    if u.k != v.k:
        raise ValueError(f"vectors live in different blocks (k={u.k} and k={v.k})")


@dataclass(frozen=True)
class FockVector:
    """A finitely supported state: a map from particle number to ``KVector``.

    Blocks absent from the map are zero.
    """

    blocks: Mapping[int, KVector]

    def __post_init__(self):
        blocks = {}
        for k in sorted(self.blocks):
            block = self.blocks[k]
            if block.k != k:
                raise ValueError(f"block stored under key {k} has k={block.k}")
            if k >= 0:
                blocks[k] = block
        object.__setattr__(self, "blocks", MappingProxyType(blocks))

    @classmethod
    def from_blocks(cls, *blocks: KVector) -> FockVector:
        return cls({b.k: b for b in blocks})

    @classmethod
    def vacuum(cls) -> FockVector:
        return cls.from_blocks(KVector.vacuum())

    def block(self, k: int) -> KVector:
        return self.blocks.get(k, KVector.zeros(k))

    def norm_sq(self) -> float:
        return float(sum(np.vdot(b.amps, b.amps).real for b in self.blocks.values()))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def inner(self, other: FockVector) -> complex:
        return complex(sum(self.blocks[k].inner(other.blocks[k]) for k in self.blocks if k in other.blocks))

    def map_blocks(self, fn) -> FockVector:
        """Apply a block-preserving map to every block."""
        return FockVector({k: fn(b) for k, b in self.blocks.items()})

    def apply(self, op) -> FockVector:
        """Apply a linear block operator that may change particle number (e.g. ``apply_c``)."""
        out: dict[int, KVector] = {}
        for b in self.blocks.values():
            r = op(b)
            if r.k >= 0:
                out[r.k] = out[r.k] + r if r.k in out else r
        return FockVector(out)

    def _combine(self, other: FockVector, op) -> FockVector:
        keys = sorted(set(self.blocks) | set(other.blocks))
        return FockVector({k: KVector(k, op(self.block(k).amps, other.block(k).amps)) for k in keys})

    def __add__(self, other: FockVector) -> FockVector:
        return self._combine(other, np.add)

    def __sub__(self, other: FockVector) -> FockVector:
        return self._combine(other, np.subtract)

    def __mul__(self, scalar) -> FockVector:
        return self.map_blocks(lambda b: b * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> FockVector:
        return self.map_blocks(lambda b: -b)


def max_abs_diff(u: FockVector, v: FockVector) -> float:
    """Largest entrywise modulus of ``u - v``, missing blocks treated as zero."""
    diff = u - v
    return max((float(np.max(np.abs(b.amps), initial=0.0)) for b in diff.blocks.values()), default=0.0)


def _check_site(site: int) -> None:
    if site not in SITES:
        raise ValueError(f"site must be 2 or 3, got {site}")


def apply_create(site: int, v: KVector) -> KVector:
    """Add one boson to ``site``: ``a_p^+ |n> = sqrt(a_p(n) + 1) |n p>``."""
    _check_site(site)
    k = v.k
    alpha = np.arange(k + 1)
    out = np.zeros(k + 2, dtype=np.complex128)
    if site == 2:
        out[1:] = np.sqrt(alpha + 1) * v.amps
    else:
        out[:-1] = np.sqrt(k - alpha + 1) * v.amps
    return KVector(k + 1, out)


def apply_annihilate(site: int, v: KVector) -> KVector:
    """Remove one boson from ``site``: ``a_p |n> = sqrt(a_p(n)) |n/p>``.

    The vacuum and the empty block both map to the empty block.
    """
    _check_site(site)
    k = v.k
    if k <= 0:
        return KVector.zeros(-1)
    if site == 2:
        out = np.sqrt(np.arange(1, k + 1)) * v.amps[1:]
    else:
        out = np.sqrt(k - np.arange(k)) * v.amps[:-1]
    return KVector(k - 1, out)


def apply_number(site: int, v: KVector) -> KVector:
    _check_site(site)
    alpha = np.arange(v.k + 1)
    occ = alpha if site == 2 else v.k - alpha
    return KVector(v.k, occ * v.amps)


def apply_c_dagger(v: KVector) -> KVector:
    return (apply_create(2, v) + apply_create(3, v)) * _SQRT_HALF


def apply_d_dagger(v: KVector) -> KVector:
    return (apply_create(2, v) - apply_create(3, v)) * _SQRT_HALF


def apply_c(v: KVector) -> KVector:
    return (apply_annihilate(2, v) + apply_annihilate(3, v)) * _SQRT_HALF


def apply_d(v: KVector) -> KVector:
    return (apply_annihilate(2, v) - apply_annihilate(3, v)) * _SQRT_HALF
