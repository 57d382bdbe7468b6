"""Brute-force reference: dense symmetric eigensolver and spectral time evolution.

Nothing here depends on the closed-form eigensystem, so it can be used to
check it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class NoConvergence(RuntimeError):
    def __init__(self, message: str, worst_residual: float):
        super().__init__(message)
        self.worst_residual = worst_residual


@dataclass(frozen=True)
class DenseEigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def residuals(self, m: np.ndarray) -> np.ndarray:
        r = m @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return np.linalg.norm(r, axis=0)


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    """Rounds of disjoint index pairs covering every pair once (circle method)."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = []
        for i in range(size // 2):
            p, q = players[i], players[size - 1 - i]
            if p >= 0 and q >= 0:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def dense_symmetric_eig(m, max_sweeps: int = 64) -> DenseEigenResult:
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Each round rotates a set of disjoint ``(p, q)`` pairs at once. Eigenvalues
    come back ascending with eigenvectors as matching columns, each column's
    largest entry made positive.
    """
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.T) > 1e-14 * max(scale, 1.0):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    if n > 1 and scale > 0:
        rounds = [(np.array([p for p, _ in r]), np.array([q for _, q in r])) for r in _round_robin(n)]
        off_tol = 1e-15 * scale
        for _ in range(max_sweeps):
            if np.linalg.norm(a - np.diag(np.diag(a))) <= off_tol:
                break
            for p, q in rounds:
                apq = a[p, q]
                active = np.abs(apq) > 1e-300
                if not active.any():
                    continue
                theta = np.where(active, (a[q, q] - a[p, p]) / (2.0 * np.where(active, apq, 1.0)), 0.0)
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                t = np.where(theta == 0.0, 1.0, t)
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                j = np.eye(n)
                j[p, p] = c
                j[q, q] = c
                j[p, q] = s
                j[q, p] = -s
                a = j.T @ a @ j
                a = 0.5 * (a + a.T)
                v = v @ j
    lam = np.diag(a).copy()
    order = np.argsort(lam, kind="stable")
    lam, v = lam[order], v[:, order]
    flip = np.sign(v[np.argmax(np.abs(v), axis=0), np.arange(n)])
    v = v * np.where(flip == 0, 1.0, flip)
    result = DenseEigenResult(lam, v)
    worst = float(np.max(result.residuals(np.asarray(m, dtype=np.float64)), initial=0.0))
    if worst > 1e-12 * max(scale, 1e-300) and scale > 0:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps", worst)
    return result


def dense_evolve(m, v, t: float, square: bool = False) -> np.ndarray:
    """``U diag(exp(i f(λ) t)) U^T v`` with ``f(λ) = λ`` or ``λ^2``."""
    eig = dense_symmetric_eig(m)
    lam = eig.eigenvalues ** 2 if square else eig.eigenvalues
    u = eig.eigenvectors
    x = np.asarray(v, dtype=np.complex128)
    return u @ (np.exp(1j * lam * t) * (u.T @ x))
