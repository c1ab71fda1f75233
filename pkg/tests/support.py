"""Shared helpers for the test suite: random generators and brute-force oracles.

The oracles here are intentionally independent of the library paths they
check: exhaustive enumeration for two-valued states and for LP feasibility,
and plain numpy arithmetic for expected values.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from gleason import DensityOperator, GreechieDiagram, SymMatrix, orthonormalize


def random_orthonormal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random orthonormal basis of R^n as rows."""
    while True:
        v = rng.standard_normal((n, n))
        if abs(np.linalg.det(v)) > 1e-3:
            return orthonormalize(v)


def random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal(n)
    return x / np.linalg.norm(x)


def random_density(rng: np.random.Generator, n: int) -> DensityOperator:
    """Random mixed state: random eigenbasis with random simplex weights."""
    basis = random_orthonormal(rng, n)
    weights = rng.random(n) + 0.01
    weights /= weights.sum()
    matrix = basis.T @ np.diag(weights) @ basis
    return DensityOperator(SymMatrix((matrix + matrix.T) / 2.0))


def random_symmetric(rng: np.random.Generator, n: int, scale: float = 10.0) -> SymMatrix:
    a = rng.uniform(-scale, scale, size=(n, n))
    return SymMatrix((a + a.T) / 2.0)


def well_conditioned_transform(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random nonsingular matrix with singular values in [0.5, 2]."""
    q1 = random_orthonormal(rng, n)
    q2 = random_orthonormal(rng, n)
    return q1.T @ np.diag(rng.uniform(0.5, 2.0, size=n)) @ q2


def brute_force_two_valued(diagram: GreechieDiagram) -> list[tuple[int, ...]]:
    """All 0/1 assignments with exactly one 1 per block, as bit tuples."""
    hits = []
    for bits in itertools.product((0, 1), repeat=len(diagram.atoms)):
        values = dict(zip(diagram.atoms, bits))
        if all(sum(values[a] for a in block) == 1 for block in diagram.blocks):
            hits.append(bits)
    return sorted(hits)


def brute_force_lp_feasible(a: np.ndarray, b: np.ndarray, tol: float = 1e-7) -> bool:
    """Feasibility of {x >= 0, a x = b} by basic-solution enumeration.

    Any feasible system has a basic feasible solution supported on a
    linearly independent column subset of size <= m, so checking every
    such subset is exhaustive. Only usable for small systems.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    m, n = a.shape
    if np.linalg.norm(b) <= tol:
        return True
    for k in range(1, min(m, n) + 1):
        for cols in itertools.combinations(range(n), k):
            sub = a[:, cols]
            x, _, rank, _ = np.linalg.lstsq(sub, b, rcond=None)
            if rank < k:
                continue
            if np.linalg.norm(sub @ x - b) <= tol and np.min(x) >= -1e-9:
                return True
    return False


def pentagon_b_vectors() -> np.ndarray:
    """The five zero-probability rays of the pentagon, unit-normalized."""
    s5 = math.sqrt(5.0)
    spans = [
        (math.sqrt(s5), -math.sqrt(2.0 + s5), math.sqrt(3.0 - s5)),
        (0.0, math.sqrt(2.0), math.sqrt(s5 - 2.0)),
        (-math.sqrt(s5), -math.sqrt(2.0 + s5), math.sqrt(3.0 - s5)),
        (math.sqrt(5.0 + s5), math.sqrt(3.0 - s5), 2.0 * math.sqrt(s5 - 2.0)),
        (-math.sqrt(5.0 + s5), math.sqrt(3.0 - s5), 2.0 * math.sqrt(s5 - 2.0)),
    ]
    rows = np.array(spans)
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)
