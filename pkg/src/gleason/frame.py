"""Frame functions as quadratic forms.

A frame function is carried by a symmetric coefficient matrix A through
f(x) = x^T A x; its weight is tr(A), the common value of sum_i f(e_i) over
every orthonormal basis. Quantum frame functions (weight 1, positive
semidefinite A) correspond one-to-one with density operators; the general
case is still representable here and classified by its inertia signature.

Reconstruction of A from a black-box evaluator uses the polarization
identity, which solves the defining linear system in closed form with the
minimal probe set: n basis vectors plus the n(n-1)/2 mixed probes
(e_i + e_j)/sqrt(2). A least-squares entry point handles noisy or
overdetermined probe tables instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .density import DensityOperator, NotPositiveSemidefinite, TraceNotOne
from .numerics import (
    DEFAULT_TOL,
    DimensionMismatch,
    SymMatrix,
    eigh,
    quad_coeff_row,
    solve_least_squares,
    sym_from_packed,
)

_ORACLE_PROBE_COUNT = 10
_ORACLE_PROBE_TOL = 1e-7
_ORACLE_PROBE_SEED = 0x5EED


class NotUnit(ValueError):
    """Evaluation point is not a unit vector."""


class NotPositive(ValueError):
    """Form has negative squares, so it admits no probabilistic reading."""


class NotAFrameFunction(ValueError):
    """Oracle values are inconsistent with any quadratic form."""


class NotQuantum(ValueError):
    """Reconstructed form is a valid quadratic form but not a density operator.

    Carries the form and diagnostics so callers can still classify it.
    """

    def __init__(self, message: str, form: SymMatrix, trace: float, min_eigenvalue: float):
        super().__init__(message)
        self.form = form
        self.trace = trace
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True, eq=False)
class FrameFunction:
    """Quadratic form f(x) = x^T form x on unit vectors."""

    form: SymMatrix

    @property
    def dim(self) -> int:
        return self.form.dim

    @property
    def weight(self) -> float:
        return self.form.trace()


@dataclass(frozen=True)
class Signature:
    """Counts of positive, negative, and zero eigenvalues (inertia)."""

    positive: int
    negative: int
    zero: int


@dataclass(frozen=True, eq=False)
class FrameOracle:
    """Black-box ray function: evaluator(x) for unit x, with evaluator(x) = evaluator(-x)."""

    evaluator: Callable[[np.ndarray], float]
    dim: int

    @classmethod
    def from_frame_function(cls, f: FrameFunction) -> "FrameOracle":
        return cls(evaluator=lambda x: evaluate(f, x), dim=f.dim)


def evaluate(f: FrameFunction, x) -> float:
    """f(x) = x^T A x for a unit vector x."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != f.dim:
        raise DimensionMismatch(f"point has dimension {x.shape[0]}, form has {f.dim}")
    if abs(float(np.linalg.norm(x)) - 1.0) > DEFAULT_TOL:
        raise NotUnit(f"|x| = {float(np.linalg.norm(x)):.12g} is not 1")
    return float(x @ f.form.entries @ x)


def from_density(rho: DensityOperator) -> FrameFunction:
    """The frame function x -> tr(rho E_x) = <rho x|x> of a state."""
    return FrameFunction(rho.matrix)


def reconstruct_form(oracle: FrameOracle) -> SymMatrix:
    """Coefficient matrix from oracle values, by the polarization identity.

    A_ii = f(e_i) and A_ij = f((e_i + e_j)/sqrt 2) - (f(e_i) + f(e_j))/2.
    Exact for any genuine quadratic form; no consistency checking here.
    """
    n = oracle.dim
    basis = np.eye(n)
    diag = [float(oracle.evaluator(basis[i])) for i in range(n)]
    a = np.diag(diag)
    for i in range(n - 1):
        for j in range(i + 1, n):
            mixed = (basis[i] + basis[j]) / math.sqrt(2.0)
            a[i, j] = a[j, i] = float(oracle.evaluator(mixed)) - (diag[i] + diag[j]) / 2.0
    return SymMatrix(a)


def reconstruct_density(oracle: FrameOracle) -> DensityOperator:
    """Recover the density operator behind a frame-function oracle.

    After the polarization reconstruction, ten random unit probes verify
    that the oracle really is the recovered quadratic form (tolerance 1e-7,
    loose enough for float-backed evaluators); deviations raise
    NotAFrameFunction. Forms failing the unit-trace or positivity checks
    raise NotQuantum with diagnostics attached.
    """
    if oracle.dim < 2:
        raise DimensionMismatch("oracle dimension must be at least 2")
    form = reconstruct_form(oracle)
    rng = np.random.default_rng(_ORACLE_PROBE_SEED)
    for _ in range(_ORACLE_PROBE_COUNT):
        x = rng.standard_normal(oracle.dim)
        x /= np.linalg.norm(x)
        predicted = float(x @ form.entries @ x)
        observed = float(oracle.evaluator(x))
        if abs(observed - predicted) > _ORACLE_PROBE_TOL:
            raise NotAFrameFunction(
                "oracle deviates from the reconstructed quadratic form "
                f"by {abs(observed - predicted):.3e} at a probe point"
            )
    trace = form.trace()
    min_eigenvalue = float(eigh(form).eigenvalues[-1])
    try:
        return DensityOperator(form)
    except (TraceNotOne, NotPositiveSemidefinite) as exc:
        raise NotQuantum(
            f"reconstructed form is not a density operator: {exc}",
            form=form,
            trace=trace,
            min_eigenvalue=min_eigenvalue,
        ) from exc


@dataclass(frozen=True, eq=False)
class SampledReconstruction:
    """Least-squares fit of a form to probe data, with fit diagnostics."""

    frame_function: FrameFunction
    residual: float
    rank_deficient: bool


def reconstruct_from_samples(probes, values) -> SampledReconstruction:
    """Fit a symmetric form to (probe vector, value) samples.

    Solves min ||f(x_k) - v_k|| over symmetric coefficient matrices; the
    minimum-norm solution is returned when the probe set does not pin the
    form down. Use the residual to judge whether the samples are consistent
    with any quadratic form at all.
    """
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    values = np.asarray(values, dtype=float).reshape(-1)
    if probes.shape[0] != values.shape[0]:
        raise DimensionMismatch(
            f"{probes.shape[0]} probes but {values.shape[0]} values"
        )
    rows = np.array([quad_coeff_row(x) for x in probes])
    fit = solve_least_squares(rows, values)
    form = SymMatrix(sym_from_packed(fit.solution, probes.shape[1]))
    return SampledReconstruction(
        frame_function=FrameFunction(form),
        residual=fit.residual,
        rank_deficient=fit.rank_deficient,
    )


def signature(f: FrameFunction, tol: float = DEFAULT_TOL) -> Signature:
    """Inertia of the form: eigenvalue counts above tol, below -tol, and between.

    Values at exactly +/-tol count as zero. Invariant under congruence
    transforms S^T A S with nonsingular S (Sylvester's law of inertia).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    w = eigh(f.form).eigenvalues
    positive = int(np.sum(w > tol))
    negative = int(np.sum(w < -tol))
    return Signature(positive, negative, f.dim - positive - negative)


def classify(f: FrameFunction, tol: float = DEFAULT_TOL) -> int:
    """Canonical type index of a positive form: its rank P in {0, ..., n}.

    Up to congruence and permutation a positive semidefinite form is
    diag(1, ..., 1, 0, ..., 0) with P ones; for a quantum frame function P
    is the number of pure states in any spectral mixture. Raises NotPositive
    when the form has negative squares.
    """
    sig = signature(f, tol)
    if sig.negative > 0:
        raise NotPositive(
            f"form has {sig.negative} negative square(s); no canonical positive type"
        )
    return sig.positive
