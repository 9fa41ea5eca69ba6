"""Generalized metrics and symplectic forms via inducing endomorphisms.

A block operator K induces the bilinear form G(u, v) = G0(K u, v); with the
Gram convention that is ``gram = assemble(K).T @ gram(G0)``.  The form is a
generalized metric exactly when the K-block equals the dual of the H-block,
tau and sigma are symmetric matrices and the assembled operator is
invertible; for a symplectic form the dual relation and the symmetries flip
sign.

Worked n=2 example for the tau condition: (tau X)(Y) = X.T @ tau.T @ Y, so
(tau X)(Y) = (tau Y)(X) for all X, Y exactly when tau = tau.T as a matrix.
"""

from dataclasses import dataclass, field

import numpy as np

from .canonical import g0
from .core import (
    GENERAL,
    SKEW,
    SYMMETRIC,
    BaseForm,
    BilinearForm,
    BlockOperator,
    DEFAULT_TOL,
    Tolerance,
    close,
    dual_map,
    is_degenerate,
    musicals,
)
from .errors import DegenerateFormError, DimensionError, NotComplexError, NotInjectiveError

NOT_INJECTIVE = "NotInjective"
K_BLOCK_NOT_H_DUAL = "KBlockNotHDual"
TAU_NOT_SYMMETRIC = "TauNotSymmetric"
SIGMA_NOT_SYMMETRIC = "SigmaNotSymmetric"
TAU_NOT_SKEW = "TauNotSkew"
SIGMA_NOT_SKEW = "SigmaNotSkew"


@dataclass(frozen=True)
class MetricInducerReport:
    """Named condition failures of a candidate inducing endomorphism."""

    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations


def _induced_gram(op: BlockOperator) -> np.ndarray:
    return op.assemble().T @ g0(op.n).gram


def metric_from_endomorphism(op: BlockOperator, tol: Tolerance = DEFAULT_TOL):
    """Form u, v -> G0(op u, v) plus a validity report for the metric case."""
    violations = []
    if not close(op.K, dual_map(op.H), tol):
        violations.append(K_BLOCK_NOT_H_DUAL)
    if not close(op.tau, op.tau.T, tol):
        violations.append(TAU_NOT_SYMMETRIC)
    if not close(op.sigma, op.sigma.T, tol):
        violations.append(SIGMA_NOT_SYMMETRIC)
    if is_degenerate(op.assemble(), tol):
        violations.append(NOT_INJECTIVE)
    report = MetricInducerReport(tuple(violations))
    kind = SYMMETRIC if report.valid else GENERAL
    return BilinearForm(_induced_gram(op), kind), report


def symplectic_from_endomorphism(op: BlockOperator, tol: Tolerance = DEFAULT_TOL):
    """Form u, v -> G0(op u, v) plus a validity report for the symplectic case."""
    violations = []
    if not close(op.K, -dual_map(op.H), tol):
        violations.append(K_BLOCK_NOT_H_DUAL)
    if not close(op.tau, -op.tau.T, tol):
        violations.append(TAU_NOT_SKEW)
    if not close(op.sigma, -op.sigma.T, tol):
        violations.append(SIGMA_NOT_SKEW)
    if is_degenerate(op.assemble(), tol):
        violations.append(NOT_INJECTIVE)
    report = MetricInducerReport(tuple(violations))
    kind = SKEW if report.valid else GENERAL
    return BilinearForm(_induced_gram(op), kind), report


def endomorphism_from_metric(form: BilinearForm, tol: Tolerance = DEFAULT_TOL) -> BlockOperator:
    """Read off the inducing endomorphism of a symmetric nondegenerate form.

    Blocks come from (tau X)(Y) = 2 G(X, Y), eta(sigma xi) = 2 G(xi, eta)
    and xi(H X) = 2 G(X, xi).
    """
    if form.kind != SYMMETRIC:
        raise ValueError("expected a symmetric form")
    if is_degenerate(form.gram, tol):
        raise DegenerateFormError("form is numerically degenerate")
    n = form.n
    a = form.gram[:n, :n]
    b = form.gram[:n, n:]
    d = form.gram[n:, n:]
    return BlockOperator(2.0 * b.T, 2.0 * d, 2.0 * a, 2.0 * b)


def diagonal_inducer(h, lam: int) -> BlockOperator:
    """The diagonal endomorphism [[H, 0], [0, lam H*]] for invertible H."""
    h = np.asarray(h, dtype=float)
    if lam not in (+1, -1):
        raise ValueError("lam must be +1 or -1")
    if is_degenerate(h):
        raise NotInjectiveError("H block is singular")
    zero = np.zeros_like(h)
    return BlockOperator(h, zero, zero, lam * dual_map(h))


def induced_metric(g: BaseForm, tol: Tolerance = DEFAULT_TOL) -> BilinearForm:
    """Generalized metric induced by a base metric: Gram [[G, 0], [0, G^-1]]."""
    if g.kind != SYMMETRIC:
        raise ValueError("expected a symmetric base form")
    if is_degenerate(g.gram, tol):
        raise DegenerateFormError("base metric is numerically degenerate")
    zero = np.zeros((g.n, g.n))
    return BilinearForm(
        np.block([[g.gram, zero], [zero, np.linalg.inv(g.gram)]]), SYMMETRIC
    )


def nannicini_metric(j, g: BaseForm, tol: Tolerance = DEFAULT_TOL) -> BilinearForm:
    """Metric of a Norden-style pair (J, g), assembled term by term.

    Equals the form induced by the endomorphism [[J, 2 sharp], [2 flat, J*]],
    but is built here directly from the four defining summands so the two
    routes stay independent.
    """
    j = np.asarray(j, dtype=float)
    ident = np.eye(g.n)
    if not close(j @ j, -ident, tol):
        raise NotComplexError("J does not square to -I")
    flat, sharp = musicals(g, tol)
    gm = g.gram
    # summands: g(X, Y), g(JX, sharp eta)/2, g(sharp xi, JY)/2, g(sharp xi, sharp eta)
    top_left = gm
    top_right = 0.5 * j.T @ gm @ sharp
    bottom_left = 0.5 * sharp.T @ gm @ j
    bottom_right = sharp.T @ gm @ sharp
    return BilinearForm(
        np.block([[top_left, top_right], [bottom_left, bottom_right]]), SYMMETRIC
    )
