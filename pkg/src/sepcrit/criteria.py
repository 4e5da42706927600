"""Scalar and structural separability criteria.

The four (alpha, beta)-inequalities compare Tr rho^a X1^b against
Tr rho^a X2^b (or a singular-value pairing, for kind IV), where
Xi = [I (x) Li](rho) for a CP decomposition L = L1 - L2 of a positive
map.  A violation certifies entanglement; separable states can never
violate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import (
    AllProjectionsVanish,
    CommutativityViolated,
    ParameterOutOfRange,
    SingularNegativePower,
    SingularOperand,
)
from .linalg import DEFAULT_TOL
from .maps import CPDecomposition, MatrixMap, extend_apply
from .states import DensityMatrix


class Kind(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    ENTROPIC = "ENTROPIC"
    STRUCTURAL = "STRUCTURAL"
    LIMIT = "LIMIT"


@dataclass(frozen=True)
class CriterionResult:
    lhs: float
    rhs: float
    margin: float  # sign-adjusted: margin < 0 <=> inequality violated
    violated: bool
    kind: Kind
    tol: float
    commutator_norm: Optional[float] = None

    @property
    def label(self) -> str:
        return self.kind.value


def _verdict(lhs: float, rhs: float, reversed_: bool, kind: Kind,
             tol: float, commutator: Optional[float] = None) -> CriterionResult:
    margin = (rhs - lhs) if reversed_ else (lhs - rhs)
    scale = max(1.0, abs(lhs), abs(rhs))
    return CriterionResult(
        lhs, rhs, margin, bool(margin < -tol * scale), kind, tol, commutator
    )


def _real_trace(A: np.ndarray, B: np.ndarray) -> float:
    return float(np.trace(A @ B).real)


def _validate_range(alpha: float, beta: float, kind: Kind) -> None:
    if alpha < 0:
        raise ParameterOutOfRange(f"alpha={alpha} must be >= 0")
    ok = {
        Kind.I: beta >= 1,
        Kind.II: 0 <= beta <= 1,
        Kind.III: -1 <= beta < 0,
        Kind.IV: beta >= 0,
    }[kind]
    if not ok:
        raise ParameterOutOfRange(f"beta={beta} invalid for kind {kind.value}")


def alpha_beta_inequality(rho: DensityMatrix, dec: CPDecomposition,
                          alpha: float, beta: float, kind: Kind = Kind.II,
                          tol: float = DEFAULT_TOL) -> CriterionResult:
    """Evaluate one of the four (alpha, beta)-inequalities on rho.

    Kind I (beta >= 1) needs [X2, rho] = 0 unless lambda2 is the
    identity, in which case the right-hand side reduces to
    Tr rho^(alpha+beta).  Kind III reverses the inequality direction;
    kind IV pairs descending eigenvalues of rho with ascending singular
    values of X2.
    """
    if isinstance(kind, str):
        kind = Kind[kind]
    _validate_range(alpha, beta, kind)
    M = rho.matrix
    X1 = extend_apply(dec.lambda1, M, rho.dA)

    commutator = None
    if dec.lambda2_is_identity:
        X2 = M
    else:
        X2 = extend_apply(dec.lambda2, M, rho.dA)
        if kind is Kind.I:
            commutator = linalg.commutator_norm(X2, M)
            if commutator > tol * max(1.0, linalg.fro(M)):
                raise CommutativityViolated(
                    f"[X2, rho] norm {commutator} exceeds tolerance"
                )

    rho_a = linalg.matrix_power_psd(M, alpha, tol)

    try:
        lhs = _real_trace(rho_a, linalg.matrix_power_psd(X1, beta, tol))
    except SingularNegativePower as exc:
        raise SingularOperand(f"X1 singular for beta={beta}") from exc

    if kind is Kind.IV:
        lam = np.clip(linalg.hermitian_eig(M, tol).eigenvalues[::-1], 0, None)
        sig = linalg.sorted_singular_values(X2)
        rhs = float(np.sum(np.power(lam, alpha) * np.power(sig, beta)))
        return _verdict(lhs, rhs, False, kind, tol)

    if kind is Kind.I and dec.lambda2_is_identity:
        rhs = float(
            np.trace(linalg.matrix_power_psd(M, alpha + beta, tol)).real
        )
    else:
        try:
            rhs = _real_trace(rho_a, linalg.matrix_power_psd(X2, beta, tol))
        except SingularNegativePower as exc:
            raise SingularOperand(f"X2 singular for beta={beta}") from exc

    return _verdict(lhs, rhs, kind is Kind.III, kind, tol, commutator)


def entropic_inequality(rho: DensityMatrix, alpha: float, subsystem: str = "A",
                        tol: float = DEFAULT_TOL) -> CriterionResult:
    """Renyi-type inequality Tr rho_sub^a >= Tr rho^a (a > 1, reversed
    for a < 1); violation certifies entanglement."""
    if alpha < 0 or alpha == 1:
        raise ParameterOutOfRange(
            f"alpha={alpha} must be >= 0 and != 1"
        )
    marg = rho.marginal(subsystem)
    lhs = float(np.trace(linalg.matrix_power_psd(marg, alpha, tol)).real)
    rhs = float(np.trace(linalg.matrix_power_psd(rho.matrix, alpha, tol)).real)
    return _verdict(lhs, rhs, alpha < 1, Kind.ENTROPIC, tol)


def structural_criterion(rho: DensityMatrix, m: MatrixMap,
                         tol: float = DEFAULT_TOL) -> float:
    """Min eigenvalue of [I (x) L](rho); negative beyond tol detects
    entanglement."""
    return linalg.min_eigenvalue(extend_apply(m, rho.matrix, rho.dA), tol)


def ppt_check(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> float:
    """Min eigenvalue of the partial transpose; >= -tol means PPT."""
    return linalg.min_eigenvalue(
        linalg.partial_transpose(rho.matrix, rho.dA, rho.dB), tol
    )


def limit_witness(rho: DensityMatrix, m: MatrixMap,
                  tol: float = DEFAULT_TOL) -> float:
    """alpha -> infinity limit of the beta = 1 inequality.

    Walks the eigenvalues of rho from the top in degenerate groups
    (grouping within tol * ||rho||_F) and returns Tr([I (x) L](rho) P)
    for the first group projector P with a non-vanishing trace.
    Negative value <=> detection.
    """
    X = extend_apply(m, rho.matrix, rho.dA)
    w, V = linalg.hermitian_eig(rho.matrix, tol)
    band = tol * max(linalg.fro(rho.matrix), 1e-300)
    i = len(w) - 1
    while i >= 0:
        j = i
        while j > 0 and w[j - 1] >= w[i] - band:
            j -= 1
        block = V[:, j:i + 1]
        val = float(np.einsum("ij,jk,ki->", block.conj().T, X, block).real)
        if abs(val) > tol:
            return val
        i = j - 1
    raise AllProjectionsVanish("Tr(X P) vanished for every eigen-group")
