"""Positive maps, their Choi matrices, and CP decompositions.

A map on d x d matrices is stored canonically through its Choi matrix
C = sum_ij E_ij (x) L(E_ij).  The catalog covers the reduction map, the
(modified) transposition, the Breuer-Hall maps, the phi_{d,k} family,
the Theta[a; c_1..c_d] family, and the diagonal Kossakowski class, each
with an explicit decomposition L = L1 - L2 into two CP maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import linalg
from .errors import DimensionMismatch, InvalidParameters, NotAntisymmetric
from .linalg import DEFAULT_TOL, as_matrix, dag


@dataclass(frozen=True)
class MatrixMap:
    """Linear map on d x d matrices, held as its Choi matrix."""

    d: int
    choi: np.ndarray
    label: str = ""

    def __post_init__(self):
        C = as_matrix(self.choi)
        if C.shape[0] != self.d * self.d:
            raise DimensionMismatch(
                f"Choi dim {C.shape[0]} != d^2 = {self.d * self.d}"
            )
        object.__setattr__(self, "choi", C)
        self.choi.setflags(write=False)

    def __call__(self, X) -> np.ndarray:
        return apply_map(self, X)


@dataclass(frozen=True)
class CPDecomposition:
    """Decomposition L = lambda1 - lambda2 of a positive map into CP maps."""

    lambda1: MatrixMap
    lambda2: MatrixMap
    lambda2_is_identity: bool
    name: str
    params: dict = field(default_factory=dict)
    indecomposable: Optional[bool] = None
    positivity_unverified: bool = False

    @property
    def d(self) -> int:
        return self.lambda1.d

    @property
    def map(self) -> MatrixMap:
        """The difference map L = L1 - L2."""
        return MatrixMap(
            self.d, self.lambda1.choi - self.lambda2.choi, self.name
        )


def map_from_action(d: int, action: Callable[[np.ndarray], np.ndarray],
                    label: str = "") -> MatrixMap:
    """Build the Choi matrix by evaluating the action on the E_ij basis."""
    C = np.zeros((d * d, d * d), dtype=complex)
    E = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            E[i, j] = 1.0
            C[i * d:(i + 1) * d, j * d:(j + 1) * d] = action(E)
            E[i, j] = 0.0
    return MatrixMap(d, C, label)


def apply_map(m: MatrixMap, X) -> np.ndarray:
    """L(X) = sum_ij X_ij B_ij with B_ij the Choi blocks."""
    X = as_matrix(X)
    d = m.d
    if X.shape[0] != d:
        raise DimensionMismatch(f"operand dim {X.shape[0]} != map dim {d}")
    blocks = m.choi.reshape(d, d, d, d).transpose(0, 2, 1, 3)
    return np.einsum("ij,ijkl->kl", X, blocks)


def extend_apply(m: MatrixMap, rho, dA: int) -> np.ndarray:
    """[I (x) L](rho): apply the map to the B-subsystem blocks of rho."""
    rho = as_matrix(rho)
    dB = m.d
    if rho.shape[0] != dA * dB:
        raise DimensionMismatch(
            f"state dim {rho.shape[0]} != dA*dB = {dA * dB}"
        )
    out = np.empty_like(rho)
    for i in range(dA):
        for j in range(dA):
            out[i * dB:(i + 1) * dB, j * dB:(j + 1) * dB] = apply_map(
                m, rho[i * dB:(i + 1) * dB, j * dB:(j + 1) * dB]
            )
    return out


def is_cp(m: MatrixMap, tol: float = DEFAULT_TOL) -> bool:
    """Complete positivity test: the Choi matrix is PSD within tol."""
    w = linalg.hermitian_eig(m.choi, tol).eigenvalues
    return bool(w[0] >= -tol * max(1.0, linalg.fro(m.choi)))


def is_positive_sampled(m: MatrixMap, n_samples: int = 200, seed: int = 0,
                        tol: float = DEFAULT_TOL):
    """Sampled necessary test of map positivity on Haar-random pure states.

    Returns (ok, witness): witness is a vector |psi> with
    L(|psi><psi|) not PSD when ok is False, else None.  A True result
    is only evidence, a False result is a certificate.
    """
    if n_samples < 1:
        raise InvalidParameters("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    d = m.d
    for _ in range(n_samples):
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        psi /= np.linalg.norm(psi)
        out = apply_map(m, np.outer(psi, psi.conj()))
        if linalg.min_eigenvalue(out, tol) < -tol:
            return False, psi
    return True, None


# ---------------------------------------------------------------------------
# elementary building blocks

def identity_map(d: int) -> MatrixMap:
    return map_from_action(d, lambda X: X, f"identity(d={d})")


def transposition_map(d: int) -> MatrixMap:
    return map_from_action(d, lambda X: X.T, f"transposition(d={d})")


def diagonal_pinch(X: np.ndarray) -> np.ndarray:
    """epsilon(X): keep the diagonal of X."""
    return np.diag(np.diag(X))


def shift_operator(d: int) -> np.ndarray:
    """Cyclic shift S|i> = |i+1 mod d> (zero-based)."""
    S = np.zeros((d, d), dtype=complex)
    for i in range(d):
        S[(i + 1) % d, i] = 1.0
    return S


def modified_transposition(U: np.ndarray) -> MatrixMap:
    """tau^U(X) = U X^T U^dag."""
    U = as_matrix(U)
    d = U.shape[0]
    return map_from_action(d, lambda X: U @ X.T @ dag(U), f"tau^U(d={d})")


def default_breuer_unitary(d: int = 4) -> np.ndarray:
    """Antisymmetric anti-diagonal unitary with alternating +-1 entries.

    Only even d admits an antisymmetric unitary.
    """
    if d % 2:
        raise InvalidParameters("antisymmetric unitary requires even d")
    V = np.zeros((d, d), dtype=complex)
    for i in range(d):
        V[i, d - 1 - i] = (-1.0) ** i
    return V


def _check_breuer_unitary(U: np.ndarray, tol: float) -> None:
    U = as_matrix(U)
    if linalg.fro(U.T + U) > tol * max(1.0, linalg.fro(U)):
        raise NotAntisymmetric("U^T != -U")
    gap = linalg.min_eigenvalue(np.eye(U.shape[0]) - dag(U) @ U)
    if gap < -tol:
        raise InvalidParameters(f"U^dag U exceeds identity (gap {gap})")


# ---------------------------------------------------------------------------
# catalog constructors

def reduction_decomposition(d: int) -> CPDecomposition:
    """R(X) = (Tr X) 1 - X, split as R1(X) = (Tr X) 1 and R2 = identity."""
    L1 = map_from_action(
        d, lambda X: np.trace(X) * np.eye(d), f"reduction_1(d={d})"
    )
    return CPDecomposition(
        L1, identity_map(d), True, "reduction", {"d": d}, indecomposable=False
    )


def tau_u_decomposition(U: np.ndarray) -> CPDecomposition:
    """tau^U = tau1 - tau2 with tau1 = (1/2) tau^U o R~, tau2 = (1/2) tau^U o R."""
    U = as_matrix(U)
    d = U.shape[0]

    def t1(X):
        return 0.5 * (U @ (np.trace(X) * np.eye(d) + X).T @ dag(U))

    def t2(X):
        return 0.5 * (U @ (np.trace(X) * np.eye(d) - X).T @ dag(U))

    return CPDecomposition(
        map_from_action(d, t1, f"tau_1^U(d={d})"),
        map_from_action(d, t2, f"tau_2^U(d={d})"),
        False,
        "tau_u",
        {"d": d, "U": U},
        indecomposable=False,
    )


def breuer_hall_decomposition(U: Optional[np.ndarray] = None, d: int = 4,
                              tol: float = DEFAULT_TOL) -> CPDecomposition:
    """L^U(X) = (Tr X) 1 - U X^T U^dag - X with lambda2 = identity.

    U must be antisymmetric with U^dag U <= 1.
    """
    if U is None:
        U = default_breuer_unitary(d)
    U = as_matrix(U)
    d = U.shape[0]
    _check_breuer_unitary(U, tol)
    L1 = map_from_action(
        d,
        lambda X: np.trace(X) * np.eye(d) - U @ X.T @ dag(U),
        f"breuer_hall_1(d={d})",
    )
    return CPDecomposition(
        L1, identity_map(d), True, "breuer_hall", {"d": d, "U": U},
        indecomposable=True,
    )


def breuer_hall_tilde_decomposition(U: Optional[np.ndarray] = None, d: int = 4,
                                    tol: float = DEFAULT_TOL) -> CPDecomposition:
    """L~^U(X) = (Tr X) 1 + U X^T U^dag - X with lambda2 = identity."""
    if U is None:
        U = default_breuer_unitary(d)
    U = as_matrix(U)
    d = U.shape[0]
    _check_breuer_unitary(U, tol)
    L1 = map_from_action(
        d,
        lambda X: np.trace(X) * np.eye(d) + U @ X.T @ dag(U),
        f"breuer_hall_tilde_1(d={d})",
    )
    return CPDecomposition(
        L1, identity_map(d), True, "breuer_hall_tilde", {"d": d, "U": U},
        indecomposable=False,
    )


def phi_dk_decomposition(d: int, k: int) -> CPDecomposition:
    """phi_{d,k}(X) = (d-k) eps(X) + sum_{i=1}^k eps(S^i X S^i+) - X.

    k = 0 is CP, k = d-1 is the reduction map, and phi_{3,1} is the Choi
    map; 1 <= k <= d-2 are indecomposable.
    """
    if not 0 <= k <= d - 1:
        raise InvalidParameters(f"require 0 <= k <= d-1, got k={k}, d={d}")
    S = shift_operator(d)
    powers = [np.linalg.matrix_power(S, i) for i in range(1, k + 1)]

    def L1(X):
        out = (d - k) * diagonal_pinch(X)
        for Si in powers:
            out = out + diagonal_pinch(Si @ X @ dag(Si))
        return out

    return CPDecomposition(
        map_from_action(d, L1, f"phi_{d},{k}^(1)"),
        identity_map(d),
        True,
        "phi_dk",
        {"d": d, "k": k},
        indecomposable=(1 <= k <= d - 2),
    )


def theta_positivity(a: float, c) -> dict:
    """Positivity/indecomposability conditions for Theta[a; c_1..c_d]."""
    c = np.asarray(c, dtype=float)
    d = len(c)
    if a <= 0 or np.any(c <= 0):
        raise InvalidParameters("a and all c_i must be positive")
    geo_mean = float(np.exp(np.mean(np.log(c))))
    positive = geo_mean >= d - a and a >= d - 1
    return {"positive": positive, "indecomposable": positive and a < d}


def theta_decomposition(a: float, c) -> CPDecomposition:
    """Theta[a; c_1..c_d] = Theta1 - I.

    Theta1(X) = a eps(X) + diag(c_d, c_1, .., c_{d-1}) eps(S X S+).
    Requires the positivity conditions a >= d-1 and geomean(c) >= d-a.
    """
    c = np.asarray(c, dtype=float)
    d = len(c)
    cond = theta_positivity(a, c)
    if not cond["positive"]:
        raise InvalidParameters(
            "Theta positivity requires a >= d-1 and (c_1..c_d)^(1/d) >= d-a"
        )
    S = shift_operator(d)
    D = np.diag(np.roll(c, 1).astype(complex))

    def L1(X):
        return a * diagonal_pinch(X) + D @ diagonal_pinch(S @ X @ dag(S))

    return CPDecomposition(
        map_from_action(d, L1, f"theta_1[a={a}]"),
        identity_map(d),
        True,
        "theta",
        {"a": a, "c": c},
        indecomposable=cond["indecomposable"],
    )


def identity_decomposition(d: int) -> CPDecomposition:
    """Trivial decomposition I = (2I) - I, useful for plumbing tests."""
    two = MatrixMap(d, 2 * identity_map(d).choi, f"2*identity(d={d})")
    return CPDecomposition(
        two, identity_map(d), True, "identity", {"d": d}, indecomposable=False
    )


def transposition_decomposition(d: int) -> CPDecomposition:
    """Plain transposition via tau^U with U = identity."""
    dec = tau_u_decomposition(np.eye(d))
    return CPDecomposition(
        dec.lambda1, dec.lambda2, False, "transposition", {"d": d},
        indecomposable=False,
    )


_FAMILIES = {}


def make_decomposition(family: str, **params) -> CPDecomposition:
    """Construct a catalog decomposition by family name.

    Families: reduction(d), identity(d), transposition(d), tau_u(U),
    breuer_hall(U or d), breuer_hall_tilde(U or d), phi_dk(d, k),
    theta(a, c), kossakowski(a_matrix).
    """
    try:
        ctor = _FAMILIES[family]
    except KeyError:
        raise InvalidParameters(
            f"unknown map family {family!r}; known: {sorted(_FAMILIES)}"
        ) from None
    return ctor(**params)


def kossakowski_decomposition(a_matrix) -> CPDecomposition:
    """Diagonal Kossakowski-class map phi = phi1 - I.

    phi1(|i><i|) = sum_j (a_ij + delta_ij) |j><j| and phi1 kills the
    off-diagonal matrix units.  CP of phi1 requires a_ij + delta_ij >= 0;
    positivity of phi itself is never certified, only sampled.
    """
    A = np.asarray(a_matrix, dtype=float)
    d = A.shape[0]
    if A.shape != (d, d):
        raise InvalidParameters("a_matrix must be square")
    if np.any(A + np.eye(d) < 0):
        raise InvalidParameters("require a_ij + delta_ij >= 0 for all i, j")

    B = (A + np.eye(d)).astype(complex)

    def L1(X):
        return np.diag(np.diag(X) @ B)

    return CPDecomposition(
        map_from_action(d, L1, "kossakowski_1"),
        identity_map(d),
        True,
        "kossakowski",
        {"a_matrix": A},
        positivity_unverified=True,
    )


_FAMILIES.update({
    "reduction": reduction_decomposition,
    "identity": identity_decomposition,
    "transposition": transposition_decomposition,
    "tau_u": tau_u_decomposition,
    "breuer_hall": breuer_hall_decomposition,
    "breuer_hall_tilde": breuer_hall_tilde_decomposition,
    "phi_dk": phi_dk_decomposition,
    "theta": theta_decomposition,
    "kossakowski": kossakowski_decomposition,
})
