"""The flat hyperkahler model fiber and its exterior-algebra representation.

The fiber is V = H^n with orthonormal basis e_0..e_{4n-1}, metric the
identity, and I, J, K acting blockwise by left quaternion multiplication
(e_0, e_1, e_2, e_3) <-> (1, i, j, k).  This fixes every sign convention
downstream: omega_I = e^01 + e^23, omega_J = e^02 - e^13, omega_K = e^03 + e^12
per block, and the J-holomorphic symplectic form Omega = (omega_K + i omega_I)/2
has bidegree (2, 0) for J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exterior import ExteriorAlgebra
from .quaternions import TwistorPoint


@dataclass(frozen=True)
class FiberOperator:
    """Complex matrix acting on Lambda(V* (x) C), tagged with a symbol label."""

    matrix: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other):
        m = other.matrix if isinstance(other, FiberOperator) else other
        out = self.matrix @ m
        if isinstance(other, FiberOperator):
            return FiberOperator(out, f"{self.label}*{other.label}")
        return out

    def adjoint(self) -> "FiberOperator":
        return FiberOperator(self.matrix.conj().T, f"{self.label}^*")

    def inverse(self) -> "FiberOperator":
        return FiberOperator(np.linalg.inv(self.matrix), f"{self.label}^-1")

    def selfadjoint_residual(self) -> float:
        return float(np.linalg.norm(self.matrix - self.matrix.conj().T, 2))

    def unitary_residual(self) -> float:
        M = self.matrix
        return float(np.linalg.norm(M.conj().T @ M - np.eye(self.dim), 2))


@dataclass(frozen=True)
class FiberForm:
    """Degree-k element with coefficients over the lex degree-k monomial basis."""

    degree: int
    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           np.asarray(self.coefficients, dtype=complex))

    def vector(self, fiber: "HyperkahlerFiber") -> np.ndarray:
        alg = fiber.algebra
        expected = math.comb(alg.d, self.degree)
        if len(self.coefficients) != expected:
            raise ValueError(
                f"degree-{self.degree} form needs {expected} coefficients, "
                f"got {len(self.coefficients)}")
        return alg.form_vector(self.degree, self.coefficients)

    def conjugate(self) -> "FiberForm":
        return FiberForm(self.degree, self.coefficients.conj())

    def __add__(self, other: "FiberForm") -> "FiberForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return FiberForm(self.degree, self.coefficients + other.coefficients)

    def __rmul__(self, scalar) -> "FiberForm":
        return FiberForm(self.degree, scalar * self.coefficients)


@dataclass(frozen=True)
class HyperkahlerFiber:
    """Quaternionic Hermitian vector space (V, g, I, J, K) with dim_R V = 4n."""

    n: int
    g: np.ndarray
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray
    algebra: ExteriorAlgebra = field(compare=False, repr=False, default=None)

    @property
    def d(self) -> int:
        return 4 * self.n

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def structure_residual(self) -> float:
        """Max deviation from the quaternion and compatibility relations."""
        eye = np.eye(self.d)
        res = [
            np.abs(self.I @ self.I + eye).max(),
            np.abs(self.J @ self.J + eye).max(),
            np.abs(self.K @ self.K + eye).max(),
            np.abs(self.I @ self.J - self.K).max(),
            np.abs(self.J @ self.K - self.I).max(),
            np.abs(self.K @ self.I - self.J).max(),
        ]
        for X in (self.I, self.J, self.K):
            res.append(np.abs(X.T @ self.g @ X - self.g).max())
        return float(max(res))


def _left_mult_block(x: float, y: float, z: float) -> np.ndarray:
    # left multiplication by x i + y j + z k on H = span(1, i, j, k)
    return np.array([
        [0.0, -x, -y, -z],
        [x, 0.0, -z, y],
        [y, z, 0.0, -x],
        [z, -y, x, 0.0],
    ])


def standard_fiber(n: int) -> HyperkahlerFiber:
    """The flat model H^n with g = Id and I, J, K left quaternion multiplication."""
    if n < 1:
        raise ValueError("empty fiber: n must be >= 1")
    blocks = {
        "I": _left_mult_block(1.0, 0.0, 0.0),
        "J": _left_mult_block(0.0, 1.0, 0.0),
        "K": _left_mult_block(0.0, 0.0, 1.0),
    }
    d = 4 * n
    mats = {}
    for name, B in blocks.items():
        M = np.zeros((d, d))
        for b in range(n):
            M[4 * b:4 * b + 4, 4 * b:4 * b + 4] = B
        mats[name] = M
    return HyperkahlerFiber(n=n, g=np.eye(d), I=mats["I"], J=mats["J"],
                            K=mats["K"], algebra=ExteriorAlgebra(d))


def complex_structure(fiber: HyperkahlerFiber, zeta: TwistorPoint) -> np.ndarray:
    """J_zeta = zeta_I I + zeta_J J + zeta_K K."""
    return zeta.zeta_I * fiber.I + zeta.zeta_J * fiber.J + zeta.zeta_K * fiber.K


def kahler_form(fiber: HyperkahlerFiber, zeta: TwistorPoint) -> FiberForm:
    """omega_zeta(u, v) = g(J_zeta u, v) as a degree-2 form."""
    M = fiber.g @ complex_structure(fiber, zeta)
    # omega(e_a, e_b) = (g J)_{ba}
    coeffs = [M[b, a] for (a, b) in fiber.algebra.multi_indices(2)]
    return FiberForm(2, np.array(coeffs, dtype=complex))


def holomorphic_symplectic(fiber: HyperkahlerFiber) -> FiberForm:
    """Omega = (omega_K + i omega_I)/2, holomorphic symplectic for J."""
    wk = kahler_form(fiber, TwistorPoint(0.0, 0.0, 1.0))
    wi = kahler_form(fiber, TwistorPoint(1.0, 0.0, 0.0))
    return FiberForm(2, 0.5 * (wk.coefficients + 1j * wi.coefficients))


def form_coefficient_matrix(fiber: HyperkahlerFiber, form: FiberForm) -> np.ndarray:
    """Antisymmetric d x d coefficient matrix of a degree-2 form."""
    if form.degree != 2:
        raise ValueError("coefficient matrix is defined for 2-forms")
    d = fiber.d
    W = np.zeros((d, d), dtype=complex)
    for idx, (a, b) in enumerate(fiber.algebra.multi_indices(2)):
        W[a, b] = form.coefficients[idx]
        W[b, a] = -form.coefficients[idx]
    return W


def wedge_operator(fiber: HyperkahlerFiber, form: FiberForm) -> FiberOperator:
    """Left exterior multiplication by the given form."""
    alg = fiber.algebra
    if form.degree == 1:
        M = alg.wedge_1form(form.coefficients)
    elif form.degree == 2:
        M = alg.wedge_2form(form_coefficient_matrix(fiber, form))
    else:
        M = alg.wedge_element(form.vector(fiber))
    return FiberOperator(M, f"wedge(deg {form.degree})")


def contraction_operator(fiber: HyperkahlerFiber, vector) -> FiberOperator:
    """Interior product with a (complex) fiber vector."""
    return FiberOperator(fiber.algebra.contraction(vector), "contraction")


def type_derivation(fiber: HyperkahlerFiber, zeta: TwistorPoint) -> np.ndarray:
    """Derivation with eigenvalue (p - q) sqrt(-1) on the (p, q)_zeta slice.

    It extends precomposition with J_zeta on 1-forms, i.e. the coefficient
    action of J_zeta^T; (1, 0)-forms are its +i eigenvectors.
    """
    return fiber.algebra.derivation(complex_structure(fiber, zeta).T)


def _bidegrees_of_degree(n: int, k: int) -> list[tuple[int, int]]:
    return [(k - q, q) for q in range(k + 1) if k - q <= 2 * n and q <= 2 * n]


def bidegree_projector(fiber: HyperkahlerFiber, zeta: TwistorPoint,
                       p: int, q: int) -> FiberOperator:
    """Spectral projector onto the (p, q)_{J_zeta} slice of the algebra.

    Built as the Lagrange interpolant of the type derivation on the
    total-degree-(p+q) block, so one code path serves every zeta.
    """
    if not (0 <= p <= 2 * fiber.n and 0 <= q <= 2 * fiber.n):
        raise ValueError(f"bidegree ({p}, {q}) out of range for n = {fiber.n}")
    D = type_derivation(fiber, zeta)
    k = p + q
    alg = fiber.algebra
    M = alg.degree_projector(k).astype(complex)
    lam = (p - q) * 1j
    for (p2, q2) in _bidegrees_of_degree(fiber.n, k):
        if (p2, q2) == (p, q):
            continue
        lam2 = (p2 - q2) * 1j
        M = (D - lam2 * np.eye(alg.dim)) @ M / (lam - lam2)
    return FiberOperator(M, f"P^({p},{q})")


def bidegree_projectors(fiber: HyperkahlerFiber, zeta: TwistorPoint) -> dict:
    """All (p, q) projectors of J_zeta, keyed by bidegree."""
    out = {}
    for k in range(fiber.d + 1):
        for (p, q) in _bidegrees_of_degree(fiber.n, k):
            out[(p, q)] = bidegree_projector(fiber, zeta, p, q)
    return out


def slice_basis(fiber: HyperkahlerFiber, projector: FiberOperator) -> np.ndarray:
    """Orthonormal column basis of the range of an (orthogonal) projector."""
    w, V = np.linalg.eigh(0.5 * (projector.matrix + projector.matrix.conj().T))
    cols = V[:, w > 0.5]
    # re-orthonormalize against roundoff
    Q, _ = np.linalg.qr(cols)
    return Q


def zero_one_star_projector(fiber: HyperkahlerFiber, zeta: TwistorPoint,
                            parity: str = "all") -> FiberOperator:
    """Projector onto (0, *)_zeta, optionally restricted to even or odd q."""
    qs = range(0, 2 * fiber.n + 1)
    if parity == "even":
        qs = range(0, 2 * fiber.n + 1, 2)
    elif parity == "odd":
        qs = range(1, 2 * fiber.n + 1, 2)
    elif parity != "all":
        raise ValueError("parity must be 'all', 'even' or 'odd'")
    M = sum(bidegree_projector(fiber, zeta, 0, q).matrix for q in qs)
    return FiberOperator(M, f"P^(0,{parity})")
