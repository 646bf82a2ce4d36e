"""Minkowski space (R^4, gamma) with components ordered (x, y, z, t).

The metric is G = diag(-1, -1, -1, 1).  Four-vectors are plain float64
numpy arrays of shape (4,); helpers here validate and freeze them.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotLightlike, NotTimelike, PoincareError

G = np.diag([-1.0, -1.0, -1.0, 1.0])
G.setflags(write=False)

# Gram matrix of gamma in a null frame (Phat, Q, Q', P).
G_NULL = np.array(
    [
        [0.0, 0.0, 0.0, 1.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ]
)
G_NULL.setflags(write=False)

E1, E2, E3, E4 = (np.eye(4)[i] for i in range(4))
for _e in (E1, E2, E3, E4):
    _e.setflags(write=False)


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative thresholds used by every decision in the package.

    ``classify`` governs zero tests that change the outcome (causal type,
    vanishing spin, vanishing x); ``structural`` bounds residuals of
    identities that hold by construction (frames, Lorentz constraint).
    All thresholds are multiplied by ``scale(...) = max(1, norm)``.
    """

    classify: float = 1e-8
    structural: float = 1e-10

    def __post_init__(self):
        if not (self.classify > 0 and self.structural > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = ToleranceConfig()


def scale(*arrays) -> float:
    """max(1, Euclidean norm of all the given arrays taken together)."""
    total = sum(float(np.sum(np.square(a))) for a in arrays)
    return max(1.0, float(np.sqrt(total)))


def four_vector(v) -> np.ndarray:
    """Return ``v`` as a read-only float64 array of shape (4,), checking finiteness."""
    arr = np.array(v, dtype=np.float64).reshape(-1)
    if arr.shape != (4,):
        raise PoincareError(f"four-vector needs 4 components, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise PoincareError("four-vector components must be finite")
    arr.setflags(write=False)
    return arr


def gamma(u, v) -> float:
    """Lorentz inner product -u.x v.x - u.y v.y - u.z v.z + u.t v.t."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return float(-u[0] * v[0] - u[1] * v[1] - u[2] * v[2] + u[3] * v[3])


class CausalTag(enum.Enum):
    ZERO = "zero"
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


@dataclass(frozen=True)
class CausalType:
    tag: CausalTag
    mu: Optional[float] = None

    @property
    def epsilon(self) -> Optional[int]:
        return {CausalTag.TIMELIKE: 1, CausalTag.SPACELIKE: -1}.get(self.tag)


def causal_type(p, tol: ToleranceConfig = DEFAULT_TOL) -> CausalType:
    p = np.asarray(p, dtype=np.float64)
    s = scale(p)
    if np.linalg.norm(p) <= tol.classify * s:
        return CausalType(CausalTag.ZERO)
    q = gamma(p, p)
    if abs(q) <= tol.classify * s * s:
        return CausalType(CausalTag.LIGHTLIKE)
    tag = CausalTag.TIMELIKE if q > 0 else CausalTag.SPACELIKE
    return CausalType(tag, float(np.sqrt(abs(q))))


def _frozen(v):
    v = np.array(v, dtype=np.float64)
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class TimelikeFrame:
    """gamma-orthonormal basis (w1, w2, w3) of P's orthogonal complement plus P/mu."""

    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray
    p_hat: np.ndarray

    def matrix(self) -> np.ndarray:
        """Columns (w1, w2, w3, p_hat); its Gram matrix is G."""
        return np.column_stack([self.w1, self.w2, self.w3, self.p_hat])


@dataclass(frozen=True, eq=False)
class LightlikeFrame:
    """Null frame (f1, f2, f3, f4) = (Phat, Q, Q', P) with Gram matrix G_NULL."""

    f1: np.ndarray
    f2: np.ndarray
    f3: np.ndarray
    f4: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.column_stack([self.f1, self.f2, self.f3, self.f4])


def _negative_complement(fixed: np.ndarray, count: int) -> list:
    """Pivoted Gram-Schmidt for ``count`` vectors spanning the gamma-complement of ``fixed``.

    ``fixed`` holds column vectors spanning a nondegenerate subspace whose
    complement is negative definite.  Candidates are the standard basis
    vectors; at each step the one with the largest |gamma(v, v)| after
    projection is kept and normalized to gamma(w, w) = -1.
    """
    basis = [fixed[:, j] for j in range(fixed.shape[1])]
    chosen: list = []
    for _ in range(count):
        span = np.column_stack(basis + chosen)
        gram = span.T @ G @ span
        gram_inv = np.linalg.inv(gram)

        def project(v):
            # two passes: classical GS loses orthogonality on boosted frames
            for _pass in range(2):
                v = v - span @ (gram_inv @ (span.T @ (G @ v)))
            return v

        best, best_norm = None, -1.0
        for i in range(4):
            v = project(np.eye(4)[i])
            n = abs(gamma(v, v))
            if n > best_norm * (1 + 1e-12):
                best, best_norm = v, n
        if best is None or best_norm == 0.0:
            raise PoincareError("degenerate frame construction")
        chosen.append(best / np.sqrt(best_norm))
    return chosen


def timelike_frame(p, tol: ToleranceConfig = DEFAULT_TOL) -> TimelikeFrame:
    p = np.asarray(p, dtype=np.float64)
    ct = causal_type(p, tol)
    if ct.tag is not CausalTag.TIMELIKE:
        raise NotTimelike(f"momentum is {ct.tag.value}, expected timelike")
    p_hat = p / ct.mu
    w1, w2, w3 = _negative_complement(p_hat[:, None], 3)
    return TimelikeFrame(_frozen(w1), _frozen(w2), _frozen(w3), _frozen(p_hat))


def lightlike_frame(p, tol: ToleranceConfig = DEFAULT_TOL) -> LightlikeFrame:
    p = np.asarray(p, dtype=np.float64)
    ct = causal_type(p, tol)
    if ct.tag is not CausalTag.LIGHTLIKE:
        raise NotLightlike(f"momentum is {ct.tag.value}, expected lightlike")
    energy = p[3]
    p_hat = np.concatenate([-p[:3], [energy]]) / (2.0 * energy * energy)
    q, q_prime = _negative_complement(np.column_stack([p_hat, p]), 2)
    return LightlikeFrame(_frozen(p_hat), _frozen(q), _frozen(q_prime), _frozen(p))


def frame_inverse(frame_matrix: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """Inverse of a basis matrix B whose Gram matrix B^T G B equals ``gram``."""
    return np.linalg.inv(gram) @ frame_matrix.T @ G
