"""The Poincare group, its Lie algebra, and the coadjoint action.

Lorentz algebra elements are stored as a rotation part ``l`` and a boost
part ``g`` so that the o(3,1) constraint M^T G + G M = 0 holds by
construction.  Group elements are pairs (S, C) acting on Minkowski space
by v -> S v + C.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConstraintError, PoincareError
from .minkowski import G, four_vector, gamma, scale

STRUCTURAL_TOL = 1e-10


def hat(l) -> np.ndarray:
    """Skew matrix of ``l``; ``hat(l) @ r == np.cross(l, r)``."""
    l1, l2, l3 = np.asarray(l, dtype=np.float64)
    return np.array([[0.0, -l3, l2], [l3, 0.0, -l1], [-l2, l1, 0.0]])


def _vec3(v, name):
    arr = np.array(v, dtype=np.float64).reshape(-1)
    if arr.shape != (3,):
        raise PoincareError(f"{name} needs 3 components, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise PoincareError(f"{name} components must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LorentzAlgebraElement:
    l: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "l", _vec3(self.l, "l"))
        object.__setattr__(self, "g", _vec3(self.g, "g"))

    @classmethod
    def zero(cls) -> "LorentzAlgebraElement":
        return cls(np.zeros(3), np.zeros(3))

    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        m[:3, :3] = hat(self.l)
        m[:3, 3] = self.g
        m[3, :3] = self.g
        return m

    @classmethod
    def from_matrix(cls, m, tol: float = STRUCTURAL_TOL) -> "LorentzAlgebraElement":
        """Read (l, g) off a 4x4 matrix, rejecting it if M^T G + G M != 0.

        The check is relative to max(1, |M|).  On failure the error carries
        the (row, col) of the worst entry of M^T G + G M.
        """
        m = np.asarray(m, dtype=np.float64)
        if m.shape != (4, 4):
            raise ConstraintError(f"M must be 4x4, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ConstraintError("M entries must be finite")
        defect = m.T @ G + G @ m
        worst = np.unravel_index(np.argmax(np.abs(defect)), defect.shape)
        residual = float(np.abs(defect[worst]))
        if residual > tol * scale(m):
            raise ConstraintError(
                f"M violates M^T G + G M = 0 at entry {tuple(int(i) for i in worst)} "
                f"(residual {residual:.3e})",
                entry=tuple(int(i) for i in worst),
                residual=residual,
            )
        return cls._project(m)

    @classmethod
    def _project(cls, m) -> "LorentzAlgebraElement":
        # orthogonal projection onto o(3,1); used on matrices that are in
        # the algebra up to rounding
        l = 0.5 * np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])
        g = 0.5 * (m[:3, 3] + m[3, :3])
        return cls(l, g)

    def __add__(self, other):
        return LorentzAlgebraElement(self.l + other.l, self.g + other.g)

    def __sub__(self, other):
        return LorentzAlgebraElement(self.l - other.l, self.g - other.g)

    def __mul__(self, k):
        return LorentzAlgebraElement(k * self.l, k * self.g)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.sqrt(self.l @ self.l + self.g @ self.g))

    def __repr__(self):
        return f"LorentzAlgebraElement(l={self.l.tolist()}, g={self.g.tolist()})"


def lorentz_inverse(s) -> np.ndarray:
    """S^{-1} = G S^T G, exact for Lorentz matrices."""
    return G @ np.asarray(s).T @ G


@dataclass(frozen=True, eq=False)
class LorentzMatrix:
    """A 4x4 matrix with S^T G S = G, validated on construction.

    ``tol`` is relative to max(1, |S|)^2, the size of the entries of S^T G S.
    """

    s: np.ndarray
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        s = np.array(self.s, dtype=np.float64)
        if s.shape != (4, 4):
            raise ConstraintError(f"S must be 4x4, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ConstraintError("S entries must be finite")
        defect = s.T @ G @ s - G
        worst = np.unravel_index(np.argmax(np.abs(defect)), defect.shape)
        residual = float(np.abs(defect[worst]))
        if residual > self.tol * scale(s) ** 2:
            raise ConstraintError(
                f"S violates S^T G S = G at entry {tuple(int(i) for i in worst)} "
                f"(residual {residual:.3e})",
                entry=tuple(int(i) for i in worst),
                residual=residual,
            )
        s.setflags(write=False)
        object.__setattr__(self, "s", s)

    @classmethod
    def identity(cls) -> "LorentzMatrix":
        return cls(np.eye(4))

    @cached_property
    def det(self) -> int:
        return 1 if np.linalg.det(self.s) > 0 else -1

    @cached_property
    def orthochronous(self) -> bool:
        return bool(self.s[3, 3] > 0)

    def inverse(self) -> "LorentzMatrix":
        return LorentzMatrix(lorentz_inverse(self.s), self.tol)

    def __matmul__(self, other: "LorentzMatrix") -> "LorentzMatrix":
        return LorentzMatrix(self.s @ other.s, max(self.tol, other.tol))


@dataclass(frozen=True, eq=False)
class PoincareElement:
    s: LorentzMatrix
    c: np.ndarray

    def __post_init__(self):
        if not isinstance(self.s, LorentzMatrix):
            object.__setattr__(self, "s", LorentzMatrix(self.s))
        object.__setattr__(self, "c", four_vector(self.c))

    @classmethod
    def identity(cls) -> "PoincareElement":
        return cls(LorentzMatrix.identity(), np.zeros(4))

    @classmethod
    def translation(cls, c) -> "PoincareElement":
        return cls(LorentzMatrix.identity(), c)

    @classmethod
    def lorentz(cls, s, tol: float = STRUCTURAL_TOL) -> "PoincareElement":
        if not isinstance(s, LorentzMatrix):
            s = LorentzMatrix(s, tol)
        return cls(s, np.zeros(4))

    def matrix(self) -> np.ndarray:
        """5x5 affine realization [[S, C], [0, 1]]."""
        out = np.eye(5)
        out[:4, :4] = self.s.s
        out[:4, 4] = self.c
        return out

    def __mul__(self, other: "PoincareElement") -> "PoincareElement":
        return group_multiply(self, other)

    def __repr__(self):
        return f"PoincareElement(S={self.s.s.tolist()}, C={self.c.tolist()})"


def group_multiply(a: PoincareElement, b: PoincareElement) -> PoincareElement:
    """(S1, C1) . (S2, C2) = (S1 S2, S1 C2 + C1)."""
    return PoincareElement(a.s @ b.s, a.s.s @ b.c + a.c)


def group_inverse(a: PoincareElement) -> PoincareElement:
    s_inv = a.s.inverse()
    return PoincareElement(s_inv, -(s_inv.s @ a.c))


@dataclass(frozen=True, eq=False)
class CoadjointPoint:
    """A covector nu = (M, P), identified with a Lie algebra element via the pairing."""

    m: LorentzAlgebraElement
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", four_vector(self.p))

    @classmethod
    def from_parts(cls, l, g, p) -> "CoadjointPoint":
        return cls(LorentzAlgebraElement(l, g), p)

    @property
    def momentum(self) -> np.ndarray:
        return self.p

    @property
    def energy(self) -> float:
        return float(self.p[3])

    def as_vector(self) -> np.ndarray:
        """Flatten to the 10-vector (l, g, P)."""
        return np.concatenate([self.m.l, self.m.g, self.p])

    def scale(self) -> float:
        return scale(self.as_vector())

    def __repr__(self):
        return f"CoadjointPoint(l={self.m.l.tolist()}, g={self.m.g.tolist()}, P={self.p.tolist()})"


def point_distance(a: CoadjointPoint, b: CoadjointPoint) -> float:
    return float(np.linalg.norm(a.as_vector() - b.as_vector()))


def pair(nu: CoadjointPoint, xi: CoadjointPoint) -> float:
    """<nu | xi> = -1/2 tr(M_nu M_xi) - gamma(P_nu, P_xi)."""
    trace = np.trace(nu.m.matrix() @ xi.m.matrix())
    return float(-0.5 * trace - gamma(nu.p, xi.p))


def l_operator(c, v) -> LorentzAlgebraElement:
    """The element L with L x = gamma(v, x) c - gamma(c, x) v for every x."""
    c = np.asarray(c, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return LorentzAlgebraElement(np.cross(c[:3], v[:3]), v[3] * c[:3] - c[3] * v[:3])


def coadjoint_act(element: PoincareElement, nu: CoadjointPoint) -> CoadjointPoint:
    """(S, C) . (M, P) = (S M S^{-1} + L_{C, SP}, S P)."""
    s = element.s.s
    sp = s @ nu.p
    conj = LorentzAlgebraElement._project(s @ nu.m.matrix() @ lorentz_inverse(s))
    return CoadjointPoint(conj + l_operator(element.c, sp), sp)


class Involution(enum.Enum):
    SPACE = "space"
    TIME = "time"
    SPACETIME = "spacetime"


I_S = np.diag([-1.0, -1.0, -1.0, 1.0])
I_T = np.diag([1.0, 1.0, 1.0, -1.0])


def involution(kind: Involution) -> PoincareElement:
    kind = Involution(kind)
    s = {Involution.SPACE: I_S, Involution.TIME: I_T, Involution.SPACETIME: I_S @ I_T}[kind]
    return PoincareElement.lorentz(s)


def polarization(nu: CoadjointPoint) -> np.ndarray:
    """W = (p x g + E l, <p, l>)."""
    p, energy = nu.p[:3], nu.p[3]
    spatial = np.cross(p, nu.m.g) + energy * nu.m.l
    return np.concatenate([spatial, [p @ nu.m.l]])


def casimirs(nu: CoadjointPoint) -> tuple[float, float]:
    w = polarization(nu)
    return gamma(nu.p, nu.p), gamma(w, w)


def algebra_basis() -> list[CoadjointPoint]:
    """Standard basis of the 10-dimensional Lie algebra: l_i, g_i, e_i."""
    out = []
    for i in range(3):
        out.append(CoadjointPoint.from_parts(np.eye(3)[i], np.zeros(3), np.zeros(4)))
    for i in range(3):
        out.append(CoadjointPoint.from_parts(np.zeros(3), np.eye(3)[i], np.zeros(4)))
    for i in range(4):
        out.append(CoadjointPoint.from_parts(np.zeros(3), np.zeros(3), np.eye(4)[i]))
    return out
