"""Normal forms for the three physically significant Poincare coadjoint orbits.

Given nu = (M, P), the reduction picks a frame adapted to P, removes the
parts of M that a translation can absorb, and reads off the remaining
invariants:

* timelike P: mass mu = sqrt(gamma(P, P)); after translating to the rest
  frame M restricts to a 3x3 rotation generator with angle rate beta.
* lightlike P: in a null frame (Phat, Q, Q', P) the translated M has the
  block form [[0, x^T, 0], [0, Y', x], [0, 0, 0]]; the orbit is the
  massless helicity orbit when x = 0 and Y' != 0.

Every witness group element is checked by applying it to the input.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import (
    CoadjointPoint,
    LorentzAlgebraElement,
    LorentzMatrix,
    PoincareElement,
    coadjoint_act,
    group_multiply,
    lorentz_inverse,
    point_distance,
    polarization,
)
from .errors import NotLightlike, NotTimelike, OutOfCatalogError, PoincareError
from .minkowski import (
    DEFAULT_TOL,
    G,
    G_NULL,
    CausalTag,
    LightlikeFrame,
    ToleranceConfig,
    causal_type,
    frame_inverse,
    gamma,
    lightlike_frame,
    scale,
    timelike_frame,
)

# a decisive quantity within this factor of its threshold marks the result marginal
MARGINAL_FACTOR = 10.0

# normal_form refuses a witness whose relative residual exceeds this many classify tolerances
WITNESS_SLACK = 10.0


class OrbitTag(enum.Enum):
    MASSIVE_SPINNING = "massive-spinning"
    MASSIVE_SPINLESS = "massive-spinless"
    MASSLESS_HELICITY = "massless-helicity"
    OUT_OF_CATALOG = "out-of-catalog"


class Reason(enum.Enum):
    ZERO_MOMENTUM = "zero-momentum"
    SPACELIKE_MOMENTUM = "spacelike-momentum"
    MASSLESS_SPINLESS = "massless-spinless"
    CONTINUOUS_SPIN = "continuous-spin"


@dataclass(frozen=True)
class OrbitClass:
    tag: OrbitTag
    mu: Optional[float] = None
    beta: Optional[float] = None
    reason: Optional[Reason] = None
    marginal: bool = field(default=False, compare=False)

    def __post_init__(self):
        tag = OrbitTag(self.tag)
        object.__setattr__(self, "tag", tag)
        needs_mu = tag in (OrbitTag.MASSIVE_SPINNING, OrbitTag.MASSIVE_SPINLESS)
        needs_beta = tag in (OrbitTag.MASSIVE_SPINNING, OrbitTag.MASSLESS_HELICITY)
        if needs_mu != (self.mu is not None):
            raise PoincareError(f"{tag.value}: mu must be {'given' if needs_mu else 'absent'}")
        if needs_beta != (self.beta is not None):
            raise PoincareError(f"{tag.value}: beta must be {'given' if needs_beta else 'absent'}")
        if self.mu is not None and not self.mu > 0:
            raise PoincareError("mu must be positive")
        if self.beta is not None and not self.beta > 0:
            raise PoincareError("beta must be positive")
        if (tag is OrbitTag.OUT_OF_CATALOG) != (self.reason is not None):
            raise PoincareError("reason is required exactly for out-of-catalog classes")
        if self.reason is not None:
            object.__setattr__(self, "reason", Reason(self.reason))

    @property
    def in_catalog(self) -> bool:
        return self.tag is not OrbitTag.OUT_OF_CATALOG

    @classmethod
    def massive_spinning(cls, mu, beta):
        return cls(OrbitTag.MASSIVE_SPINNING, mu=float(mu), beta=float(beta))

    @classmethod
    def massive_spinless(cls, mu):
        return cls(OrbitTag.MASSIVE_SPINLESS, mu=float(mu))

    @classmethod
    def massless_helicity(cls, beta):
        return cls(OrbitTag.MASSLESS_HELICITY, beta=float(beta))

    @classmethod
    def out_of_catalog(cls, reason):
        return cls(OrbitTag.OUT_OF_CATALOG, reason=Reason(reason))


@dataclass(frozen=True)
class ComponentLabel:
    """Connected-component signs: energy always, spin for massive spinning, helicity for massless."""

    energy_sign: int
    helicity_sign: Optional[int] = None
    spin_sign: Optional[int] = None

    def __post_init__(self):
        for name in ("energy_sign", "helicity_sign", "spin_sign"):
            value = getattr(self, name)
            if value is not None and value not in (1, -1):
                raise PoincareError(f"{name} must be +1 or -1, got {value!r}")
        if self.spin_sign is not None and self.spin_sign != self.energy_sign:
            raise PoincareError("spin sign equals the energy sign on massive spinning orbits")


@dataclass(frozen=True, eq=False)
class NormalFormResult:
    cls: OrbitClass
    labels: ComponentLabel
    representative: CoadjointPoint
    witness: PoincareElement
    residual: float


@dataclass(frozen=True, eq=False)
class ReducedLightlikeForm:
    """Null-frame block data of M for lightlike P (P is f4 in the frame)."""

    a: float
    y: np.ndarray
    x: np.ndarray
    yprime: np.ndarray
    frame: LightlikeFrame

    def block_matrix(self) -> np.ndarray:
        """[[a, x^T, 0], [y, Y', x], [0, y^T, -a]] in frame coordinates."""
        m = np.zeros((4, 4))
        m[0, 0], m[3, 3] = self.a, -self.a
        m[0, 1:3] = self.x
        m[1:3, 0] = self.y
        m[1:3, 1:3] = self.yprime
        m[1:3, 3] = self.x
        m[3, 1:3] = self.y
        return m

    def to_matrix(self) -> np.ndarray:
        """The block form conjugated back to standard coordinates."""
        f = self.frame.matrix()
        return f @ self.block_matrix() @ frame_inverse(f, G_NULL)

    @property
    def beta(self) -> float:
        return abs(self.rotation_rate)

    @property
    def rotation_rate(self) -> float:
        return 0.5 * float(self.yprime[1, 0] - self.yprime[0, 1])


def representative(cls: OrbitClass) -> CoadjointPoint:
    """The canonical point of a catalogued orbit (energy and helicity positive)."""
    if cls.tag is OrbitTag.MASSIVE_SPINNING:
        return CoadjointPoint.from_parts([0, 0, cls.beta], [0, 0, 0], [0, 0, 0, cls.mu])
    if cls.tag is OrbitTag.MASSIVE_SPINLESS:
        return CoadjointPoint.from_parts([0, 0, 0], [0, 0, 0], [0, 0, 0, cls.mu])
    if cls.tag is OrbitTag.MASSLESS_HELICITY:
        r = 1.0 / math.sqrt(2.0)
        return CoadjointPoint.from_parts([cls.beta, 0, 0], [0, 0, 0], [r, 0, 0, r])
    raise OutOfCatalogError(cls)


def rest_translation(nu: CoadjointPoint, tol: ToleranceConfig = DEFAULT_TOL):
    """Translate so that the new M annihilates the timelike momentum P.

    Returns the translation (I, C) with C = -M P / gamma(P, P) and the
    translated point.  Afterwards the gamma-complement of P is invariant
    under M.
    """
    ct = causal_type(nu.p, tol)
    if ct.tag is not CausalTag.TIMELIKE:
        raise NotTimelike(f"momentum is {ct.tag.value}, expected timelike")
    c = -(nu.m.matrix() @ nu.p) / gamma(nu.p, nu.p)
    t = PoincareElement.translation(c)
    return t, coadjoint_act(t, nu)


def reduce_lightlike(nu: CoadjointPoint, tol: ToleranceConfig = DEFAULT_TOL):
    """Null-frame reduction for lightlike P.

    Writes M in the frame (Phat, Q, Q', P), then translates by
    -(a Phat + y_1 Q + y_2 Q') to clear a and y.  Returns that translation
    and the block data of the translated M.
    """
    ct = causal_type(nu.p, tol)
    if ct.tag is not CausalTag.LIGHTLIKE:
        raise NotLightlike(f"momentum is {ct.tag.value}, expected lightlike")
    frame = lightlike_frame(nu.p, tol)
    f = frame.matrix()
    f_inv = frame_inverse(f, G_NULL)
    m_frame = f_inv @ nu.m.matrix() @ f
    a, y = m_frame[0, 0], m_frame[1:3, 0]
    t = PoincareElement.translation(f @ np.array([-a, -y[0], -y[1], 0.0]))
    moved = coadjoint_act(t, nu)
    m_red = f_inv @ moved.m.matrix() @ f
    yprime = m_red[1:3, 1:3]
    yprime = 0.5 * (yprime - yprime.T)
    reduced = ReducedLightlikeForm(
        a=float(m_red[0, 0]),
        y=m_red[1:3, 0].copy(),
        x=m_red[1:3, 3].copy(),
        yprime=yprime,
        frame=frame,
    )
    return t, reduced


@dataclass
class _Analysis:
    cls: OrbitClass
    translation: Optional[PoincareElement] = None
    basis: Optional[np.ndarray] = None  # columns map to the representative's e1..e4
    rest_rotation: Optional[np.ndarray] = None  # rest-frame l vector (timelike only)


def _near(q: float, threshold: float) -> bool:
    return threshold / MARGINAL_FACTOR < q < threshold * MARGINAL_FACTOR


def _unit_orthogonal(axis: np.ndarray) -> np.ndarray:
    # seed with the basis vector least aligned with axis
    seed = np.eye(3)[int(np.argmin(np.abs(axis)))]
    v = seed - (seed @ axis) * axis
    return v / np.linalg.norm(v)


def _analyze(nu: CoadjointPoint, tol: ToleranceConfig) -> _Analysis:
    p = nu.p
    m_norm = nu.m.norm()
    p_scale = scale(p)
    ct = causal_type(p, tol)
    p_norm = float(np.linalg.norm(p))
    marginal = _near(p_norm, tol.classify * p_scale)
    if ct.tag is not CausalTag.ZERO:
        marginal |= _near(abs(gamma(p, p)), tol.classify * p_scale**2)

    if ct.tag is CausalTag.ZERO:
        return _Analysis(OrbitClass(OrbitTag.OUT_OF_CATALOG, reason=Reason.ZERO_MOMENTUM, marginal=marginal))
    if ct.tag is CausalTag.SPACELIKE:
        return _Analysis(
            OrbitClass(OrbitTag.OUT_OF_CATALOG, reason=Reason.SPACELIKE_MOMENTUM, marginal=marginal)
        )

    spin_threshold = tol.classify * (1.0 + m_norm)

    if ct.tag is CausalTag.TIMELIKE:
        t, moved = rest_translation(nu, tol)
        frame = timelike_frame(p, tol).matrix()
        m_rest = lorentz_inverse(frame) @ moved.m.matrix() @ frame
        l_rest = LorentzAlgebraElement._project(m_rest).l
        beta = float(np.linalg.norm(l_rest))
        marginal |= _near(beta, spin_threshold)
        rotation = np.eye(4)
        if beta > spin_threshold:
            axis = l_rest / beta
            p1 = _unit_orthogonal(axis)
            rotation[:3, :3] = np.column_stack([p1, np.cross(axis, p1), axis])
            cls = OrbitClass(OrbitTag.MASSIVE_SPINNING, mu=ct.mu, beta=beta, marginal=marginal)
        else:
            cls = OrbitClass(OrbitTag.MASSIVE_SPINLESS, mu=ct.mu, marginal=marginal)
        return _Analysis(cls, t, frame @ rotation, l_rest)

    t, red = reduce_lightlike(nu, tol)
    x_threshold = spin_threshold * p_scale
    x_norm = float(np.linalg.norm(red.x))
    marginal |= _near(x_norm, x_threshold) | _near(red.beta, spin_threshold)
    if x_norm > x_threshold:
        # gamma(W, W) = -|x|^2 here, so x != 0 can never be removed by the group
        return _Analysis(OrbitClass(OrbitTag.OUT_OF_CATALOG, reason=Reason.CONTINUOUS_SPIN, marginal=marginal))
    if red.beta <= spin_threshold:
        return _Analysis(OrbitClass(OrbitTag.OUT_OF_CATALOG, reason=Reason.MASSLESS_SPINLESS, marginal=marginal))
    f = red.frame
    r = 1.0 / math.sqrt(2.0)
    basis = np.column_stack(
        [
            r * (f.f4 - f.f1),
            f.f2,
            math.copysign(1.0, red.rotation_rate) * f.f3,
            r * (f.f1 + f.f4),
        ]
    )
    cls = OrbitClass(OrbitTag.MASSLESS_HELICITY, beta=red.beta, marginal=marginal)
    return _Analysis(cls, t, basis)


def classify(nu: CoadjointPoint, tol: ToleranceConfig = DEFAULT_TOL) -> OrbitClass:
    return _analyze(nu, tol).cls


def verify_residual(nu: CoadjointPoint, witness: PoincareElement, target: CoadjointPoint) -> float:
    """|witness . nu - target| / scale(nu)."""
    return point_distance(coadjoint_act(witness, nu), target) / nu.scale()


def normal_form(nu: CoadjointPoint, tol: ToleranceConfig = DEFAULT_TOL) -> NormalFormResult:
    """Classify ``nu`` and produce (S, C) mapping it onto its orbit's representative.

    Raises OutOfCatalogError for points outside the three catalogued orbit
    types, and PoincareError if the assembled witness fails verification.
    """
    analysis = _analyze(nu, tol)
    cls = analysis.cls
    if not cls.in_catalog:
        raise OutOfCatalogError(cls)
    basis = analysis.basis
    # a momentum that is only approximately null leaves the null frame
    # slightly non-orthonormal; accept exactly that much Lorentz defect
    defect = float(np.max(np.abs(basis.T @ G @ basis - G))) / scale(basis) ** 2
    s = LorentzMatrix(lorentz_inverse(basis), tol=max(tol.structural, 10.0 * defect))
    witness = group_multiply(PoincareElement(s, np.zeros(4)), analysis.translation)
    rep = representative(cls)
    residual = verify_residual(nu, witness, rep)
    if residual > WITNESS_SLACK * tol.classify:
        raise PoincareError(f"witness verification failed (residual {residual:.3e})")
    return NormalFormResult(cls, component_labels(nu, cls), rep, witness, residual)


def _sign(v: float) -> int:
    return 1 if v >= 0 else -1


def component_labels(nu: CoadjointPoint, cls: OrbitClass) -> ComponentLabel:
    if not cls.in_catalog:
        raise OutOfCatalogError(cls)
    energy = _sign(nu.energy)
    if cls.tag is OrbitTag.MASSLESS_HELICITY:
        return ComponentLabel(energy, helicity_sign=_sign(polarization(nu)[3]))
    if cls.tag is OrbitTag.MASSIVE_SPINNING:
        return ComponentLabel(energy, spin_sign=energy)
    return ComponentLabel(energy)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def cvk_label(cls: OrbitClass) -> str:
    """Orbit notation of the full coadjoint-orbit classification."""
    if cls.tag is OrbitTag.MASSIVE_SPINNING:
        return f"∇₃⁺(0),{_fmt(cls.mu)} + Δ₀⁻(i·{_fmt(cls.beta)}, IP) + Δ₀⁻(0)"
    if cls.tag is OrbitTag.MASSIVE_SPINLESS:
        return f"∇₃⁺(0),{_fmt(cls.mu)} + Δ₀⁻(0) + Δ₀⁻(0) + Δ₀⁻(0)"
    if cls.tag is OrbitTag.MASSLESS_HELICITY:
        return f"∇₄(0,0) + Δ₀⁻(i·{_fmt(cls.beta)}, IP)"
    raise OutOfCatalogError(cls)
