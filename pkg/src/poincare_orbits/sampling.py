"""Seeded random group elements and orbit points, plus witness verification.

Each draw gets its own ``numpy.random.Generator`` built from the config
seed (and a spawn index for batches), so results depend only on the
config and never on call order or threading.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .algebra import (
    CoadjointPoint,
    Involution,
    LorentzAlgebraElement,
    PoincareElement,
    coadjoint_act,
    group_multiply,
    involution,
    point_distance,
)
from .classifier import ComponentLabel, NormalFormResult, OrbitClass, OrbitTag, representative
from .errors import OutOfCatalogError, PoincareError

TAYLOR_TERMS = 20


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    The matrix is scaled by 2^-k until its 1-norm is below 0.5, the series
    is summed to TAYLOR_TERMS terms, and the result squared k times.
    """
    a = np.asarray(a, dtype=np.float64)
    norm = np.linalg.norm(a, 1)
    k = 0
    if norm >= 0.5:
        k = int(np.ceil(np.log2(norm / 0.5))) + 1
    b = a / (2.0**k)
    term = np.eye(a.shape[0])
    out = term.copy()
    for n in range(1, TAYLOR_TERMS + 1):
        term = term @ b / n
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    max_rapidity: float = 2.0
    max_translation: float = 10.0
    include_involutions: bool = False

    def __post_init__(self):
        if self.max_rapidity < 0 or self.max_translation < 0:
            raise PoincareError("sampler bounds must be non-negative")

    def spawn(self, index: int) -> "SamplerConfig":
        """Config for the ``index``-th independent draw of a batch."""
        child = np.random.SeedSequence(self.seed, spawn_key=(index,))
        return replace(self, seed=int(child.generate_state(1, dtype=np.uint64)[0]))


def _ball(rng: np.random.Generator, dim: int, radius: float) -> np.ndarray:
    if radius == 0:
        return np.zeros(dim)
    direction = rng.normal(size=dim)
    direction /= np.linalg.norm(direction)
    return direction * radius * rng.uniform() ** (1.0 / dim)


def random_group_element(cfg: SamplerConfig) -> PoincareElement:
    """(exp(M), C) with |l|, |g| <= max_rapidity and |C| <= max_translation.

    With ``include_involutions`` the result is additionally left-multiplied
    by one of e, I_s, I_t, I_s I_t chosen uniformly.
    """
    rng = np.random.default_rng(cfg.seed)
    m = LorentzAlgebraElement(_ball(rng, 3, cfg.max_rapidity), _ball(rng, 3, cfg.max_rapidity))
    element = PoincareElement(expm(m.matrix()), _ball(rng, 4, cfg.max_translation))
    if cfg.include_involutions:
        choice = int(rng.integers(4))
        if choice:
            kind = (Involution.SPACE, Involution.TIME, Involution.SPACETIME)[choice - 1]
            element = group_multiply(involution(kind), element)
    return element


def group_elements(cfg: SamplerConfig, count: int) -> list[PoincareElement]:
    return [random_group_element(cfg.spawn(i)) for i in range(count)]


def component_representative(cls: OrbitClass, labels: ComponentLabel) -> CoadjointPoint:
    """The representative moved into the component named by ``labels``."""
    rep = representative(cls)
    helicity = labels.helicity_sign if labels.helicity_sign is not None else 1
    if cls.tag is not OrbitTag.MASSLESS_HELICITY and labels.helicity_sign is not None:
        raise PoincareError("helicity applies to massless orbits only")
    if labels.energy_sign < 0:
        rep = coadjoint_act(involution(Involution.TIME), rep)
    if helicity < 0:
        rep = coadjoint_act(involution(Involution.SPACE), rep)
    return rep


def sample_orbit(
    cls: OrbitClass,
    labels: ComponentLabel,
    cfg: SamplerConfig,
    count: int,
) -> list[CoadjointPoint]:
    """``count`` points of the requested orbit component, moved by identity-component elements."""
    if not cls.in_catalog:
        raise OutOfCatalogError(cls)
    start = component_representative(cls, labels)
    cfg = replace(cfg, include_involutions=False)
    return [coadjoint_act(g, start) for g in group_elements(cfg, count)]


def verify_witness(nu: CoadjointPoint, result: NormalFormResult, scale: Optional[float] = None) -> float:
    """Relative distance between witness . nu and the claimed representative."""
    moved = coadjoint_act(result.witness, nu)
    return point_distance(moved, result.representative) / (scale or nu.scale())
