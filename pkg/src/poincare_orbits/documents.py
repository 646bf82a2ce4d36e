"""JSON encodings of points, group elements and classification reports."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np

from .algebra import (
    CoadjointPoint,
    Involution,
    LorentzAlgebraElement,
    PoincareElement,
    casimirs,
    involution,
    polarization,
)
from .classifier import OrbitTag, _analyze, component_labels, cvk_label, normal_form
from .errors import PoincareError
from .minkowski import DEFAULT_TOL, ToleranceConfig


class DocumentError(PoincareError):
    """Input JSON is malformed or violates a constraint."""


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    """Load ``point`` or ``report`` from the packaged JSON schemas."""
    text = resources.files("poincare_orbits").joinpath(f"schemas/{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def _has_bool(value) -> bool:
    if isinstance(value, bool):
        return True
    if isinstance(value, (list, tuple)):
        return any(_has_bool(v) for v in value)
    return False


def _numbers(value, shape, what):
    if _has_bool(value) or isinstance(value, (str, dict)):
        raise DocumentError(f"{what} must be an array of numbers")
    try:
        arr = np.array(value, dtype=np.float64)
    except (TypeError, ValueError):
        raise DocumentError(f"{what} must be an array of numbers") from None
    if arr.shape != shape:
        raise DocumentError(f"{what} must have shape {list(shape)}, got {list(arr.shape)}")
    if not np.all(np.isfinite(arr)):
        raise DocumentError(f"{what} entries must be finite")
    return arr


def point_from_doc(doc, tol: ToleranceConfig = DEFAULT_TOL) -> CoadjointPoint:
    if not isinstance(doc, dict):
        raise DocumentError("point document must be a JSON object")
    unknown = set(doc) - {"M", "M_matrix", "P"}
    if unknown:
        raise DocumentError(f"unknown point fields: {sorted(unknown)}")
    if "P" not in doc:
        raise DocumentError("point document needs P")
    p = _numbers(doc["P"], (4,), "P")
    if ("M" in doc) == ("M_matrix" in doc):
        raise DocumentError("give exactly one of M and M_matrix")
    if "M" in doc:
        m = doc["M"]
        if not isinstance(m, dict) or set(m) != {"l", "g"}:
            raise DocumentError('M must be an object with exactly the keys "l" and "g"')
        alg = LorentzAlgebraElement(_numbers(m["l"], (3,), "M.l"), _numbers(m["g"], (3,), "M.g"))
    else:
        mat = _numbers(doc["M_matrix"], (4, 4), "M_matrix")
        try:
            alg = LorentzAlgebraElement.from_matrix(mat, tol.structural)
        except PoincareError as exc:
            raise DocumentError(str(exc)) from None
    return CoadjointPoint(alg, p)


def point_to_doc(nu: CoadjointPoint) -> dict:
    return {"M": {"l": nu.m.l.tolist(), "g": nu.m.g.tolist()}, "P": nu.p.tolist()}


def element_from_doc(doc) -> PoincareElement:
    """Parse {"S": 4x4, "C": [4]} or {"involution": "space" | "time" | "spacetime"}."""
    if not isinstance(doc, dict):
        raise DocumentError("group element must be a JSON object")
    if "involution" in doc:
        if set(doc) != {"involution"}:
            raise DocumentError("involution element takes no other fields")
        try:
            return involution(Involution(str(doc["involution"]).replace("-", "")))
        except ValueError:
            raise DocumentError(f"unknown involution {doc['involution']!r}") from None
    if set(doc) != {"S", "C"}:
        raise DocumentError('group element needs exactly "S" and "C" (or "involution")')
    s = _numbers(doc["S"], (4, 4), "S")
    c = _numbers(doc["C"], (4,), "C")
    try:
        return PoincareElement(s, c)
    except PoincareError as exc:
        raise DocumentError(str(exc)) from None


def element_to_doc(element: PoincareElement) -> dict:
    return {"S": element.s.s.tolist(), "C": element.c.tolist()}


def _sign(v: int) -> str:
    return "+" if v > 0 else "-"


def report(nu: CoadjointPoint, tol: ToleranceConfig = DEFAULT_TOL, full: bool = False) -> dict:
    """ReportDocument for ``nu``; ``full`` adds representative, witness and residual."""
    cls = _analyze(nu, tol).cls
    out: dict = {"class": cls.tag.value}
    if cls.mu is not None:
        out["mu"] = cls.mu
    if cls.beta is not None:
        out["beta"] = cls.beta
    labels: dict = {}
    if cls.in_catalog:
        lab = component_labels(nu, cls)
        labels["energy"] = _sign(lab.energy_sign)
        if lab.helicity_sign is not None:
            labels["helicity"] = _sign(lab.helicity_sign)
        if lab.spin_sign is not None:
            labels["spin"] = _sign(lab.spin_sign)
    out["labels"] = labels
    if cls.in_catalog:
        out["cvk_label"] = cvk_label(cls)
        if full:
            result = normal_form(nu, tol)
            out["representative"] = point_to_doc(result.representative)
            out["witness"] = element_to_doc(result.witness)
            out["residual"] = result.residual
    c1, c2 = casimirs(nu)
    out["casimirs"] = [c1, c2]
    out["marginal"] = cls.marginal
    if cls.tag is OrbitTag.OUT_OF_CATALOG:
        out["reason"] = cls.reason.value
    return out


def invariants_doc(nu: CoadjointPoint) -> dict:
    c1, c2 = casimirs(nu)
    return {"C1": c1, "C2": c2, "W": polarization(nu).tolist()}


def dumps(doc, pretty: bool = False) -> str:
    try:
        return json.dumps(doc, indent=2 if pretty else None, ensure_ascii=False, allow_nan=False)
    except ValueError:
        raise DocumentError("non-finite number in output") from None
