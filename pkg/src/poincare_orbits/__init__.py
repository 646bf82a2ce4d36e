"""Coadjoint orbits of the full Poincare group: invariants, normal forms, labels."""
from .algebra import (
    CoadjointPoint,
    Involution,
    LorentzAlgebraElement,
    LorentzMatrix,
    PoincareElement,
    casimirs,
    coadjoint_act,
    group_inverse,
    group_multiply,
    hat,
    involution,
    l_operator,
    pair,
    polarization,
)
from .classifier import (
    ComponentLabel,
    NormalFormResult,
    OrbitClass,
    OrbitTag,
    Reason,
    classify,
    component_labels,
    cvk_label,
    normal_form,
    reduce_lightlike,
    representative,
    rest_translation,
)
from .errors import (
    ConstraintError,
    NotLightlike,
    NotTimelike,
    OutOfCatalogError,
    PoincareError,
)
from .minkowski import (
    DEFAULT_TOL,
    CausalTag,
    CausalType,
    ToleranceConfig,
    causal_type,
    gamma,
    lightlike_frame,
    timelike_frame,
)
from .sampling import SamplerConfig, random_group_element, sample_orbit, verify_witness

__version__ = "0.1.0"
