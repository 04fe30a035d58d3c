"""maslov-kit: Maslov, Souriau, Arnold and inertia indices on Shilov
boundaries of tube-type Hermitian symmetric domains, computed through
Euclidean Jordan algebras."""

__version__ = "0.1.0"

# the algebra factory itself stays at maslov_kit.algebra.algebra; re-exporting
# it here would shadow the submodule attribute
from .algebra import (
    HERM_C,
    SPIN,
    SYM_R,
    AlgebraDescriptor,
    element,
    epq,
    random_element,
    random_frame,
    standard_frame,
    unit,
)
from .boundary import (
    ElementC,
    GroupWord,
    InversionGen,
    LiftedPoint,
    LinearGen,
    ShilovPoint,
    TranslateGen,
    UnitaryGen,
    act_lift,
    apply_word,
    cayley_c,
    cayley_p,
    cdet,
    cocycle_j,
    compose_words,
    complexify,
    determination_phi,
    from_unit_spectrum,
    identity_word,
    lift,
    random_shilov,
    random_word,
    shilov_spectral,
    t_shift,
    unit_shilov,
    word_chi,
    wrap_angle,
)
from .config import DEFAULT, PERMISSIVE, STRICT, Tolerances
from .dynamics import (
    AngleFlow,
    BoundaryPath,
    CrossingRecord,
    arnold_number,
    constant_path,
    crossing_records,
    eigenangle_flow,
    pair_path_index,
    quasimorphism_c,
    rotation_rho,
    standard_base_lift,
    translation_tau,
    write_strand_csv,
)
from .errors import AmbiguityError, DomainError, IntegralityError, MaslovKitError
from .indices import (
    IndexReport,
    alm_n,
    arnold_nu,
    inertia_j,
    iota_shared_frame,
    m_shared_frame,
    maslov_iota,
    mu,
    mu_via_corank,
    ord_triple,
    psi,
    psi_hat,
    relative_element,
    souriau_m,
    souriau_m_witness,
    transversal,
)

__all__ = [
    "__version__",
    # algebra
    "SYM_R", "HERM_C", "SPIN", "AlgebraDescriptor", "element",
    "epq", "random_element", "random_frame", "standard_frame", "unit",
    # boundary
    "ElementC", "ShilovPoint", "LiftedPoint", "GroupWord", "TranslateGen",
    "InversionGen", "LinearGen", "UnitaryGen", "act_lift", "apply_word",
    "cayley_c", "cayley_p", "cdet", "cocycle_j", "compose_words",
    "complexify", "determination_phi", "from_unit_spectrum", "identity_word",
    "lift", "random_shilov", "random_word", "shilov_spectral", "t_shift",
    "unit_shilov", "word_chi", "wrap_angle",
    # configuration and errors
    "DEFAULT", "PERMISSIVE", "STRICT", "Tolerances", "MaslovKitError",
    "DomainError", "AmbiguityError", "IntegralityError",
    # indices
    "IndexReport", "alm_n", "arnold_nu", "inertia_j", "iota_shared_frame",
    "m_shared_frame", "maslov_iota", "mu", "mu_via_corank", "ord_triple",
    "psi", "psi_hat", "relative_element", "souriau_m", "souriau_m_witness",
    "transversal",
    # dynamics
    "AngleFlow", "BoundaryPath", "CrossingRecord", "arnold_number",
    "constant_path", "crossing_records", "eigenangle_flow",
    "pair_path_index", "quasimorphism_c", "rotation_rho",
    "standard_base_lift", "translation_tau", "write_strand_csv",
]
