"""Exact computation in the q-deformed euclidean algebra, its localized
partner, and their weight representations."""

from .scalars import (
    GaussianRational,
    IUNIT,
    ONE,
    QHALF,
    QVAR,
    RVAR,
    SVAR,
    ZERO,
    Scalar,
    gauss,
    integer,
    monomial,
    qhpow,
    qpow,
)
from .freealg import (
    FreeElement,
    Iso2Element,
    M2Element,
    casimir_element,
    casimir_symmetric_form,
    check_confluence,
    gen_iso2,
    gen_m2hat,
    iso2_cubic_relations,
    iso2_defining_relations,
    iso2_rules,
    iso2_rules_broken,
    m2_gen,
    m2hat_defining_relations,
    m2hat_rules,
    nf_iso2,
    nf_m2hat,
)
from .exprs import (
    format_element,
    format_scalar,
    normal_form,
    parse_element,
    scalar_from_text,
)
from .morphism import Morphism, build_psi, check_homomorphism_samples, verify_relations
from .repmod import (
    EXACT,
    Field,
    Window,
    apply_m2_to_weight,
    casimir_of,
    casimir_single_vector,
    check_relations_on_rep,
    decompose_degenerate,
    evaluate_on_rep,
    nonclassical_rep,
    one_dim_iso2,
    one_dim_m2hat,
    reconstruct_from_seed,
    weight_rep_iso2,
    weight_rep_m2hat,
)
from .analysis import (
    block_params_equivalent,
    canonical_block_params,
    canonical_weight_params,
    classical_commutator_defect,
    classify_weight_parameter,
    find_intertwiner,
    intertwiner_sigma,
    nonclassical_peak_entry,
    spectrum_collisions,
    spectrum_of_rotation,
    weight_params_equivalent,
)

__version__ = "0.1.0"
