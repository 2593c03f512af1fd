"""depth2-kit: finite depth-two closure algebras, frames, and checks."""

from .boolean import FiniteBA, SubsetClass, powerset_algebra, subset_class
from .duality import algebras_isomorphic, canonical_frame, complex_algebra
from .errors import (
    BindingError,
    BudgetError,
    Depth2Error,
    DomainError,
    FormulaSyntaxError,
    NoClosureError,
    PreconditionError,
    SizeError,
    TrivialityError,
)
from .formulas import (
    And,
    Bottom,
    Box,
    Diamond,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Rule,
    Top,
    Var,
    axiom,
    meet_axiom,
    parse_formula,
    print_formula,
    rule_p2,
    variables,
)
from .frames import (
    ClusterPoset,
    Frame,
    canonical_form,
    classify_extremal,
    cluster_poset,
    converse_frame,
    enumerate_frames,
    frame_condition,
    frame_from_dict,
    make_extremal,
    make_frame,
)
from .operators import (
    AlgebraClass,
    ClassLabel,
    DualOperator,
    IrreducibilityKind,
    IrreducibilityVerdict,
    ModalAlgebra,
    ModalOperator,
    OperatorProperties,
    Subalgebra,
    algebra_from_dict,
    build_kn,
    classify_algebra,
    closed_open_elements,
    conjugate_check,
    dual_operator,
    embeds,
    extremal_operator,
    identity_operator,
    irreducibility,
    operator_from_atom_values,
    operator_from_sublattice,
    operator_properties,
    product,
    quotient,
    satisfies_depth2_axiom,
    subalgebras,
    unary_discriminator,
)
from .semantics import (
    algebra_validates,
    eval_in_algebra,
    eval_in_model,
    frame_validates,
    premises_active,
    quasiidentity_holds,
)
from .verify import SUITE_NAMES, SUITES, VerificationReport, run_all, run_suite

__version__ = "0.1.0"
