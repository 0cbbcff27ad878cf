from .types import (
    Arrow,
    Base,
    FiniteType,
    NAT,
    REAL,
    SPACE,
    TypeSyntaxError,
    hat_type,
    is_admissible,
    is_small,
    parse_type,
    show_type,
)
from .formulas import (
    DeltaSentence,
    FormulaSyntaxError,
    FormulaTypeError,
    NotDelta,
    as_delta,
    classify,
    parse_formula,
    parse_term,
    show,
    skolem_matrix_matches,
    skolem_normal_form,
)
from .cauchy import cauchy_hat, check_rate
from .majorize import (
    UnsupportedType,
    cantor_pair,
    check_majorizes,
    check_preceq,
    majorant_M,
    real_code,
)
