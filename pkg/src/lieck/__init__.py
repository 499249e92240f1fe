"""Exact verification toolkit for compact Clifford-Klein forms.

Everything is computed over the rationals: root systems and Weyl dimensions
(:mod:`.roots`), a catalog of simple real forms with their non-compact
dimensions and real ranks (:mod:`.catalog`), regular subalgebras by diagram
deletion (:mod:`.regular`), additivity and elimination checks on candidate
triples (:mod:`.criteria`), the cataloged case inequalities
(:mod:`.inequalities`), and closed dimension tables (:mod:`.tables`).
The ``lieck`` command line (:mod:`.cli`) wraps the verification suites.
"""

from .catalog import (
    Catalog,
    CatalogError,
    ConstraintViolation,
    RealForm,
    ReductiveForm,
    d_of,
    data_path,
    load_catalog,
    real_rank,
)
from .criteria import (
    check_triple,
    g2_elimination,
    obstruction_search,
    substitution_check,
    verify_table1,
)
from .exprs import ConstraintSet, EvalError, Expr, ParseError, evaluate, parse, poly_equal
from .inequalities import (
    CaseRecord,
    check_claimed_bound,
    cross_check_ambient,
    load_cases,
    verify_all_cases,
    verify_case,
)
from .regular import (
    SubalgebraRecord,
    borel_de_siebenthal_step,
    maximal_rank_table_check,
    normalize_type,
    rank_bound_check,
    regular_closure,
)
from .roots import (
    CartanType,
    InternalError,
    RootSystem,
    build_root_system,
    cartan_matrix,
    extended_diagram,
    fundamental_dim_check,
    highest_root,
    two_hyperplane_cover_check,
    weyl_dim,
)
from .tables import (
    closed_fundamental_dim,
    derive_rank_pairs,
    fundamental_table_check,
    load_dim_rows,
    table_consistency_report,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "CatalogError",
    "CartanType",
    "CaseRecord",
    "ConstraintSet",
    "ConstraintViolation",
    "EvalError",
    "Expr",
    "InternalError",
    "ParseError",
    "RealForm",
    "ReductiveForm",
    "RootSystem",
    "SubalgebraRecord",
    "borel_de_siebenthal_step",
    "build_root_system",
    "cartan_matrix",
    "check_claimed_bound",
    "check_triple",
    "closed_fundamental_dim",
    "cross_check_ambient",
    "d_of",
    "data_path",
    "derive_rank_pairs",
    "evaluate",
    "extended_diagram",
    "fundamental_dim_check",
    "fundamental_table_check",
    "g2_elimination",
    "highest_root",
    "load_cases",
    "load_catalog",
    "load_dim_rows",
    "maximal_rank_table_check",
    "normalize_type",
    "obstruction_search",
    "parse",
    "poly_equal",
    "rank_bound_check",
    "real_rank",
    "regular_closure",
    "substitution_check",
    "table_consistency_report",
    "two_hyperplane_cover_check",
    "verify_all_cases",
    "verify_case",
    "verify_table1",
    "weyl_dim",
]
