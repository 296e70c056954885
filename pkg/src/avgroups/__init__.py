"""Bracketed-word calculus: free averaging groups and their checkers."""

from .words import (
    Br,
    Gen,
    ONE,
    UnassignedGenerator,
    Word,
    WordSyntaxError,
    bracket_literal,
    eval_operated,
    invert,
    is_reduced,
    make_br,
    make_gen,
    metrics,
    op_degree,
    parse,
    reduce_concat,
    render,
    single,
)
from .normalform import (
    OracleStepLimit,
    RewriteStep,
    STRATEGIES,
    is_normal,
    oracle_normalize,
    oracle_steps,
    replay_trace,
)
from .avgroup import (
    GenParams,
    diamond,
    extend_hom,
    free_target,
    inverse,
    op_apply,
    op_iter,
    random_normal_word,
    random_raw_word,
)
from .structures import (
    AveragingGroupHandle,
    CheckReport,
    FiniteGroupTable,
    IntShiftGroup,
    TableError,
    check_disemigroup,
    check_pointed_consequences,
    check_rack,
    compose_operators,
    cyclic_group,
    disemigroup_ops,
    idempotent_endo_operator,
    klein_four_group,
    load_group_file,
    rack_op,
    search_averaging_ops,
    shift_operator,
    sym3,
    sym3_sign_retraction,
    validate_averaging,
    validate_group,
)
from .linearalg import (
    LieAlgebraSpec,
    check_antipode_averaging,
    check_averaging_algebra,
    check_averaging_lie,
    check_coalgebra_map,
    check_hopf_equivalence,
    check_leibniz,
    coproduct,
    counit,
    ga_add,
    ga_basis,
    ga_mul,
    ga_scale,
    leibniz_bracket,
    linear_extend,
    load_lie_file,
    load_operator_file,
    mat_apply,
    validate_lie,
)

__version__ = "0.1.0"
