"""speccover: subset-pair decompositions and coverings of CNF clause sets.

A CNF function and a decomposition of its clause set into per-variable
subset pairs are two views of one object; a selector tuple covers the set
exactly when the same tuple satisfies the function.  On top of the two
conversions this package decides and searches coverings, applies
satisfiability-preserving rewrite steps, generates and replays rewrite
traces between functions, and certifies the advertised linear operation
bounds with an instrumented counter.
"""

from .core import (
    BoolTuple,
    CnfMatrix,
    CoveringWitness,
    Decomposition,
    Universe,
    data_length,
    validate_cnf,
    validate_decomposition,
)
from .convert import (
    cnf_to_decomposition,
    cnf_to_decomposition_counted,
    decomposition_to_cnf,
    decomposition_to_cnf_counted,
)
from .counting import OpCounter
from .covering import (
    ForcedReport,
    all_coverings,
    find_covering,
    forced_subsets,
    i_transform,
    is_covering,
    normalize_covering,
)
from .errors import (
    BadEntry,
    DimensionMismatch,
    EmptyClause,
    EmptyPair,
    GenerationDeadlock,
    InadmissibleChange,
    InadmissibleStep,
    NotACovering,
    NotSatisfiedBy,
    Overlap,
    ParseError,
    SpecCoverError,
    Tautology,
    TooLarge,
    UncoveredElement,
    UnusedVariable,
    ValidationError,
)
from .formats import (
    emit_decomposition,
    emit_dimacs,
    emit_trace,
    parse_decomposition,
    parse_dimacs,
    parse_trace,
    random_instance,
)
from .sat import common_satisfying, evaluate, max_enum_vars, satisfying_assignments
from .transform import (
    AddElem,
    ChangeOp,
    FlipPair,
    MoveElem,
    RemoveElem,
    Trace,
    apply_change,
    generate_trace,
    generate_trace_extended,
    replay,
    replay_steps,
    same_class,
)

__version__ = "0.1.0"
