"""Exact arithmetic for three points jumping over each other on the
integer lattice, where every jump is a quarter-turn of one point about
another.

The library models each triangle by an integer quadruple, applies jumps
as integer matrices, enumerates every reachable (doubled) area below a
bound, and audits the unreachable values against quadratic-residue
obstructions.
"""

from .algebra import (
    AXES,
    Generator,
    NormalForm,
    apply_generator,
    apply_omega,
    apply_word,
    bar,
    count_normal_forms,
    format_word,
    free_check,
    gen_matrix,
    jump,
    normal_form_matrix,
    normalize,
    omega_matrix,
    omega_mul,
    parse_word,
    verify_relations,
    word_matrix,
)
from .errors import (
    CheckpointFormatError,
    DegenerateInput,
    FactorizationBudgetExceeded,
    FleajumpError,
    InvalidModulus,
    MemoryBudgetExceeded,
    ModelInconsistency,
    NotATriangleState,
    ResidueBudgetExceeded,
    ScanBudgetExceeded,
    UndefinedValuation,
    UsageError,
    WordSyntaxError,
)
from .geometry import (
    JumpChoice,
    TraceStep,
    congruent,
    cross_validate,
    jump_points,
    simulate,
    trace_lines,
)
from .kernel import available_backends, default_backend, run_buckets
from .lattice import (
    Point,
    PointTriple,
    Quadruple,
    SideSquares,
    check_relations,
    gaussian_gcd,
    is_sum_of_two_squares,
    parity_profile,
    primitive_form,
    primitivity_index,
    quadruple_of,
    side_squares,
    sides_of,
    triple,
)
from .orbits import (
    Component,
    brute_orbit,
    canonical,
    components,
    is_reduced,
    reduce,
)
from .residues import (
    ComponentAudit,
    Obstruction,
    ValuationProfile,
    audit_orbit,
    conforms,
    is_qr,
    jacobi,
    obstruction_case,
    square_absence_check,
    v2,
    valuation_pairs,
    valuation_profile,
)
from .search import (
    FIXTURES,
    ReachSet,
    SearchReport,
    canonical_json,
    csv_rows,
    enumerate_component,
    load_checkpoint,
    payload_json,
    report_doc,
    save_checkpoint,
    scan,
    search,
)

__version__ = "0.1.0"
