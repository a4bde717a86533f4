"""Information cohomology with combinatorial and probabilistic coefficients."""

from .checks import FAIL, PASS, Verdict, coboundary_is_trivial, cocycle_check, single_support_check
from .classify import Classification, classify_cocycle, coboundary_sequence, extract_sequence
from .cochains import (
    AddCoboundary,
    Coboundary,
    CombCochain,
    ConstCochain,
    EntropyCochain,
    ExpCochain,
    FWCochain,
    MagnitudeCochain,
    MagnitudeTable,
    One,
    PerVariableCochain,
    PowerCochain,
    ProbCochain,
    ProbTable,
    TableCochain,
    coboundary_add,
    coboundary_mult,
    cochain_from_json,
    componentwise,
    counting_functions,
    generators,
    inverse_factorial,
    law_grid,
    perturb,
    random_table,
)
from .feith import (
    admissible_grid,
    binomial_tables,
    comb_feith_solve,
    feith_residual_continuous,
    s_alpha,
    tables_from_json,
    tables_to_json,
)
from .nondegenerate import (
    NondegWitness,
    nondegenerate_witness,
    nondegenerate_witness_raw,
    search_witness,
)
