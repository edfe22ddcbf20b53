"""Tableau-based reasoning for the description logic ALC.

Satisfiability of concepts, consistency of ABoxes and subsumption between
concepts, decided by a semantic-tableau procedure over list ABoxes, with a
bounded brute-force model search as an independent oracle and an
instrumented multiset termination measure.
"""

from .engine import (
    EngineConfig,
    MeasureDecreaseError,
    MeasureViolation,
    ProgressCheckError,
    Satisfiable,
    StepLimitExceeded,
    Unsatisfiable,
    Verdict,
    canonical_interpretation,
    check_run_soundness,
    contains_clash,
    decide_concept_sat,
    decide_sat_abox,
    expand_once,
    next_application,
    replay_trace,
    saturated,
    subsumes,
)
from .measure import (
    assert_decrease,
    measure_abox,
    measure_fact,
    multiset_less,
    progress_check,
    reducible_hidden_ex_count,
)
from .parser import ParseError, SourceSpan, parse_abox, parse_concept, print_concept, print_fact
from .render import emit_model, emit_trace
from .rules import (
    RuleApplication,
    RuleKind,
    TableauRule,
    abstract,
    abstract_rule_holds,
    alc_rules,
    apply_srule,
)
from .semantics import (
    Interpretation,
    OracleCeilingError,
    OracleConfig,
    SignatureError,
    interp_concept,
    interp_role,
    is_model,
    oracle_find_model,
    satisfies_abox,
    satisfies_fact,
)
from .syntax import (
    Abox,
    All,
    And,
    Anon,
    Atom,
    BOTTOM,
    Bottom,
    Concept,
    Fact,
    Individual,
    Inst,
    Named,
    Not,
    Or,
    Rel,
    Role,
    Some,
    TOP,
    Top,
    fresh_individual,
    individuals_of,
    is_nnf,
    make_abox,
    nnf,
    size_concept,
)

__version__ = "0.1.0"
