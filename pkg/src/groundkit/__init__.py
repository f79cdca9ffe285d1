"""groundkit: proof-theoretic grounds, ludics designs, and focusing.

Typed ground-term calculus with equational reduction; designs, cut-net
interaction, orthogonality, behaviours, incarnation; a translation of
linear implicational terms to designs; focused proof search with
strategy extraction; s-expression text formats and a CLI.
"""

from .formulas import (
    Absurd, Atom, AtomicBase, AtomicDerivation, AtomicRule, Conj, Disj,
    Exists, Forall, Formula, IConst, ITerm, IVar, Impl,
    check_atomic_derivation, is_closed, match_atom, neg, subst_ivar,
    validate_base, validate_rule,
)
from .terms import (
    Canonical, Const, ConjE, ConjI, DS, DisjE, DisjI, Equation, ExistsE,
    ExistsI, Exploder, ForallE, ForallI, FuelExhausted, GroundEnv, GroundTerm,
    GroundType, GroundTypeError, GroundVerdict, ImplE, ImplI, Loop, MetaVar,
    ReductionOutcome, Stuck, UserOp, UserOpDecl, Var, close_instance,
    denotes_ground, is_linear, normalize, reduce_step, reduce_step_at, subst,
    typecheck,
)
from .designs import (
    Address, DaimonLeaf, Design, FidLeaf, NegNode, Pitchfork, PosNode,
    Ramification, atomic_bomb, build_fax, contains_daimon, daimon, delocate,
    design_depth, fid, format_address, merge_subdesigns, negative,
    negative_sponge, parse_address, positive, skunk, subdesign_order,
    validate_design, validate_pitchfork,
)
from .interaction import (
    Converged, CutNet, CutNetError, DEFAULT_FUEL, Diverged,
    InteractionResult, TraceRecord, join_used_parts, make_cutnet,
    normalize_closed, orthogonal, render_design, render_snapshots, used_part,
)
from .behaviours import (
    Behaviour, CandidateVerdict, NotAMember, SizeLimitExceeded,
    UniverseBounds, behaviour, biorthogonal, classify_candidate,
    count_universe, dual_base, enumerate_universe, full_pool, incarnation_of,
    is_material, member_verdict, members, orthogonal_set,
)
from .translate import (
    ArrowBehaviour, TranslationEnv, TranslationError, arrow,
    arrow_incarnation_of, arrow_member_verdict, check_translation,
    classify_arrow_candidate, free_incarnation, normalize_open,
    pair_orthogonal, translate,
)
from .focusing import (
    Bottom, ClusteredDerivation, NegAtom, One, Par, Plus, PolarizedFormula,
    PosAtom, Strategy, StrategyConversionError, Tensor, Top, With, Zero,
    derivation_to_strategy, dual, focused_search, polarity, pretty,
    strategy_to_derivation, validate_derivation, validate_game,
    validate_strategy,
)

__version__ = "0.1.0"
