"""Mapping linear implicational ground terms to designs.

Arrow behaviours live on two-address bases (α ⊢ β), so their counter-
tests are pairs (one design cutting α, one cutting β) and interaction
runs on three-design closed nets.  Applications need the result of a
cut-net whose base is ⊢β; a restricted open normalizer handles exactly
that shape by emitting the uncut actions as output nodes.

Classification protocol for arrows over a domain with empty †-free
material part (such as the behaviour 0, whose only member contains †):
the defining condition of A → B quantifies over the †-free material
members of A, so it is vacuous and the defining set is the full bounded
universe on α ⊢ β.  Its orthogonal is then empty (the universe contains
the sterile Fid), every candidate is a member, and the incarnation of
any candidate is its root pruning.  Consequently the copycat design is a
member of 0 → 0 but classifies PseudoGround(not-material) there, even
though its cut against the Daimon of 0 yields a Daimon based on the
codomain address — a material member of 0.  Both facts are exercised by
the test suite; we implement the literal definition rather than widen
the quantifier to all material members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .designs import (
    Address, DaimonLeaf, Design, FidLeaf, NegNode, Pitchfork, PosNode,
    build_fax, child, daimon, delocate, fid, negative, positive, star,
)
from .behaviours import (
    Behaviour, UniverseBounds, contains_daimon, enumerate_universe,
    incarnation_of, is_material, member_verdict, members, CandidateVerdict,
    classify_candidate, dual_base,
)
from .interaction import (
    DEFAULT_FUEL, Converged, CutNet, Diverged, join_used_parts, make_cutnet,
    normalize_closed, used_part,
)
from .formulas import Absurd, Atom, Formula, Impl
from .terms import GroundEnv, GroundTerm, ImplE, ImplI, Const, Var, \
    is_linear, typecheck


class TranslationError(Exception):
    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


# ---------------------------------------------------------------------------
# restricted open normalization


class _Fuel:
    def __init__(self, n):
        self.n = n

    def tick(self):
        self.n -= 1
        if self.n < 0:
            raise _FuelOut()


class _FuelOut(Exception):
    pass


class _Diverged(Exception):
    pass


def normalize_open(net: CutNet, fuel: int = DEFAULT_FUEL) -> Design | None:
    """Normalize a cut-net whose base is positive (⊢ Γ, no negative address).

    Returns the normal-form design on the net's base, or None when the
    main thread diverges.  Divergent side branches become Fid leaves, as
    in the normal form of an open interaction.
    """
    if net.base.neg is not None:
        raise TranslationError("unsupported-base",
                               "open normalization handles positive bases only")
    env0 = {d.base.neg: d for d in net.designs if d.base.neg is not None}
    gas = _Fuel(fuel)

    def nf_pos(current: Design, env: dict) -> Design:
        while True:
            gas.tick()
            match current.node:
                case DaimonLeaf():
                    return daimon()      # rebased by the caller
                case FidLeaf():
                    raise _Diverged()
                case PosNode(focus, ram, kids):
                    counter = env.get(focus)
                    if counter is None:      # uncut: part of the output
                        return positive(
                            focus,
                            {i: nf_neg(c, env) for i, c in zip(ram, kids)})
                    env = dict(env)
                    del env[focus]
                    branch = counter.node.branch_map().get(ram)
                    if branch is None:
                        raise _Diverged()
                    for i, c in zip(ram, kids):
                        env[child(focus, i)] = c
                    current = branch
                case _:
                    raise TranslationError("unsupported-base",
                                           "negative node on the main thread")

    def nf_neg(d: Design, env: dict) -> Design:
        assert isinstance(d.node, NegNode)
        focus = d.node.focus
        branches = {}
        for key, b in d.node.branches:
            try:
                r = nf_pos(b, dict(env))
                # widen the branch base to cover the opened sub-addresses
                branches[key] = Design(
                    Pitchfork(None, r.base.pos | star(focus, key)), r.node)
            except _Diverged:
                branches[key] = fid(*star(focus, key))
        return negative(focus, branches)

    try:
        r = nf_pos(net.principal, env0)
    except _Diverged:
        return None
    return Design(Pitchfork(None, r.base.pos | net.base.pos), r.node)


# ---------------------------------------------------------------------------
# arrow behaviours


@dataclass(frozen=True)
class ArrowBehaviour:
    domain: Behaviour                    # base ⊢α
    codomain: Behaviour                  # base ⊢β
    bounds: UniverseBounds               # scoped to the base α⊢β
    generators: frozenset[Design]        # the defining set, before closure
    cached_orthogonal: frozenset[tuple[Design, Design]]  # (at ⊢α, at β⊢) pairs

    @property
    def base(self) -> Pitchfork:
        return self.bounds.base


def free_incarnation(b: Behaviour, fuel: int = DEFAULT_FUEL) -> frozenset[Design]:
    """The †-free material members of a behaviour, within its bounds."""
    return frozenset(d for d in members(b, fuel)
                     if not contains_daimon(d) and is_material(d, b, fuel))


def _alpha(b: Behaviour) -> Address:
    return next(iter(b.base.pos))


def arrow(bA: Behaviour, bB: Behaviour, bounds: UniverseBounds,
          fuel: int = DEFAULT_FUEL) -> ArrowBehaviour:
    """A → B: designs sending every †-free incarnated A-member into the
    †-free incarnation of B, closed under bi-orthogonality within bounds.

    Counter-tests are pairs (a, b) with a on ⊢α and b on β⊢; a design d
    on α⊢β is orthogonal to the pair when the closed net {a, d, b}
    converges.
    """
    alpha, beta = _alpha(bA), _alpha(bB)
    arrow_base = Pitchfork(alpha, frozenset({beta}))
    bounds = bounds.at(arrow_base)

    dom_free = free_incarnation(bA, fuel)
    cod_free = free_incarnation(bB, fuel)
    universe = enumerate_universe(bounds)

    def maps_domain(d: Design) -> bool:
        for a in dom_free:
            res = normalize_open(make_cutnet((a, d)), fuel)
            if res is None or res not in cod_free:
                return False
        return True

    defining = frozenset(d for d in universe if maps_domain(d))

    a_universe = enumerate_universe(bounds.at(Pitchfork(None,
                                                        frozenset({alpha}))))
    b_universe = enumerate_universe(bounds.at(Pitchfork(beta, frozenset())))
    pairs = []
    for a, bb in itertools.product(a_universe, b_universe):
        if all(pair_orthogonal(a, d, bb, fuel) == "yes" for d in defining):
            pairs.append((a, bb))
    return ArrowBehaviour(bA, bB, bounds, defining, frozenset(pairs))


def pair_orthogonal(a: Design, d: Design, b: Design,
                    fuel: int = DEFAULT_FUEL) -> str:
    out = normalize_closed(make_cutnet((a, d, b)), fuel)
    match out:
        case Converged():
            return "yes"
        case Diverged():
            return "no"
        case _:
            return "unknown"


def arrow_member_verdict(d: Design, ab: ArrowBehaviour,
                         fuel: int = DEFAULT_FUEL) -> str:
    verdicts = [pair_orthogonal(a, d, b, fuel)
                for a, b in ab.cached_orthogonal]
    if any(v == "no" for v in verdicts):
        return "no"
    if any(v == "unknown" for v in verdicts):
        return "unknown"
    return "yes"


def arrow_incarnation_of(d: Design, ab: ArrowBehaviour,
                         fuel: int = DEFAULT_FUEL) -> Design:
    traces = []
    for a, b in ab.cached_orthogonal:
        out = normalize_closed(make_cutnet((a, d, b)), fuel)
        assert isinstance(out, Converged)
        traces.append(out.trace)
    return join_used_parts(d, traces)


def classify_arrow_candidate(d: Design, ab: ArrowBehaviour,
                             fuel: int = DEFAULT_FUEL) -> CandidateVerdict:
    if d.base != ab.base:
        return CandidateVerdict("NotInBehaviour", "base mismatch")
    verdict = arrow_member_verdict(d, ab, fuel)
    if verdict == "unknown":
        return CandidateVerdict("Unknown", "fuel")
    if verdict == "no":
        return CandidateVerdict("NotInBehaviour")
    if contains_daimon(d):
        return CandidateVerdict("PseudoGround", "contains-daimon")
    if d != arrow_incarnation_of(d, ab, fuel):
        return CandidateVerdict("PseudoGround", "not-material")
    return CandidateVerdict("Ground")


# ---------------------------------------------------------------------------
# translation environment


@dataclass
class TranslationEnv:
    """Interpretation of atomic types plus a fresh-address allocator."""

    atoms: dict[Formula, Behaviour]
    bounds: UniverseBounds
    fax_arity: int = 1
    fuel: int = DEFAULT_FUEL
    _next_root: int = field(default=0)

    def fresh_root(self) -> Address:
        r = (self._next_root,)
        self._next_root += 1
        return r

    def behaviour_at(self, f: Formula, xi: Address) -> Behaviour:
        b = self.atoms.get(f)
        if b is None:
            raise TranslationError("unsupported-constructor",
                                   f"no behaviour registered for {f}")
        gens = frozenset(delocate(g, _alpha(b), xi) for g in b.generators)
        from .behaviours import behaviour as mk
        return mk(gens, self.bounds.at(Pitchfork(None, frozenset({xi}))),
                  self.fuel)

    def fax_depth(self) -> int:
        return self.bounds.max_depth


# ---------------------------------------------------------------------------
# translate


def translate(t: GroundTerm, env: TranslationEnv,
              root: Address | None = None) -> Design:
    """Map a closed linear implicational term to a design.

    Supported shapes: →Iξ(ξ) (copycat), closed applications →E(t, u),
    and constants interpreted by the first †-free incarnated member of
    their atomic behaviour.
    """
    ty = typecheck(t, GroundEnv())
    if ty.antecedents:
        raise TranslationError("unsupported-constructor",
                               "only closed terms are translated")
    if not is_linear(t):
        raise TranslationError("nonlinear-term",
                               "every implication binder must bind exactly "
                               "one occurrence")
    _check_fragment(ty.succedent)
    root = env.fresh_root() if root is None else root

    match t:
        case ImplI(x, Var() as v) if v == x:
            alpha, beta = child(root, 0), child(root, 1)
            return build_fax(alpha, beta, env.fax_depth(), env.fax_arity)
        case ImplI():
            raise TranslationError(
                "unsupported-constructor",
                "only the copycat body ξ is supported under a binder")
        case ImplE(f, u):
            df = translate(f, env, root)              # base α ⊢ β
            alpha, beta = child(root, 0), child(root, 1)
            du = translate(u, env, env.fresh_root())
            du = delocate(du, _alpha_of(du), alpha)
            result = normalize_open(make_cutnet((du, df)), env.fuel)
            if result is None:
                raise TranslationError("diverged-application",
                                       "the application cut-net diverges")
            return result
        case Const():
            b = env.behaviour_at(t.type, child(root, 0))
            free = sorted(free_incarnation(b, env.fuel), key=repr)
            if not free:
                raise TranslationError(
                    "unsupported-constructor",
                    f"the behaviour for {t.type} has no †-free material member")
            return free[0]
    raise TranslationError("unsupported-constructor",
                           f"{type(t).__name__} is outside the implicational "
                           "fragment")


def _alpha_of(d: Design) -> Address:
    if d.base.neg is None and len(d.base.pos) == 1:
        return next(iter(d.base.pos))
    raise TranslationError("unsupported-constructor",
                           "argument design must sit on a single positive "
                           "address")


def _check_fragment(f: Formula) -> None:
    match f:
        case Atom() | Absurd():
            return
        case Impl(a, b):
            _check_fragment(a)
            _check_fragment(b)
            return
    raise TranslationError("unsupported-constructor",
                           f"type {f} is outside the implicational fragment")


def check_translation(t: GroundTerm, d: Design, env: TranslationEnv,
                      root: Address | None = None) -> CandidateVerdict:
    """Classify the design of a term in the behaviour of the term's type."""
    ty = typecheck(t, GroundEnv()).succedent
    root = (0,) if root is None else root
    match ty:
        case Impl(a, b):
            alpha, beta = child(root, 0), child(root, 1)
            bA = env.behaviour_at(a, alpha)
            bB = env.behaviour_at(b, beta)
            ab = arrow(bA, bB, env.bounds, env.fuel)
            return classify_arrow_candidate(d, ab, env.fuel)
        case _:
            b = env.behaviour_at(ty, child(root, 0))
            dd = d
            if d.base != b.base:
                if d.base.neg is None and len(d.base.pos) == 1:
                    dd = delocate(d, next(iter(d.base.pos)), _alpha(b))
                else:
                    return CandidateVerdict("NotInBehaviour", "base mismatch")
            return classify_candidate(dd, b, env.fuel)
