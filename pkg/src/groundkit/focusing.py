"""Polarized formulas, clustered rules, focused proof search, and the
conversion between clustered derivations and games/strategies.

The fragment is ⊗/⊕ with duals ⅋/& plus atoms; units carried only as
polarity markers.  Search is two-phase: decompose the (at most one)
negative formula exhaustively, then commit to a positive focus with
backtracking over additive choices and context splits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


# ---------------------------------------------------------------------------
# polarized formulas


@dataclass(frozen=True)
class PosAtom:
    name: str


@dataclass(frozen=True)
class NegAtom:
    name: str


@dataclass(frozen=True)
class Tensor:
    left: "PolarizedFormula"
    right: "PolarizedFormula"


@dataclass(frozen=True)
class Plus:
    left: "PolarizedFormula"
    right: "PolarizedFormula"


@dataclass(frozen=True)
class Par:
    left: "PolarizedFormula"
    right: "PolarizedFormula"


@dataclass(frozen=True)
class With:
    left: "PolarizedFormula"
    right: "PolarizedFormula"


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


PolarizedFormula = (PosAtom | NegAtom | Tensor | Plus | Par | With
                    | One | Zero | Top | Bottom)


def polarity(f: PolarizedFormula) -> str:
    match f:
        case PosAtom() | Tensor() | Plus() | One() | Zero():
            return "pos"
        case NegAtom() | Par() | With() | Top() | Bottom():
            return "neg"
    raise TypeError(f"not a polarized formula: {f!r}")


def dual(f: PolarizedFormula) -> PolarizedFormula:
    match f:
        case PosAtom(n):
            return NegAtom(n)
        case NegAtom(n):
            return PosAtom(n)
        case Tensor(a, b):
            return Par(dual(a), dual(b))
        case Par(a, b):
            return Tensor(dual(a), dual(b))
        case Plus(a, b):
            return With(dual(a), dual(b))
        case With(a, b):
            return Plus(dual(a), dual(b))
        case One():
            return Bottom()
        case Bottom():
            return One()
        case Zero():
            return Top()
        case Top():
            return Zero()
    raise TypeError(f"not a polarized formula: {f!r}")


def pretty(f: PolarizedFormula) -> str:
    match f:
        case PosAtom(n):
            return n
        case NegAtom(n):
            return n + "⊥"
        case Tensor(a, b):
            return f"({pretty(a)} ⊗ {pretty(b)})"
        case Par(a, b):
            return f"({pretty(a)} ⅋ {pretty(b)})"
        case Plus(a, b):
            return f"({pretty(a)} ⊕ {pretty(b)})"
        case With(a, b):
            return f"({pretty(a)} & {pretty(b)})"
        case One():
            return "1"
        case Zero():
            return "0"
        case Top():
            return "⊤"
        case Bottom():
            return "⊥"
    raise AssertionError


Sequent = tuple[PolarizedFormula, ...]


# ---------------------------------------------------------------------------
# cluster decompositions


def negative_branches(f: PolarizedFormula) -> list[list[PolarizedFormula]]:
    """Premise leaf-lists of the generalized negative rule focused on f."""
    match f:
        case With(a, b):
            return negative_branches(a) + negative_branches(b)
        case Par(a, b):
            return [x + y for x in negative_branches(a)
                    for y in negative_branches(b)]
        case Top():
            return []
        case Bottom():
            return [[]]
        case _:
            return [[f]]


def positive_alternatives(f: PolarizedFormula) \
        -> list[list[list[PolarizedFormula]]]:
    """Alternatives of the generalized positive rule focused on f.

    Each alternative is a list of premise groups; each group's leaves
    must land in one premise sequent.
    """
    match f:
        case Plus(a, b):
            return positive_alternatives(a) + positive_alternatives(b)
        case Tensor(a, b):
            return [x + y for x in positive_alternatives(a)
                    for y in positive_alternatives(b)]
        case One():
            return [[]]
        case _:
            return [[[f]]]


def cluster_leaves(groups: list[list[PolarizedFormula]]) \
        -> tuple[PolarizedFormula, ...]:
    return tuple(f for g in groups for f in g)


# ---------------------------------------------------------------------------
# clustered derivations


@dataclass(frozen=True)
class ClusteredDerivation:
    sequent: Sequent
    rule: str                        # axiom | daimon | neg-cluster | pos-cluster
    focus: PolarizedFormula | None = None
    selections: tuple[tuple[PolarizedFormula, ...], ...] = ()
    children: tuple["ClusteredDerivation", ...] = ()


def _negatives(seq: Sequent) -> list[PolarizedFormula]:
    return [f for f in seq if polarity(f) == "neg"
            and not isinstance(f, NegAtom)]


def _remove_one(seq: Sequent, f: PolarizedFormula) -> Sequent:
    out = list(seq)
    out.remove(f)
    return tuple(out)


def _axiom_pair(seq: Sequent) -> bool:
    if len(seq) != 2:
        return False
    a, b = seq
    return dual(a) == b and isinstance(a, (PosAtom, NegAtom))


def _splits(ctx: Sequent, k: int):
    """All ways to distribute the context formulas over k premises."""
    if k == 0:
        if not ctx:
            yield ()
        return
    for assign in itertools.product(range(k), repeat=len(ctx)):
        parts = [[] for _ in range(k)]
        for f, slot in zip(ctx, assign):
            parts[slot].append(f)
        yield tuple(tuple(p) for p in parts)


def focused_search(seq: Sequent, daimon_mode: bool = False,
                   ) -> ClusteredDerivation | None:
    """Andreoli-style search returning the first derivation found under a
    deterministic exploration order."""
    seq = tuple(seq)

    negs = _negatives(seq)
    if negs:
        focus = negs[0]
        ctx = _remove_one(seq, focus)
        branches = negative_branches(focus)
        children = []
        selections = []
        for leaves in branches:
            premise = ctx + tuple(leaves)
            sub = focused_search(premise, daimon_mode)
            if sub is None:
                return _give_up(seq, daimon_mode)
            selections.append(tuple(leaves))
            children.append(sub)
        return ClusteredDerivation(seq, "neg-cluster", focus,
                                   tuple(selections), tuple(children))

    if _axiom_pair(seq):
        return ClusteredDerivation(seq, "axiom")

    def refocus_debt(premise: Sequent) -> int:
        """Positive compounds that would have to be refocused immediately,
        breaking move alternation in the extracted games."""
        if _axiom_pair(premise) or _negatives(premise):
            return 0
        return sum(1 for f in premise
                   if polarity(f) == "pos" and not isinstance(f, PosAtom))

    fallback = None
    for focus in seq:
        if polarity(focus) != "pos" or isinstance(focus, PosAtom):
            continue
        ctx = _remove_one(seq, focus)
        for groups in positive_alternatives(focus):
            splits = sorted(
                _splits(ctx, len(groups)),
                key=lambda sp: sum(refocus_debt(tuple(g) + part)
                                   for g, part in zip(groups, sp)))
            for split in splits:
                children = []
                ok = True
                for g, part in zip(groups, split):
                    premise = tuple(g) + part
                    sub = (ClusteredDerivation(premise, "axiom")
                           if _axiom_pair(premise)
                           else focused_search(premise, False))
                    if sub is None:
                        ok = False
                        break
                    children.append(sub)
                if ok:
                    sels = tuple(tuple(g) for g in groups)
                    found = ClusteredDerivation(seq, "pos-cluster", focus,
                                                sels, tuple(children))
                    # prefer a derivation whose games alternate; keep the
                    # first success as a fallback for forced double foci
                    if not validate_strategy(derivation_to_strategy(found)):
                        return found
                    fallback = fallback or found
    if fallback is not None:
        return fallback
    return _give_up(seq, daimon_mode)


def _give_up(seq: Sequent, daimon_mode: bool):
    return ClusteredDerivation(seq, "daimon") if daimon_mode else None


def validate_derivation(d: ClusteredDerivation) -> list[str]:
    """Re-check a derivation against the cluster schemas."""
    problems = []

    def walk(d, path):
        match d.rule:
            case "axiom":
                if not _axiom_pair(d.sequent):
                    problems.append(f"{path}: not a dual atom pair")
            case "daimon":
                pass
            case "neg-cluster":
                ctx = _remove_one(d.sequent, d.focus)
                want = negative_branches(d.focus)
                if [list(s) for s in d.selections] != want:
                    problems.append(f"{path}: branch selections do not match "
                                    "the negative decomposition")
                for i, (sel, c) in enumerate(zip(d.selections, d.children)):
                    if sorted(map(repr, c.sequent)) != \
                            sorted(map(repr, ctx + sel)):
                        problems.append(f"{path}.{i}: premise sequent mismatch")
                    walk(c, f"{path}.{i}")
            case "pos-cluster":
                if list(d.selections) not in \
                        [[tuple(g) for g in alt]
                         for alt in positive_alternatives(d.focus)]:
                    problems.append(f"{path}: selections are not an "
                                    "alternative of the focus")
                ctx = list(_remove_one(d.sequent, d.focus))
                got = []
                for i, (sel, c) in enumerate(zip(d.selections, d.children)):
                    rest = list(c.sequent)
                    for f in sel:
                        if f in rest:
                            rest.remove(f)
                        else:
                            problems.append(f"{path}.{i}: premise misses a "
                                            "selected leaf")
                    got += rest
                    walk(c, f"{path}.{i}")
                if sorted(map(repr, got)) != sorted(map(repr, ctx)):
                    problems.append(f"{path}: context is not split among "
                                    "the premises")
            case _:
                problems.append(f"{path}: unknown rule")
    walk(d, "root")
    return problems


# ---------------------------------------------------------------------------
# games and strategies


Move = tuple[PolarizedFormula, frozenset[PolarizedFormula]]
Game = tuple[Move, ...]
Strategy = frozenset[Game]


def validate_game(g: Game) -> list[str]:
    problems = []
    if not g:
        problems.append("a game is a non-empty sequence")
        return problems
    for i in range(1, len(g)):
        if polarity(g[i][0]) == polarity(g[i - 1][0]):
            problems.append(f"moves {i-1} and {i} have equal polarity")
        if polarity(g[i][0]) == "neg" and g[i][0] not in g[i - 1][1]:
            problems.append(f"negative move {i} is not among the previous "
                            "move's choices")
    foci = [m[0] for m in g]
    if len(set(foci)) != len(foci):
        problems.append("two distinct moves share a focus")
    return problems


def validate_strategy(s: Strategy) -> list[str]:
    problems = []
    for g in s:
        problems += validate_game(g)
        for k in range(1, len(g)):
            if g[:k] not in s:
                problems.append("strategy is not prefix-closed")
    return problems


def derivation_to_strategy(d: ClusteredDerivation) -> Strategy:
    """One game per root-to-leaf branch, each cluster read as a move."""
    games: set[Game] = set()

    def walk(d, prefix: Game):
        match d.rule:
            case "axiom" | "daimon":
                if prefix:
                    games.add(prefix)
            case "neg-cluster":
                for sel, c in zip(d.selections, d.children):
                    walk(c, prefix + ((d.focus, frozenset(sel)),))
            case "pos-cluster":
                move = (d.focus, frozenset(cluster_leaves(list(map(list,
                                                                   d.selections)))))
                for c in d.children:
                    walk(c, prefix + (move,))
    walk(d, ())
    closed: set[Game] = set()
    for g in games:
        for k in range(1, len(g) + 1):
            closed.add(g[:k])
    return frozenset(closed)


class StrategyConversionError(Exception):
    pass


def strategy_to_derivation(s: Strategy, seq: Sequent) -> ClusteredDerivation:
    """Reassemble the clustered derivation whose games are exactly s."""
    if not s:
        raise StrategyConversionError("empty strategy (games are non-empty)")
    problems = validate_strategy(s)
    if problems:
        raise StrategyConversionError("; ".join(sorted(set(problems))))

    def nexts(prefix: Game) -> list[Move]:
        out = {g[len(prefix)] for g in s
               if len(g) > len(prefix) and g[:len(prefix)] == prefix}
        return sorted(out, key=repr)

    def build(seq: Sequent, prefix: Game) -> ClusteredDerivation:
        # sibling premises of a positive cluster share the prefix, so keep
        # only the continuations whose focus lives in this premise
        moves = [m for m in nexts(prefix) if m[0] in seq]
        if not moves:
            if _axiom_pair(seq):
                return ClusteredDerivation(seq, "axiom")
            raise StrategyConversionError(
                f"games end at a sequent that is not an axiom: {seq}")
        foci = {m[0] for m in moves}
        if len(foci) != 1:
            raise StrategyConversionError(
                "conflicting moves: distinct focuses after one prefix")
        focus = next(iter(foci))
        if focus not in seq:
            raise StrategyConversionError(
                f"move focus {pretty(focus)} is not in the sequent")
        ctx = _remove_one(seq, focus)
        if polarity(focus) == "neg":
            want = negative_branches(focus)
            offered = {m[1] for m in moves}
            if offered != {frozenset(b) for b in want}:
                raise StrategyConversionError(
                    "negative move choices do not cover the decomposition")
            children = []
            for leaves in want:
                move = (focus, frozenset(leaves))
                children.append(build(ctx + tuple(leaves), prefix + (move,)))
            return ClusteredDerivation(
                seq, "neg-cluster", focus,
                tuple(tuple(b) for b in want), tuple(children))
        if len(moves) != 1:
            raise StrategyConversionError(
                "conflicting positive moves after one prefix")
        move = moves[0]
        for groups in positive_alternatives(focus):
            if frozenset(cluster_leaves(groups)) != move[1]:
                continue
            for split in _splits(ctx, len(groups)):
                try:
                    children = [build(tuple(g) + part, prefix + (move,))
                                for g, part in zip(groups, split)]
                except StrategyConversionError:
                    continue
                return ClusteredDerivation(
                    seq, "pos-cluster", focus,
                    tuple(tuple(g) for g in groups), tuple(children))
        raise StrategyConversionError(
            "no alternative/split of the focus realizes the strategy")

    return build(tuple(seq), ())
