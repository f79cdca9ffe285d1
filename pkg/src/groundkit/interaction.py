"""Cut-nets and deterministic normalization (interaction) on closed nets.

The engine keeps an environment mapping each cut address to the negative
design that listens there, and walks the principal positive design,
consuming matching action pairs depth-first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .designs import (
    Address, DaimonLeaf, Design, FidLeaf, NegNode, Pitchfork, PosNode,
    Ramification, child, daimon, disjoint, fid, format_address,
    merge_subdesigns, star,
)

DEFAULT_FUEL = 100_000

#: trace record: (polarity "+", "-" or "†", address, ramification)
TraceRecord = tuple[str, Address, Ramification]


class CutNetError(Exception):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class CutNet:
    designs: tuple[Design, ...]
    cuts: frozenset[Address]
    principal: Design
    base: Pitchfork                  # the uncut addresses

    @property
    def closed(self) -> bool:
        return not self.base.all_addresses()


def make_cutnet(designs) -> CutNet:
    """Validate the three cut-net conditions and compute cuts/principal."""
    designs = tuple(designs)
    problems = []
    if not designs:
        raise CutNetError(["a cut-net must be non-empty"])

    occurrences: dict[Address, list[str]] = {}
    for d in designs:
        if d.base.neg is not None:
            occurrences.setdefault(d.base.neg, []).append("-")
        for a in d.base.pos:
            occurrences.setdefault(a, []).append("+")

    addrs = sorted(occurrences)
    for i, a in enumerate(addrs):
        for b in addrs[i + 1:]:
            if a != b and not disjoint(a, b):
                problems.append(
                    f"condition (1): base addresses {format_address(a)} and "
                    f"{format_address(b)} neither disjoint nor equal")
    cuts = set()
    for a, occ in occurrences.items():
        if len(occ) > 2:
            problems.append(f"condition (2): address {format_address(a)} "
                            f"occurs in {len(occ)} bases")
        elif len(occ) == 2:
            if occ[0] == occ[1]:
                problems.append(f"condition (2): address {format_address(a)} "
                                "occurs twice with the same polarity")
            else:
                cuts.add(a)
    if problems:
        raise CutNetError(problems)

    # condition (3): the graph (vertices = designs, edges = cuts) is a tree
    if len(cuts) != len(designs) - 1:
        problems.append("condition (3): the cut graph is not a tree "
                        f"({len(cuts)} cuts over {len(designs)} designs)")
    else:
        index = {}
        for k, d in enumerate(designs):
            for a in d.base.all_addresses():
                index.setdefault(a, []).append(k)
        seen = {0}
        frontier = [0]
        while frontier:
            k = frontier.pop()
            for a in designs[k].base.all_addresses():
                if a in cuts:
                    for j in index[a]:
                        if j not in seen:
                            seen.add(j)
                            frontier.append(j)
        if len(seen) != len(designs):
            problems.append("condition (3): the cut graph is not connected")
    if problems:
        raise CutNetError(problems)

    principals = [d for d in designs
                  if d.base.neg is None or d.base.neg not in cuts]
    assert len(principals) == 1, "a valid cut-net has a unique principal design"
    principal = principals[0]

    neg = None
    pos = set()
    for d in designs:
        if d.base.neg is not None and d.base.neg not in cuts:
            neg = d.base.neg
        pos |= {a for a in d.base.pos if a not in cuts}
    return CutNet(designs, frozenset(cuts), principal,
                  Pitchfork(neg, frozenset(pos)))


# ---------------------------------------------------------------------------
# interaction results


@dataclass(frozen=True)
class Converged:
    result: Design
    trace: tuple[TraceRecord, ...]


@dataclass(frozen=True)
class Diverged:
    at: Address
    reason: str                     # no-matching-negative-action | fid-encountered
    trace: tuple[TraceRecord, ...]


@dataclass(frozen=True)
class FuelExhausted:
    trace: tuple[TraceRecord, ...]


InteractionResult = Converged | Diverged | FuelExhausted


def _site(d: Design) -> Address:
    return min(sorted(d.base.pos)) if d.base.pos else ()


def normalize_closed(net: CutNet, fuel: int = DEFAULT_FUEL) -> InteractionResult:
    """Run the cut-propagation loop on a closed cut-net."""
    if not net.closed:
        raise CutNetError(["normalization is defined on closed cut-nets only"])
    env: dict[Address, Design] = {d.base.neg: d for d in net.designs
                                  if d.base.neg is not None}
    current = net.principal
    trace: list[TraceRecord] = []
    pairs = 0
    while True:
        match current.node:
            case DaimonLeaf():
                trace.append(("†", _site(current), ()))
                return Converged(daimon(), tuple(trace))
            case FidLeaf():
                return Diverged(_site(current), "fid-encountered", tuple(trace))
            case PosNode(focus, ram, kids):
                counter = env.pop(focus, None)
                if counter is None:
                    raise CutNetError(
                        [f"no design listens at {format_address(focus)}"])
                assert isinstance(counter.node, NegNode)
                branch = counter.node.branch_map().get(ram)
                if branch is None:
                    return Diverged(focus, "no-matching-negative-action",
                                    tuple(trace))
                trace.append(("+", focus, ram))
                trace.append(("-", focus, ram))
                pairs += 1
                if pairs > fuel:
                    return FuelExhausted(tuple(trace))
                for i, c in zip(ram, kids):
                    env[child(focus, i)] = c
                current = branch
            case _:
                raise CutNetError(["a principal design cannot start negative "
                                   "in a closed net"])


# ---------------------------------------------------------------------------
# orthogonality


class BaseMismatch(Exception):
    pass


def _dual_single(a: Design, b: Design) -> bool:
    return (a.base.neg is None and len(a.base.pos) == 1
            and b.base.neg is not None and not b.base.pos
            and a.base.pos == {b.base.neg})


def orthogonal(d: Design, d2: Design, fuel: int = DEFAULT_FUEL) -> str:
    """'yes' | 'no' | 'unknown' for two designs on dual single-address bases."""
    if not (_dual_single(d, d2) or _dual_single(d2, d)):
        raise BaseMismatch(f"bases {d.base} and {d2.base} are not dual")
    out = normalize_closed(make_cutnet((d, d2)), fuel)
    match out:
        case Converged():
            return "yes"
        case Diverged():
            return "no"
        case _:
            return "unknown"


# ---------------------------------------------------------------------------
# used parts


def used_part(d: Design, trace) -> Design:
    """Prune a design to the nodes consumed (or reached) in a trace.

    Unconsumed positive subtrees become Fid; negative branches that were
    never entered are dropped.  Bases are kept, so the result compares
    under subdesign_order.
    """
    consumed = {(xi, I) for pol, xi, I in trace if pol in ("+", "-")}

    def go(d: Design) -> Design:
        match d.node:
            case PosNode(focus, ram, kids):
                if (focus, ram) not in consumed:
                    return Design(d.base, FidLeaf())
                return Design(d.base,
                              PosNode(focus, ram, tuple(go(c) for c in kids)))
            case NegNode(focus, branches):
                kept = tuple((key, go(b)) for key, b in branches
                             if (focus, key) in consumed)
                return Design(d.base, NegNode(focus, kept))
            case _:
                return d
    return go(d)


def join_used_parts(d: Design, traces) -> Design:
    """Union of the prunings of one design over several interaction traces."""
    parts = [used_part(d, t) for t in traces]
    if not parts:
        return used_part(d, ())
    out = parts[0]
    for p in parts[1:]:
        out = merge_subdesigns(out, p)
    return out


# ---------------------------------------------------------------------------
# rendering (pitchfork snapshots)


def render_design(d: Design, mark: frozenset[Address] = frozenset(),
                  indent: int = 0) -> list[str]:
    """Indented tree rendering; marked addresses are starred."""
    pad = "  " * indent

    def fa(a: Address) -> str:
        s = format_address(a)
        return f"*{s}*" if a in mark else s

    def base_str(p: Pitchfork) -> str:
        left = fa(p.neg) if p.neg is not None else ""
        right = ", ".join(fa(a) for a in sorted(p.pos))
        return f"{left} ⊢ {right}".rstrip()

    match d.node:
        case DaimonLeaf():
            return [f"{pad}† {base_str(d.base)}"]
        case FidLeaf():
            return [f"{pad}Ω {base_str(d.base)}"]
        case PosNode(focus, ram, kids):
            rs = "{" + ",".join(map(str, ram)) + "}"
            lines = [f"{pad}(+ {fa(focus)} {rs}) {base_str(d.base)}"]
            for c in kids:
                lines += render_design(c, mark, indent + 1)
            return lines
        case NegNode(focus, branches):
            ns = "{" + "; ".join("{" + ",".join(map(str, k)) + "}"
                                 for k, _ in branches) + "}"
            lines = [f"{pad}(- {fa(focus)} {ns}) {base_str(d.base)}"]
            for _, b in branches:
                lines += render_design(b, mark, indent + 1)
            return lines
    raise AssertionError


def render_snapshots(net: CutNet, fuel: int = DEFAULT_FUEL) -> str:
    """Replay a closed normalization, one snapshot of the net per step."""
    if not net.closed:
        raise CutNetError(["snapshots are defined on closed cut-nets only"])
    env: dict[Address, Design] = {d.base.neg: d for d in net.designs
                                  if d.base.neg is not None}
    current = net.principal
    out = []
    step = 0
    while True:
        state = [current] + [env[k] for k in sorted(env)]
        match current.node:
            case DaimonLeaf():
                mark = frozenset()
            case PosNode(focus, _, _):
                mark = frozenset({focus})
            case _:
                mark = frozenset()
        out.append(f"== step {step} ==")
        for d in state:
            out += render_design(d, mark)
            out.append("")
        match current.node:
            case DaimonLeaf():
                out.append("== result ==")
                out.append("† ⊢")
                break
            case FidLeaf():
                out.append("== result ==")
                out.append("diverges (Ω)")
                break
            case PosNode(focus, ram, kids):
                counter = env.pop(focus, None)
                branch = (counter.node.branch_map().get(ram)
                          if counter is not None else None)
                if branch is None:
                    out.append("== result ==")
                    out.append(f"diverges at {format_address(focus)}")
                    break
                for i, c in zip(ram, kids):
                    env[child(focus, i)] = c
                current = branch
        step += 1
        if step > fuel:
            out.append("== result ==")
            out.append("fuel exhausted")
            break
    return "\n".join(out) + "\n"
