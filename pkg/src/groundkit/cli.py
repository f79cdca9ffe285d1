"""Command-line surface: parse, check, reduce, interact, classify,
translate, focus, and an interactive step-REPL.

Exit status: 0 for affirmative results (ok / yes / Ground / Converged),
1 for negative results, 2 for errors and unknowns.
"""

from __future__ import annotations

import argparse
import sys

from . import focusing as fo
from . import sexpr as sx
from . import terms as tm
from .behaviours import (
    CandidateVerdict, NotAMember, classify_candidate, incarnation_of,
    member_verdict, members, orthogonal_set,
)
from .designs import (
    Design, DaimonLeaf, FidLeaf, PosNode, format_address, validate_design,
)
from .interaction import (
    Converged, CutNet, CutNetError, DEFAULT_FUEL, Diverged, FuelExhausted,
    child, normalize_closed, orthogonal, render_design, render_snapshots,
)
from .translate import TranslationEnv, TranslationError, check_translation, \
    translate


OK, NO, ERR = 0, 1, 2


class CliError(Exception):
    def __init__(self, message, status=ERR):
        self.status = status
        super().__init__(message)


def _load(path):
    try:
        return sx.load(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except sx.ParseError as e:
        raise CliError(f"{path}: {e}")


def _print_term(t):
    print(sx.write_sexpr(sx.term_to_sexpr(t)))


def _print_design(d):
    print("\n".join(render_design(d)))


# ---------------------------------------------------------------------------
# verbs


def cmd_check(args) -> int:
    value = _load(args.input)
    if isinstance(value, tm.GroundTerm):  # type: ignore[misc, arg-type]
        pass
    if args.input.endswith(".gt"):
        try:
            ty = tm.typecheck(value, tm.GroundEnv())
        except tm.GroundTypeError as e:
            print(f"type error: {e}")
            return NO
        ants = ", ".join(sx.write_sexpr(sx.formula_to_sexpr(a))
                         for a in ty.antecedents)
        succ = sx.write_sexpr(sx.formula_to_sexpr(ty.succedent))
        print(f"ok: {ants} |- {succ}" if ants else f"ok: |- {succ}")
        return OK
    print("ok: parsed")
    return OK


def cmd_reduce(args) -> int:
    t = _load(args.term)
    out = tm.normalize(t, tm.GroundEnv(), args.fuel)
    current = t
    for step, (pos, name) in enumerate(out.trace, start=1):
        nxt = tm.reduce_step(current, tm.GroundEnv())
        current = nxt if nxt is not None else current
        where = ".".join(map(str, pos)) or "root"
        print(f"step {step}: {name} at {where}")
        if args.format == "pretty":
            _print_term(current)
    match out:
        case tm.Canonical(term, _):
            print("canonical:")
            _print_term(term)
            return OK
        case tm.Loop(cycle, _):
            print(f"loop: cycle of length {len(cycle) - 1}")
            return NO
        case tm.Stuck(term, _):
            print("stuck:")
            _print_term(term)
            return NO
        case _:
            print("fuel exhausted")
            return ERR
    return ERR


def cmd_ground(args) -> int:
    t = _load(args.term)
    try:
        v = tm.denotes_ground(t, tm.GroundEnv(), args.fuel)
    except tm.GroundTypeError as e:
        print(f"error: {e}")
        return ERR
    print(f"{v.tag}" + (f": {v.reason}" if v.reason else ""))
    return {"yes": OK, "no": NO}.get(v.tag, ERR)


def cmd_design_validate(args) -> int:
    d = _load(args.design)
    problems = validate_design(d)
    if problems:
        for p in problems:
            print(f"violation: {p}")
        return NO
    print("ok")
    return OK


def cmd_interact(args) -> int:
    net = _load(args.net)
    if args.render == "snapshots":
        text = render_snapshots(net, args.fuel)
        sys.stdout.write(text)
        return OK if text.rstrip().endswith("† ⊢") else NO
    out = normalize_closed(net, args.fuel)
    for pol, xi, ram in out.trace:
        print(f"{pol} {format_address(xi)} "
              + "{" + ",".join(map(str, ram)) + "}")
    match out:
        case Converged():
            print("converged")
            return OK
        case Diverged(at, reason, _):
            print(f"diverged at {format_address(at)}: {reason}")
            return NO
        case _:
            print("fuel exhausted")
            return ERR
    return ERR


def cmd_orth(args) -> int:
    d1, d2 = _load(args.designs[0]), _load(args.designs[1])
    v = orthogonal(d1, d2, args.fuel)
    print(v)
    return {"yes": OK, "no": NO}.get(v, ERR)


def cmd_behaviour(args) -> int:
    b = _load(args.behaviour)
    if args.show == "orthogonal":
        designs = sorted(b.cached_orthogonal, key=repr)
    else:
        designs = sorted(members(b, args.fuel), key=repr)
    print(f"{args.show}: {len(designs)} design(s)")
    for d in designs:
        _print_design(d)
        print()
    return OK


def cmd_incarnate(args) -> int:
    d, b = _load(args.design), _load(args.behaviour)
    try:
        inc = incarnation_of(d, b, args.fuel)
    except NotAMember as e:
        print(f"not a member: {e}")
        return NO
    _print_design(inc)
    return OK


def cmd_classify(args) -> int:
    d, b = _load(args.design), _load(args.behaviour)
    v = classify_candidate(d, b, args.fuel)
    print(v)
    if v.tag == "Ground":
        return OK
    if v.tag == "Unknown":
        return ERR
    return NO


def cmd_translate(args) -> int:
    t = _load(args.term)
    env = _load_tenv(args.env)
    try:
        d = translate(t, env, root=(0,))
    except TranslationError as e:
        print(f"error: {e}")
        return ERR
    _print_design(d)
    if args.out:
        sx.dump(d, args.out)
    v = check_translation(t, d, env, root=(0,))
    print(f"classification: {v}")
    return OK if v.tag in ("Ground", "PseudoGround") else NO


def cmd_focus(args) -> int:
    seq = _load(args.sequent)
    d = fo.focused_search(seq, daimon_mode=args.daimon)
    if d is None:
        print("no derivation")
        return NO
    _print_derivation(d)
    if args.to_strategy:
        s = fo.derivation_to_strategy(d)
        print("strategy:")
        for game in sorted(s, key=lambda g: (len(g), repr(g))):
            moves = " ; ".join(
                f"({fo.pretty(focus)} | "
                + ", ".join(sorted(fo.pretty(c) for c in choices)) + ")"
                for focus, choices in game)
            print(f"  {moves}")
    return OK


def _print_derivation(d: fo.ClusteredDerivation, indent=0):
    pad = "  " * indent
    seq = ", ".join(fo.pretty(f) for f in d.sequent)
    focus = f" on {fo.pretty(d.focus)}" if d.focus is not None else ""
    print(f"{pad}{d.rule}{focus}: |- {seq}")
    for c in d.children:
        _print_derivation(c, indent + 1)


# ---------------------------------------------------------------------------
# translation environment files


def _load_tenv(path) -> TranslationEnv:
    try:
        with open(path, encoding="utf-8") as fh:
            x = sx.read_sexpr(fh.read())
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    if not (isinstance(x, list) and x and x[0] == "tenv"):
        raise CliError(f"{path}: expected a (tenv ...) form")
    bounds = None
    atoms = {}
    fax_arity = 1
    fuel = DEFAULT_FUEL
    for item in x[1:]:
        match item[0]:
            case "bounds":
                bounds = sx.bounds_from_sexpr(item)
            case "fax-arity":
                fax_arity = int(item[1])
            case "fuel":
                fuel = int(item[1])
            case "atom":
                f = sx.formula_from_sexpr(item[1])
                atoms[f] = sx.behaviour_from_sexpr(item[2])
            case other:
                raise CliError(f"{path}: unknown tenv entry {other!r}")
    if bounds is None:
        raise CliError(f"{path}: tenv needs a (bounds ...) entry")
    return TranslationEnv(atoms, bounds, fax_arity, fuel)


# ---------------------------------------------------------------------------
# REPL


def cmd_repl(args) -> int:
    if args.term:
        return _repl_term(_load(args.term), args.fuel)
    if args.net:
        return _repl_net(_load(args.net), args.fuel)
    raise CliError("repl needs --term or --net")


def _repl_term(t, fuel, inp=None, out=None, env=None) -> int:
    inp = inp or sys.stdin
    out = out or sys.stdout
    env = env or tm.GroundEnv()
    history = [t]

    def show():
        print(sx.write_sexpr(sx.term_to_sexpr(history[-1])), file=out)

    show()
    for line in inp:
        cmd = line.strip()
        if cmd == "quit":
            break
        elif cmd == "show":
            show()
        elif cmd == "trace":
            for i, term in enumerate(history):
                print(f"{i}: {sx.write_sexpr(sx.term_to_sexpr(term))}",
                      file=out)
        elif cmd == "back":
            if len(history) == 1:
                print("already at step 0", file=out)
            else:
                history.pop()
                show()
        elif cmd == "step":
            current = history[-1]
            if tm.is_primitive_head(current):
                print("canonical (no further step)", file=out)
                continue
            hit = tm.reduce_step_at(current, env)
            if hit is None:
                print("stuck (no further step)", file=out)
                continue
            nxt, pos, name = hit
            where = ".".join(map(str, pos)) or "root"
            print(f"applied {name} at {where}", file=out)
            reprs = [repr(h) for h in history]
            if repr(nxt) in reprs:
                idx = reprs.index(repr(nxt))
                print(f"loop detected: cycle of length {len(history) - idx}",
                      file=out)
            history.append(nxt)
            show()
        elif cmd:
            print(f"unknown command {cmd!r} "
                  "(step, back, show, trace, quit)", file=out)
    return OK


def _repl_net(net: CutNet, fuel, inp=None, out=None) -> int:
    inp = inp or sys.stdin
    out = out or sys.stdout
    env0 = {d.base.neg: d for d in net.designs if d.base.neg is not None}
    # history of (current design, listener environment, trace)
    history = [(net.principal, env0, ())]

    def show():
        current, env, _ = history[-1]
        for d in [current] + [env[k] for k in sorted(env)]:
            print("\n".join(render_design(d)), file=out)
            print("", file=out)

    show()
    for line in inp:
        cmd = line.strip()
        if cmd == "quit":
            break
        elif cmd == "show":
            show()
        elif cmd == "trace":
            for pol, xi, ram in history[-1][2]:
                print(f"{pol} {format_address(xi)} "
                      + "{" + ",".join(map(str, ram)) + "}", file=out)
        elif cmd == "back":
            if len(history) == 1:
                print("already at step 0", file=out)
            else:
                history.pop()
                show()
        elif cmd == "step":
            current, env, trace = history[-1]
            match current.node:
                case DaimonLeaf():
                    print("converged: † ⊢", file=out)
                case FidLeaf():
                    print("diverged: Ω reached", file=out)
                case PosNode(focus, ram, kids):
                    counter = env.get(focus)
                    branch = (counter.node.branch_map().get(ram)
                              if counter is not None else None)
                    if branch is None:
                        print(f"diverged at {format_address(focus)}", file=out)
                        continue
                    new_env = dict(env)
                    del new_env[focus]
                    for i, c in zip(ram, kids):
                        new_env[child(focus, i)] = c
                    rec = ("+", focus, ram)
                    print(f"consumed (+,-) at {format_address(focus)} "
                          + "{" + ",".join(map(str, ram)) + "}", file=out)
                    history.append((branch, new_env,
                                    trace + (rec, ("-", focus, ram))))
                    show()
        elif cmd:
            print(f"unknown command {cmd!r} "
                  "(step, back, show, trace, quit)", file=out)
    return OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="groundkit",
        description="Ground-term reduction, design interaction, behaviours, "
                    "and focused proof search.")
    sub = p.add_subparsers(dest="verb", required=True)

    def fuel(sp):
        sp.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    sp = sub.add_parser("check", help="parse a file; typecheck ground terms")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("reduce", help="normalize a ground term with a trace")
    sp.add_argument("--term", required=True)
    sp.add_argument("--format", choices=["pretty", "trace-lines"],
                    default="trace-lines")
    fuel(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("ground", help="does a closed term denote a ground?")
    sp.add_argument("--term", required=True)
    fuel(sp)
    sp.set_defaults(func=cmd_ground)

    sp = sub.add_parser("design-validate", help="check the design rules")
    sp.add_argument("--design", required=True)
    sp.set_defaults(func=cmd_design_validate)

    sp = sub.add_parser("interact", help="normalize a closed cut-net")
    sp.add_argument("--net", required=True)
    sp.add_argument("--render", choices=["snapshots", "trace-lines"],
                    default="trace-lines")
    fuel(sp)
    sp.set_defaults(func=cmd_interact)

    sp = sub.add_parser("orth", help="orthogonality of two designs")
    sp.add_argument("designs", nargs=2)
    fuel(sp)
    sp.set_defaults(func=cmd_orth)

    sp = sub.add_parser("behaviour",
                        help="show the members or orthogonal of a behaviour")
    sp.add_argument("--behaviour", required=True)
    sp.add_argument("--show", choices=["members", "orthogonal"],
                    default="members")
    fuel(sp)
    sp.set_defaults(func=cmd_behaviour)

    sp = sub.add_parser("incarnate", help="incarnation of a member design")
    sp.add_argument("--design", required=True)
    sp.add_argument("--behaviour", required=True)
    fuel(sp)
    sp.set_defaults(func=cmd_incarnate)

    sp = sub.add_parser("classify",
                        help="ground / pseudo-ground classification")
    sp.add_argument("--design", required=True)
    sp.add_argument("--behaviour", required=True)
    fuel(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("translate",
                        help="map a linear implicational term to a design")
    sp.add_argument("--term", required=True)
    sp.add_argument("--env", required=True)
    sp.add_argument("--out", help="write the design to this .dsn file")
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("focus", help="focused proof search on a sequent")
    sp.add_argument("--sequent", required=True)
    sp.add_argument("--daimon", action="store_true",
                    help="close failed branches with the daimon")
    sp.add_argument("--to-strategy", action="store_true",
                    help="also print the induced strategy")
    sp.set_defaults(func=cmd_focus)

    sp = sub.add_parser("repl", help="interactive step-through")
    sp.add_argument("--term")
    sp.add_argument("--net")
    fuel(sp)
    sp.set_defaults(func=cmd_repl)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.status
    except (CutNetError, sx.ParseError, tm.GroundTypeError,
            TranslationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERR


if __name__ == "__main__":
    sys.exit(main())
