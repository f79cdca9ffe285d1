"""Deterministic random generator of closed well-typed ground terms."""

import random

from groundkit import terms as tm
from groundkit.formulas import Atom, Conj, Disj, Formula, Impl

P, Q = Atom("P"), Atom("Q")

TYPES = [P, Q, Conj(P, Q), Disj(P, Q), Impl(P, P), Impl(P, Q),
         Conj(Impl(P, P), Q), Disj(Q, Impl(P, Q))]


def random_type(rng: random.Random) -> Formula:
    return rng.choice(TYPES)


def random_term(rng: random.Random, ty: Formula, depth: int,
                scope: tuple[tm.Var, ...] = ()) -> tm.GroundTerm:
    """A closed well-typed term of type `ty` (closed when scope is empty)."""
    matching = [v for v in scope if v.type == ty]
    choices = ["intro"]
    if depth > 0:
        choices += ["impl-redex", "conj-redex", "disj-redex"]
    if matching:
        choices += ["var", "var"]
    pick = rng.choice(choices)

    if pick == "var":
        return rng.choice(matching)
    if pick == "impl-redex":
        arg_ty = random_type(rng)
        x = tm.Var(f"v{rng.randrange(10**6)}", arg_ty)
        body = random_term(rng, ty, depth - 1, scope + (x,))
        arg = random_term(rng, arg_ty, depth - 1, scope)
        return tm.ImplE(tm.ImplI(x, body), arg)
    if pick == "conj-redex":
        other = random_type(rng)
        side = rng.choice([1, 2])
        l_ty, r_ty = (ty, other) if side == 1 else (other, ty)
        pair = tm.ConjI(random_term(rng, l_ty, depth - 1, scope),
                        random_term(rng, r_ty, depth - 1, scope))
        return tm.ConjE(side, pair)
    if pick == "disj-redex":
        other = random_type(rng)
        side = rng.choice([1, 2])
        d = Disj(ty, other) if side == 1 else Disj(other, ty)
        inj = tm.DisjI(side, d, random_term(rng, ty, depth - 1, scope))
        x1 = tm.Var(f"v{rng.randrange(10**6)}", d.left)
        x2 = tm.Var(f"v{rng.randrange(10**6)}", d.right)
        u = random_term(rng, ty, depth - 1, scope + (x1,))
        v = random_term(rng, ty, depth - 1, scope + (x2,))
        return tm.DisjE(x1, x2, inj, u, v)

    # introduction form for the target type
    match ty:
        case Atom(p, _):
            return tm.Const(f"c_{p}", ty)
        case Conj(a, b):
            return tm.ConjI(random_term(rng, a, max(depth - 1, 0), scope),
                            random_term(rng, b, max(depth - 1, 0), scope))
        case Disj(a, b):
            side = rng.choice([1, 2])
            return tm.DisjI(side, ty,
                            random_term(rng, a if side == 1 else b,
                                        max(depth - 1, 0), scope))
        case Impl(a, _):
            x = tm.Var(f"v{rng.randrange(10**6)}", a)
            return tm.ImplI(x, random_term(rng, ty.right,
                                           max(depth - 1, 0), scope + (x,)))
    raise AssertionError(ty)


def corpus(seed: int, size: int, depth: int = 3):
    rng = random.Random(seed)
    return [random_term(rng, random_type(rng), depth) for _ in range(size)]
