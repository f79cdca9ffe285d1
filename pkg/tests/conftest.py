"""Shared constructions: the worked identity-application term, the
ping-pong rewrite system, and the convergent two-design cut-net."""

import pytest

from groundkit import terms as tm
from groundkit.formulas import Absurd, Atom, Disj, Impl
from groundkit.designs import (
    atomic_bomb, daimon, negative, positive, skunk,
)
from groundkit.interaction import make_cutnet

A = Atom("A")
AA = Impl(A, A)


def identity_term():
    """λξ. ξ at type A → A."""
    xi = tm.Var("xi", A)
    return tm.ImplI(xi, xi)


def worked_term():
    """Apply (λξ₁. case or-i₁(ξ₁) of ξ₂ → ξ₂ | ξ⁰ → explode) to λξ.ξ.

    Normalizes to the identity in exactly two steps: the application
    fires first, then the case split on the first injection.
    """
    disj = Disj(AA, Absurd())
    xi1 = tm.Var("xi1", AA)
    xi2 = tm.Var("xi2", AA)
    xi0 = tm.Var("xi0", Absurd())
    body = tm.DisjE(xi2, xi0, tm.DisjI(1, disj, xi1), xi2,
                    tm.Exploder(AA, xi0))
    return tm.ImplE(tm.ImplI(xi1, body), identity_term())


def open_variant():
    """The worked term with the argument replaced by a free variable ξ₃."""
    disj = Disj(AA, Absurd())
    xi1 = tm.Var("xi1", AA)
    xi2 = tm.Var("xi2", AA)
    xi0 = tm.Var("xi0", Absurd())
    body = tm.DisjE(xi2, xi0, tm.DisjI(1, disj, xi1), xi2,
                    tm.Exploder(AA, xi0))
    return tm.ImplE(tm.ImplI(xi1, body), tm.Var("xi3", AA))


def pingpong_env():
    """f(x) = f₁(x, x) and f₁(x, x) = f(x): a two-step rewrite cycle."""
    env = tm.GroundEnv()
    env.register_op(tm.UserOpDecl("g", (), A))
    env.register_op(tm.UserOpDecl("f", (A,), A))
    env.register_op(tm.UserOpDecl("f1", (A, A), A))
    env.register_equation(tm.Equation(
        "f-dup", tm.UserOp("f", (tm.MetaVar("x"),)),
        tm.UserOp("f1", (tm.MetaVar("x"), tm.MetaVar("x"))), "f"))
    env.register_equation(tm.Equation(
        "f1-merge", tm.UserOp("f1", (tm.MetaVar("x"), tm.MetaVar("x"))),
        tm.UserOp("f", (tm.MetaVar("x"),)), "f1"))
    return env


def pingpong_term():
    return tm.UserOp("f", (tm.UserOp("g", ()),))


def convergent_pair():
    """A two-design closed net converging via 0, 0.1, and a daimon at 0.1.1.

    The left design carries an unused branch at 0.1.3; the right design
    an unexplored branch at 0.2.  Neither is visited.
    """
    left = positive((0,), {1: negative((0, 1), {
        (1,): daimon((0, 1, 1)),
        (3,): atomic_bomb((0, 1, 3)),
    })})
    right = negative((0,), {
        (1,): positive((0, 1), {1: negative((0, 1, 1), {
            (0,): daimon((0, 1, 1, 0))})}),
        (2,): positive((0, 2), {0: skunk((0, 2, 0))}),
    })
    return make_cutnet((left, right))


@pytest.fixture
def worked():
    return worked_term()


@pytest.fixture
def pingpong():
    return pingpong_env(), pingpong_term()
