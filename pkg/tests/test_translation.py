import pytest

from groundkit import terms as tm
from groundkit.formulas import Absurd, Atom, Impl
from groundkit.designs import (
    Pitchfork, atomic_bomb, build_fax, daimon, delocate, fid, negative,
    skunk, validate_design,
)
from groundkit.behaviours import UniverseBounds, behaviour
from groundkit.interaction import make_cutnet
from groundkit.translate import (
    TranslationEnv, TranslationError, arrow, arrow_member_verdict,
    check_translation, classify_arrow_candidate, free_incarnation,
    normalize_open, pair_orthogonal, translate,
)

P = Atom("P")
BOUNDS = UniverseBounds(2, ((), (0,)), Pitchfork(None, frozenset({(9,)})))
HOME = (9,)


def env_with(formula, generator):
    b = behaviour([generator], BOUNDS.at(Pitchfork(None, frozenset({HOME}))))
    return TranslationEnv({formula: b}, BOUNDS, fax_arity=0)


def zero_env():
    return env_with(Absurd(), daimon(HOME))


def one_env():
    return env_with(P, atomic_bomb(HOME))


def copycat(ty):
    x = tm.Var("x", ty)
    return tm.ImplI(x, x)


class TestNormalizeOpen:
    def test_fax_against_daimon_gives_daimon_at_codomain(self):
        fx = build_fax((0, 0), (0, 1), 2, 0)
        out = normalize_open(make_cutnet((daimon((0, 0)), fx)))
        assert out == daimon((0, 1))

    def test_fax_against_bomb_gives_bomb_at_codomain(self):
        fx = build_fax((0, 0), (0, 1), 2, 0)
        out = normalize_open(make_cutnet((atomic_bomb((0, 0)), fx)))
        assert out == atomic_bomb((0, 1))

    def test_main_thread_divergence_is_none(self):
        d = negative((0, 0), {(): fid((0, 1))}, extra=[(0, 1)])
        out = normalize_open(make_cutnet((atomic_bomb((0, 0)), d)))
        assert out is None

    def test_negative_base_rejected(self):
        with pytest.raises(TranslationError):
            normalize_open(make_cutnet((skunk((0,)),)))

    def test_open_results_validate(self):
        fx = build_fax((0, 0), (0, 1), 2, 1)
        out = normalize_open(make_cutnet((atomic_bomb((0, 0)), fx)))
        assert validate_design(out) == []


class TestFreeIncarnation:
    def test_zero_has_none(self):
        env = zero_env()
        assert free_incarnation(env.atoms[Absurd()]) == frozenset()

    def test_one_is_the_bomb(self):
        env = one_env()
        assert free_incarnation(env.atoms[P]) == {atomic_bomb(HOME)}


class TestTranslate:
    def test_copycat_is_fax(self):
        env = zero_env()
        d = translate(copycat(Absurd()), env, root=(0,))
        assert d == build_fax((0, 0), (0, 1), env.fax_depth(), 0)

    def test_constant_is_first_free_member(self):
        env = one_env()
        d = translate(tm.Const("c", P), env, root=(0,))
        assert d == atomic_bomb((0, 0))

    def test_application_of_copycat(self):
        env = one_env()
        t = tm.ImplE(copycat(P), tm.Const("c", P))
        d = translate(t, env, root=(0,))
        assert d == atomic_bomb((0, 1))

    def test_nonlinear_rejected(self):
        env = one_env()
        x = tm.Var("x", P)
        for bad in (tm.ImplI(x, tm.ConjI(x, x)),
                    tm.ImplI(x, tm.Const("c", P))):
            with pytest.raises(TranslationError) as e:
                translate(bad, env)
            assert e.value.kind in ("nonlinear-term",
                                    "unsupported-constructor")

    def test_nonlinear_corpus_rejected(self):
        env = one_env()
        x, y = tm.Var("x", P), tm.Var("y", Impl(P, P))
        duplicating = [
            tm.ImplI(x, tm.ImplE(tm.ImplI(tm.Var("z", P), x), x)),
            tm.ImplI(y, tm.ImplE(y, tm.ImplE(y, tm.Const("c", P)))),
        ]
        for bad in duplicating:
            assert not tm.is_linear(bad)
            with pytest.raises(TranslationError) as e:
                translate(bad, env)
            assert e.value.kind == "nonlinear-term"

    def test_outside_fragment_rejected(self):
        env = one_env()
        with pytest.raises(TranslationError) as e:
            translate(tm.ConjI(tm.Const("c", P), tm.Const("c", P)), env)
        assert e.value.kind == "unsupported-constructor"

    def test_open_term_rejected(self):
        env = one_env()
        with pytest.raises(TranslationError):
            translate(tm.Var("x", P), env)

    def test_diverged_application(self):
        # the behaviour for P generated by a sponge whose only †-free
        # material member opens ramification {0}; the copycat at arity 0
        # has no matching branch, so the application cut diverges
        env = env_with(P, positive_with_zero_branch())
        t = tm.ImplE(copycat(P), tm.Const("c", P))
        with pytest.raises(TranslationError) as e:
            translate(t, env, root=(0,))
        assert e.value.kind in ("diverged-application",
                                "unsupported-constructor")


def positive_with_zero_branch():
    from groundkit.designs import positive, child
    inner = negative((9, 0), {(): daimon()})
    return positive(HOME, {0: inner})


class TestArrow:
    def test_arrow_zero_zero_contains_fax(self):
        env = zero_env()
        bA = env.behaviour_at(Absurd(), (0, 0))
        bB = env.behaviour_at(Absurd(), (0, 1))
        ab = arrow(bA, bB, BOUNDS)
        fx = build_fax((0, 0), (0, 1), 2, 0)
        # vacuous domain: the defining set is the whole bounded universe
        # (the fax itself is deeper than the bound, so it only enters via
        # the counter-test verdict)
        from groundkit.behaviours import enumerate_universe
        assert ab.generators == frozenset(
            enumerate_universe(BOUNDS.at(ab.base)))
        assert fx not in ab.generators
        assert arrow_member_verdict(fx, ab) == "yes"

    def test_vacuous_domain_pairs_are_daimon_led(self):
        # fid is in the defining set, so the only pairs orthogonal to
        # everything are those whose left component ends the game at once
        env = zero_env()
        bA = env.behaviour_at(Absurd(), (0, 0))
        bB = env.behaviour_at(Absurd(), (0, 1))
        ab = arrow(bA, bB, BOUNDS)
        assert ab.cached_orthogonal
        assert all(a == daimon((0, 0)) for a, _ in ab.cached_orthogonal)

    def test_fax_classification_protocol_in_zero_zero(self):
        """Member of 0 → 0, †-free, but not material under the literal
        incarnation: the documented verdict is PseudoGround(not-material),
        while its cut against 0's Daimon is a material member of 0."""
        env = zero_env()
        bA = env.behaviour_at(Absurd(), (0, 0))
        bB = env.behaviour_at(Absurd(), (0, 1))
        ab = arrow(bA, bB, BOUNDS)
        fx = translate(copycat(Absurd()), env, root=(0,))
        v = classify_arrow_candidate(fx, ab)
        assert (v.tag, v.reason) == ("PseudoGround", "not-material")
        # ... and the interaction side of the protocol:
        out = normalize_open(make_cutnet((daimon((0, 0)), fx)))
        assert out == daimon((0, 1))
        from groundkit.behaviours import classify_candidate
        v2 = classify_candidate(delocate(out, (0, 1), HOME),
                                env.atoms[Absurd()])
        assert (v2.tag, v2.reason) == ("PseudoGround", "contains-daimon")
        from groundkit.behaviours import is_material
        assert is_material(delocate(out, (0, 1), HOME), env.atoms[Absurd()])

    def test_arrow_one_one_maps_bomb_to_bomb(self):
        env = one_env()
        bA = env.behaviour_at(P, (0, 0))
        bB = env.behaviour_at(P, (0, 1))
        ab = arrow(bA, bB, BOUNDS)
        fx = build_fax((0, 0), (0, 1), 1, 0)
        assert len(ab.generators) == 5
        assert len(ab.cached_orthogonal) == 16
        assert arrow_member_verdict(fx, ab) == "yes"
        out = normalize_open(make_cutnet((atomic_bomb((0, 0)), fx)))
        assert out in free_incarnation(bB)

    def test_pair_orthogonality(self):
        fx = build_fax((0, 0), (0, 1), 1, 0)
        a = atomic_bomb((0, 0))
        b = negative((0, 1), {(): daimon()})
        assert pair_orthogonal(a, fx, b) == "yes"
        assert pair_orthogonal(a, fx, skunk((0, 1))) == "no"


class TestCheckTranslation:
    def test_atomic_result_is_ground(self):
        env = one_env()
        t = tm.ImplE(copycat(P), tm.Const("c", P))
        d = translate(t, env, root=(0,))
        v = check_translation(t, d, env, root=(0,))
        assert v.tag == "Ground"

    def test_daimon_is_pseudo(self):
        env = one_env()
        t = tm.Const("c", P)
        v = check_translation(t, daimon((0, 0)), env, root=(0,))
        assert (v.tag, v.reason) == ("PseudoGround", "contains-daimon")

    def test_fid_fails(self):
        env = one_env()
        t = tm.Const("c", P)
        v = check_translation(t, fid((0, 0)), env, root=(0,))
        assert v.tag == "NotInBehaviour"

    def test_copycat_per_protocol(self):
        env = zero_env()
        t = copycat(Absurd())
        d = translate(t, env, root=(0,))
        v = check_translation(t, d, env, root=(0,))
        assert (v.tag, v.reason) == ("PseudoGround", "not-material")


class TestDelocatedBehaviours:
    def test_behaviour_at_preserves_membership(self):
        env = one_env()
        b = env.behaviour_at(P, (5,))
        assert b.base == Pitchfork(None, frozenset({(5,)}))
        from groundkit.behaviours import members
        assert members(b) == {atomic_bomb((5,)), daimon((5,))}
