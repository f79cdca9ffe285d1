import itertools
import random

import pytest

from test_designs import random_design

from groundkit.designs import (
    DaimonLeaf, Design, FidLeaf, NegNode, Pitchfork, PosNode, atomic_bomb,
    contains_daimon, daimon, fid, negative, negative_sponge, positive, skunk,
    validate_design,
)
from groundkit.behaviours import (
    NotAMember, SizeLimitExceeded, UniverseBounds, behaviour, biorthogonal,
    classify_candidate, count_universe, dual_base, enumerate_universe,
    full_pool, incarnation_of, is_material, member_verdict, members,
    orthogonal_set,
)
from groundkit.interaction import Converged, make_cutnet, normalize_closed

XI = (0,)
POS = Pitchfork(None, frozenset({XI}))
NEG = Pitchfork(XI, frozenset())

TINY = UniverseBounds(1, ((),), POS)
SMALL = UniverseBounds(2, ((), (0,)), POS)
FULL2 = UniverseBounds(2, full_pool(1), POS)


class TestEnumeration:
    def test_tiny_universe(self):
        designs = set(enumerate_universe(TINY))
        assert designs == {daimon(XI), fid(XI), atomic_bomb(XI)}

    def test_count_oracle_small(self):
        assert count_universe(SMALL) == 12
        assert len(enumerate_universe(SMALL)) == 12

    def test_count_oracle_full_pool(self):
        assert count_universe(FULL2) == 6726
        assert count_universe(FULL2.at(NEG)) == 240
        assert len(enumerate_universe(FULL2)) == 6726
        assert len(enumerate_universe(FULL2.at(NEG))) == 240

    def test_enumerated_designs_validate(self):
        for d in enumerate_universe(SMALL):
            assert validate_design(d) == []
        for d in enumerate_universe(SMALL.at(NEG)):
            assert validate_design(d) == []

    def test_no_duplicates(self):
        designs = enumerate_universe(FULL2)
        assert len(designs) == len(set(designs))

    def test_size_cap(self):
        capped = UniverseBounds(3, full_pool(1), POS, cap=1000)
        with pytest.raises(SizeLimitExceeded):
            enumerate_universe(capped)


class TestOrthogonalSets:
    def test_bomb_orthogonal_is_single_responder(self):
        bounds = UniverseBounds(2, ((),), POS)
        orth = orthogonal_set([atomic_bomb(XI)], bounds)
        assert orth == {negative(XI, {(): daimon()})}

    def test_skunk_orthogonal_is_daimon(self):
        orth = orthogonal_set([skunk(XI)], SMALL.at(NEG))
        assert orth == {daimon(XI)}

    def test_daimon_orthogonal_is_all_negatives(self):
        orth = orthogonal_set([daimon(XI)], SMALL)
        universe = set(enumerate_universe(SMALL.at(NEG)))
        assert orth == universe
        assert skunk(XI).node in {d.node for d in orth}

    def test_antitonicity(self):
        e = [atomic_bomb(XI)]
        f = [atomic_bomb(XI), daimon(XI)]
        assert orthogonal_set(f, SMALL) <= orthogonal_set(e, SMALL)

    def test_fuel_warnings_sink(self):
        warnings = []
        orthogonal_set([atomic_bomb(XI)], SMALL, warnings=warnings)
        assert warnings == []


class TestBiorthogonal:
    def test_behaviour_one(self):
        closure = biorthogonal([atomic_bomb(XI)], SMALL)
        assert closure == {atomic_bomb(XI), daimon(XI)}

    def test_behaviour_zero(self):
        closure = biorthogonal([daimon(XI)], SMALL)
        assert closure == {daimon(XI)}

    def test_closure_inflationary(self):
        rng = random.Random(31)
        universe = enumerate_universe(SMALL)
        for _ in range(10):
            e = {d for d in universe if rng.random() < 0.3
                 and not isinstance(d.node, FidLeaf)}
            if not e:
                continue
            assert e <= biorthogonal(e, SMALL) | {d for d in e}

    def test_triple_orthogonal_law(self):
        rng = random.Random(33)
        universe = [d for d in enumerate_universe(SMALL)
                    if not isinstance(d.node, FidLeaf)]
        for _ in range(8):
            e = [d for d in universe if rng.random() < 0.25]
            if not e:
                continue
            lhs = orthogonal_set(biorthogonal(e, SMALL), SMALL)
            assert lhs == orthogonal_set(e, SMALL)


def behaviour_one(bounds=SMALL):
    return behaviour([atomic_bomb(XI)], bounds)


def behaviour_zero(bounds=SMALL):
    return behaviour([daimon(XI)], bounds)


def behaviour_top(bounds=SMALL):
    return behaviour([skunk(XI)], bounds.at(NEG))


class TestMembership:
    def test_one_members(self):
        b = behaviour_one()
        assert members(b) == {atomic_bomb(XI), daimon(XI)}

    def test_zero_members(self):
        assert members(behaviour_zero()) == {daimon(XI)}

    def test_top_members_are_all_negatives(self):
        b = behaviour_top()
        assert members(b) == set(enumerate_universe(SMALL.at(NEG)))

    def test_member_verdict(self):
        b = behaviour_one()
        assert member_verdict(atomic_bomb(XI), b) == "yes"
        assert member_verdict(fid(XI), b) == "no"


class TestIncarnation:
    def test_top_incarnations_are_skunk(self):
        b = behaviour_top()
        for d in members(b):
            inc = incarnation_of(d, b)
            assert inc.node == NegNode(XI, ())

    def test_bomb_material_in_one(self):
        b = behaviour_one()
        assert incarnation_of(atomic_bomb(XI), b) == atomic_bomb(XI)
        assert is_material(atomic_bomb(XI), b)

    def test_daimon_material(self):
        assert is_material(daimon(XI), behaviour_one())
        assert is_material(daimon(XI), behaviour_zero())

    def test_not_a_member(self):
        with pytest.raises(NotAMember):
            incarnation_of(fid(XI), behaviour_one())

    def test_idempotence(self):
        b = behaviour_top()
        for d in members(b):
            inc = incarnation_of(d, b)
            assert incarnation_of(inc, b) == inc

    def test_minimality_exhaustive(self):
        """No strict subdesign of an incarnation stays orthogonal to all
        cached counter-designs (tiny bounds, checked exhaustively)."""
        from groundkit.interaction import orthogonal
        from groundkit.designs import subdesign_order
        b = behaviour_one()
        universe = enumerate_universe(SMALL)
        for d in members(b):
            inc = incarnation_of(d, b)
            for cand in universe:
                if cand == inc or not subdesign_order(cand, inc):
                    continue
                assert any(orthogonal(cand, e) != "yes"
                           for e in b.cached_orthogonal)


class TestClassification:
    def test_bomb_is_ground_in_one(self):
        v = classify_candidate(atomic_bomb(XI), behaviour_one())
        assert v.tag == "Ground"

    def test_daimon_pseudo_in_one_and_zero(self):
        for b in (behaviour_one(), behaviour_zero()):
            v = classify_candidate(daimon(XI), b)
            assert (v.tag, v.reason) == ("PseudoGround", "contains-daimon")

    def test_wrong_base_not_in_behaviour(self):
        v = classify_candidate(skunk(XI), behaviour_one())
        assert v.tag == "NotInBehaviour"

    def test_fid_not_in_behaviour(self):
        v = classify_candidate(fid(XI), behaviour_one())
        assert v.tag == "NotInBehaviour"

    def test_daimon_free_immaterial_member(self):
        # a negative member of ⊤ with an unvisited branch: in, †-free,
        # but not equal to its incarnation (the skunk)
        b = behaviour_top()
        n = negative(XI, {(): fid()})
        v = classify_candidate(n, b)
        assert (v.tag, v.reason) == ("PseudoGround", "not-material")

    def test_ground_wins_every_interaction(self):
        b = behaviour_one()
        d = atomic_bomb(XI)
        assert classify_candidate(d, b).tag == "Ground"
        assert not contains_daimon(d)
        for e in b.cached_orthogonal:
            out = normalize_closed(make_cutnet((d, e)))
            assert isinstance(out, Converged)
            # the closing daimon cannot come from d, which is †-free
            assert out.trace[-1][0] == "†"


class TestDualBase:
    def test_roundtrip(self):
        assert dual_base(POS) == NEG
        assert dual_base(NEG) == POS

    def test_rejects_wide_bases(self):
        with pytest.raises(ValueError):
            dual_base(Pitchfork(None, frozenset({(0,), (1,)})))
