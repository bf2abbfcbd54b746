import doctest
import functools
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import agegossip.analytics
import agegossip.model
from agegossip.model import (EMPTY_SUMMARY, INFINITE_AGE, PacketState, Params, SetSummary,
                             merge, set_summary)

packets = st.builds(PacketState, st.integers(0, 1), st.integers(0, 50))
gaps = st.integers(0, 20)


@pytest.mark.parametrize("module", [agegossip.model, agegossip.analytics])
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0


class TestParams:
    def test_paper_rates(self):
        p = Params(n=50, lambda_e=2, lambda_r=1, lambda_u=5, lambda_g=0.1, gap=3)
        assert p.reliable_link_rate == pytest.approx(1 / 50)
        assert p.unreliable_link_rate == pytest.approx(5 / 50)
        assert p.gossip_link_rate == pytest.approx(0.1 / 49)

    def test_single_node_has_no_gossip_links(self):
        p = Params(n=1, lambda_e=2, lambda_r=1, lambda_u=5, lambda_g=0.1)
        with pytest.raises(ValueError):
            p.gossip_link_rate

    @pytest.mark.parametrize("kwargs", [
        dict(n=0),
        dict(lambda_e=0),
        dict(lambda_r=0),
        dict(lambda_r=-1),
        dict(lambda_u=-0.1),
        dict(lambda_g=-0.1),
        dict(gap=-1),
        dict(gap=1.5),
        dict(n=2.0),
    ])
    def test_rejects_invalid(self, kwargs):
        base = dict(n=3, lambda_e=2, lambda_r=1, lambda_u=5, lambda_g=0.1, gap=0)
        base.update(kwargs)
        with pytest.raises(ValueError):
            Params(**base)

    def test_zero_unreliable_and_gossip_allowed(self):
        Params(n=3, lambda_e=2, lambda_r=1, lambda_u=0, lambda_g=0)


class TestInfiniteAge:
    def test_orders_above_all_ints(self):
        assert INFINITE_AGE > 10**18
        assert 0 < INFINITE_AGE
        assert not INFINITE_AGE < 3
        assert INFINITE_AGE == INFINITE_AGE
        assert INFINITE_AGE != 10**18

    def test_no_arithmetic(self):
        with pytest.raises(TypeError):
            INFINITE_AGE + 1


class TestSetSummary:
    def test_reliable_within_gap(self):
        assert set_summary([PacketState(0, 3), PacketState(1, 1)], 2) == (0, 3)

    def test_empty(self):
        s = set_summary([], 2)
        assert s == EMPTY_SUMMARY
        assert s.is_empty
        assert s.reliability is None
        assert s.age is INFINITE_AGE

    def test_unreliable_beyond_gap(self):
        assert set_summary([PacketState(0, 4), PacketState(1, 1)], 2) == (1, 1)

    def test_single_reliability_takes_min(self):
        assert set_summary([PacketState(1, 7), PacketState(1, 2)], 0) == (1, 2)
        assert set_summary([PacketState(0, 7), PacketState(0, 2)], 0) == (0, 2)

    def test_gap_zero_tie_goes_to_reliable(self):
        assert set_summary([PacketState(1, 4), PacketState(0, 4)], 0) == (0, 4)
        assert merge(PacketState(1, 4), PacketState(0, 4), 0) == (0, 4)
        assert merge(PacketState(0, 4), PacketState(1, 4), 0) == (0, 4)


class TestMerge:
    def test_reliable_incoming_within_gap(self):
        assert merge(PacketState(1, 1), PacketState(0, 3), 2) == (0, 3)

    def test_same_reliability_keeps_fresher(self):
        assert merge(PacketState(0, 2), PacketState(0, 5), 0) == (0, 2)

    def test_reliable_dropped_beyond_gap(self):
        assert merge(PacketState(0, 4), PacketState(1, 1), 2) == (1, 1)

    def test_tie_keeps_own(self):
        own, incoming = PacketState(0, 3), PacketState(0, 3)
        assert merge(own, incoming, 1) is own

    @given(packets, gaps)
    def test_idempotent(self, p, g):
        assert merge(p, p, g) == p

    @given(packets, packets, gaps)
    def test_commutative(self, p, q, g):
        assert merge(p, q, g) == merge(q, p, g)

    @given(packets, packets, gaps)
    def test_same_reliability_is_min(self, p, q, g):
        q = PacketState(p.reliability, q.age)
        assert merge(p, q, g).age == min(p.age, q.age)

    @given(packets, packets, gaps)
    def test_matches_set_summary(self, p, q, g):
        assert tuple(merge(p, q, g)) == tuple(set_summary([p, q], g))


def _fold(items, gap):
    return functools.reduce(lambda own, inc: merge(own, inc, gap), items)


def test_fold_of_merge_equals_set_summary_exhaustive():
    # every list of length 1..4, ages 0..6, both reliabilities, gap 0..3
    universe = [PacketState(r, a) for r in (0, 1) for a in range(7)]
    checked = 0
    for gap in range(4):
        for length in range(1, 5):
            for items in itertools.product(universe, repeat=length):
                assert tuple(_fold(items, gap)) == tuple(set_summary(items, gap))
                checked += 1
    assert checked == 4 * sum(14 ** L for L in range(1, 5))


@given(st.lists(packets, min_size=1, max_size=8), gaps, st.randoms())
def test_summary_is_order_free(items, gap, rnd):
    shuffled = list(items)
    rnd.shuffle(shuffled)
    assert set_summary(shuffled, gap) == set_summary(items, gap)
    assert tuple(_fold(shuffled, gap)) == tuple(set_summary(items, gap))


def test_summary_is_named():
    s = set_summary([PacketState(0, 1)], 0)
    assert isinstance(s, SetSummary)
    assert not s.is_empty
