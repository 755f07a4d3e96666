import itertools
import pickle
import threading

import pytest
from hypothesis import given, settings, strategies as st

from koszul_lab.lattice import (
    Classification,
    MembershipTable,
    classify,
    dominated,
    enumerate_points,
    is_two_full,
    make_gamma,
    semigroup_level,
    semigroup_member,
)

import oracles


# -- enumerate_points ---------------------------------------------------------

def test_points_small():
    assert enumerate_points(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(enumerate_points(3, 3)) == 10
    assert enumerate_points(2, 4) == [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]


def test_points_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_points(0, 3)
    with pytest.raises(ValueError):
        enumerate_points(2, -1)


@pytest.mark.parametrize(
    "n,d",
    [(n, d) for n in range(1, 7) for d in range(0, 12) if oracles.binom_count(n, d) <= 200],
)
def test_points_cardinality_and_order(n, d):
    pts = enumerate_points(n, d)
    assert len(pts) == oracles.binom_count(n, d)
    assert all(p < q for p, q in zip(pts, pts[1:]))
    assert pts == oracles.points(n, d)


# -- dominated ----------------------------------------------------------------

def test_dominated_examples():
    assert dominated((0, 1, 2), (1, 1, 3))
    assert not dominated((2, 0), (1, 5))
    assert dominated((4, 4), (4, 4))
    with pytest.raises(ValueError):
        dominated((1,), (1, 2))


@given(st.lists(st.integers(0, 5), min_size=1, max_size=4), st.data())
def test_dominated_matches_definition(a, data):
    b = data.draw(st.lists(st.integers(0, 5), min_size=len(a), max_size=len(a)))
    assert dominated(a, b) == all(x <= y for x, y in zip(a, b))


# -- make_gamma and classify --------------------------------------------------

def test_make_gamma_examples():
    cfg = make_gamma(3, 3, (1, 1, 1))
    assert len(cfg.generators) == 9
    assert cfg.classification is Classification.TWO_FULL_GOOD
    cfg = make_gamma(2, 4, (2, 2))
    assert len(cfg.generators) == 4
    assert cfg.classification is Classification.NON_KOSZUL_EXCEPTION
    assert make_gamma(3, 4, (0, 1, 3)).classification is Classification.NOT_TWO_FULL


def test_make_gamma_errors():
    for args in [(1, 3, None), (3, 1, None), (2, 3, (1, 1)), (2, 3, (1, 1, 1)), (2, 3, (-1, 4))]:
        with pytest.raises(ValueError):
            make_gamma(*args)


def test_full_veronese_is_its_own_class():
    cfg = make_gamma(3, 3)
    assert cfg.puncture is None
    assert cfg.classification is Classification.FULL_VERONESE
    assert len(cfg.generators) == 10


def test_d3_boundary_case():
    # (0,1,2) is a rearrangement of (0,2,1); the exception wins for d = 3.
    assert classify(3, 3, (0, 1, 2)) is Classification.NON_KOSZUL_EXCEPTION
    assert classify(3, 3, (2, 0, 1)) is Classification.NON_KOSZUL_EXCEPTION
    assert classify(3, 3, (0, 0, 3)) is Classification.VERONESE_POINT
    assert classify(3, 5, (0, 1, 4)) is Classification.NOT_TWO_FULL
    assert classify(3, 5, (0, 2, 3)) is Classification.NON_KOSZUL_EXCEPTION
    assert classify(3, 5, (1, 1, 3)) is Classification.TWO_FULL_GOOD


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 3)])
def test_generators_invariant(n, d):
    for a in oracles.points(n, d):
        cfg = make_gamma(n, d, a)
        assert list(cfg.generators) == oracles.gens(n, d, a)
        assert len(cfg.generators) == oracles.binom_count(n, d) - 1


def test_unsorted_puncture_is_flagged():
    cfg = make_gamma(3, 3, (2, 1, 0))
    assert not cfg.puncture_was_sorted
    assert cfg.sorted_puncture == (0, 1, 2)
    assert make_gamma(3, 3, (0, 1, 2)).puncture_was_sorted


# -- membership ---------------------------------------------------------------

def test_membership_examples():
    assert not semigroup_member(make_gamma(2, 2, (1, 1)), (1, 3))
    assert not semigroup_member(make_gamma(2, 4, (1, 3)), (1, 7))
    assert semigroup_member(make_gamma(2, 4, (1, 3)), (0, 0))
    assert not semigroup_member(make_gamma(2, 4, (1, 3)), (1, 2))


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)])
def test_full_veronese_membership_is_saturated(n, d):
    cfg = make_gamma(n, d)
    for k in range(0, 5):
        for lam in oracles.points(n, k * d):
            assert semigroup_member(cfg, lam)
        # off-level points are never members
        for lam in oracles.points(n, k * d + 1):
            assert not semigroup_member(cfg, lam)


@pytest.mark.parametrize("n,d", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_membership_matches_bruteforce(n, d):
    for a in oracles.points(n, d):
        cfg = make_gamma(n, d, a)
        G = oracles.gens(n, d, a)
        for k in range(0, 4):
            members = oracles.semigroup_level(G, k, n)
            assert set(semigroup_level(cfg, k)) == members
            for lam in oracles.points(n, k * d):
                assert semigroup_member(cfg, lam) == (lam in members)


@pytest.mark.parametrize("n,d", [(2, 4), (2, 5), (3, 4), (2, 6), (3, 5)])
def test_not_two_full_unique_gap(n, d):
    a = (0,) * (n - 2) + (1, d - 1)
    cfg = make_gamma(n, d, a)
    assert cfg.classification is Classification.NOT_TWO_FULL
    G = oracles.gens(n, d, a)
    for k in range(1, 5):
        if k * d > 16:
            break
        members = oracles.semigroup_level(G, k, n)
        gaps = [p for p in oracles.points(n, k * d) if p not in members]
        assert gaps == [(0,) * (n - 2) + (1, k * d - 1)]


def test_level_helper():
    cfg = make_gamma(2, 4, (2, 2))
    assert cfg.level((3, 9)) == 3
    assert cfg.level((3, 8)) is None


def test_membership_table_threadsafe_and_picklable():
    cfg = make_gamma(3, 3, (1, 1, 1))
    table = MembershipTable()
    lams = [lam for k in range(4) for lam in oracles.points(3, 3 * k)]
    expected = {lam: semigroup_member(cfg, lam) for lam in lams}
    results = []

    def worker(order):
        results.append({lam: semigroup_member(cfg, lam, table) for lam in order})

    threads = [threading.Thread(target=worker, args=(lams[i:] + lams[:i],)) for i in range(0, 40, 5)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)
    clone = pickle.loads(pickle.dumps(table))
    assert len(clone) == len(table)
    assert all(clone.get(k) == table.get(k) for k in expected)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 3), (2, 4), (3, 3)]), st.data())
def test_membership_property(nd, data):
    n, d = nd
    a = data.draw(st.sampled_from(oracles.points(n, d)))
    k = data.draw(st.integers(1, 3))
    lam = data.draw(st.sampled_from(oracles.points(n, k * d)))
    cfg = make_gamma(n, d, a)
    assert semigroup_member(cfg, lam) == oracles.member(oracles.gens(n, d, a), lam, d)


# -- 2-fullness ---------------------------------------------------------------

def test_two_full_examples():
    assert is_two_full(make_gamma(3, 3, (1, 1, 1))) == (True, [])
    assert is_two_full(make_gamma(3, 3, (0, 1, 2))) == (False, [(0, 1, 5)])
    # (1,7) = (0,4)+(1,3) is also lost, alongside (0,8) = (0,4)+(0,4).
    assert is_two_full(make_gamma(2, 4, (0, 4))) == (False, [(0, 8), (1, 7)])


@pytest.mark.parametrize("n,d", [(2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3)])
def test_two_full_classification(n, d):
    for a in oracles.points(n, d):
        cfg = make_gamma(n, d, a)
        full, missing = is_two_full(cfg)
        G = oracles.gens(n, d, a)
        sums = {oracles.vadd(x, y) for x, y in itertools.combinations_with_replacement(G, 2)}
        assert missing == [p for p in oracles.points(n, 2 * d) if p not in sums]
        assert full == (tuple(sorted(a)) not in oracles.sorted_special(n, d))
