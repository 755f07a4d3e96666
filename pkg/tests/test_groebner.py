import itertools
import random

import pytest

from koszul_lab.chains import chain_compare, Chain
from koszul_lab.groebner import (
    build_quadratic_basis,
    monomial,
    monomial_compare,
    multidegree,
    normal_form,
    verify_groebner,
)
from koszul_lab.lattice import make_gamma

import oracles

GROEBNER_CASES = [
    (2, 2, (1, 1)), (3, 2, (0, 1, 1)), (2, 4, (1, 3)), (3, 4, (0, 1, 3)), (2, 5, (1, 4)),
    (2, 4, None), (3, 3, None),
]


def brute_min_monomial(cfg, m):
    """Least a-free chain to sum(m), by enumerating link sequences over Gamma."""
    chains = oracles.all_chains(list(cfg.generators), multidegree(m))
    return tuple(sorted(min(chains)))


# -- monomial order -----------------------------------------------------------

def test_monomial_compare_examples():
    assert monomial_compare([(0, 4), (0, 4), (3, 1)], [(1, 3), (1, 3), (1, 3)]) == -1
    m = [(0, 4), (1, 3)]
    assert monomial_compare(m, m) == 0
    # z < x <= y < t with z + t = x + y
    assert monomial_compare([(0, 4), (4, 0)], [(2, 2), (2, 2)]) == -1
    with pytest.raises(ValueError):
        monomial_compare([(0, 4)], [(0, 4), (4, 0)])


def test_monomial_compare_is_grevlex():
    # grevlex with x_alpha > x_beta iff alpha > beta: compare exponent vectors,
    # the monomial with the larger exponent on the smallest variable is smaller.
    cfg = make_gamma(3, 3, (1, 1, 1))
    G = list(cfg.generators)

    def grevlex(m1, m2):
        e1 = [m1.count(g) for g in G]
        e2 = [m2.count(g) for g in G]
        for x, y in zip(e1, e2):  # smallest variable first
            if x != y:
                return -1 if x > y else 1
        return 0

    monos = list(itertools.combinations_with_replacement(G, 3))
    for m1, m2 in itertools.product(monos[::3], monos[::5]):
        assert monomial_compare(m1, m2) == grevlex(list(m1), list(m2))


@pytest.mark.parametrize("n,d,a", [(3, 3, (1, 1, 1)), (2, 4, (2, 2)), (3, 2, (0, 1, 1))])
def test_monomial_compare_matches_chain_compare(n, d, a):
    cfg = make_gamma(n, d, a)
    for k in (2, 3):
        monos = list(itertools.combinations_with_replacement(cfg.generators, k))
        by_degree = {}
        for m in monos:
            by_degree.setdefault(multidegree(m), []).append(m)
        for group in by_degree.values():
            for m1, m2 in itertools.combinations(group, 2):
                c1 = Chain.from_links(m1, puncture=a)
                c2 = Chain.from_links(m2, puncture=a)
                assert monomial_compare(m1, m2) == chain_compare(c1, c2)


# -- rules --------------------------------------------------------------------

def test_rule_examples():
    assert build_quadratic_basis(make_gamma(2, 2, (1, 1))) == []
    rules = build_quadratic_basis(make_gamma(2, 4, (1, 3)))
    assert [(r.lhs, r.rhs) for r in rules] == [
        (((2, 2), (2, 2)), ((0, 4), (4, 0))),
        (((3, 1), (3, 1)), ((2, 2), (4, 0))),
    ]
    lhs = {r.lhs for r in build_quadratic_basis(make_gamma(3, 3, (1, 1, 1)))}
    assert ((0, 1, 2), (1, 0, 2)) not in lhs


@pytest.mark.parametrize("n,d,a", GROEBNER_CASES + [(3, 3, (1, 1, 1)), (2, 4, (2, 2))])
def test_rules_decrease_and_conserve(n, d, a):
    cfg = make_gamma(n, d, a)
    rules = build_quadratic_basis(cfg)
    for r in rules:
        assert multidegree(r.lhs) == multidegree(r.rhs)
        assert monomial_compare(r.rhs, r.lhs) == -1
        assert all(p in cfg.generators for p in r.rhs)
        assert r.rhs == brute_min_monomial(cfg, r.lhs)
    # pairs without a rule are exactly the minimal ones
    for pair in itertools.combinations_with_replacement(cfg.generators, 2):
        has_rule = any(r.lhs == pair for r in rules)
        assert has_rule == (brute_min_monomial(cfg, pair) != pair)


def test_rules_sorted_by_lhs():
    rules = build_quadratic_basis(make_gamma(3, 4, (0, 1, 3)))
    assert [r.lhs for r in rules] == sorted(r.lhs for r in rules)
    assert len(rules) == 61


# -- normal forms -------------------------------------------------------------

def test_normal_form_examples():
    cfg = make_gamma(3, 3, (1, 1, 1))
    rules = build_quadratic_basis(cfg)
    m = ((0, 1, 2), (1, 0, 2), (3, 0, 0))
    assert normal_form(m, rules) == (m, [])
    assert normal_form([(2, 1, 0)], rules) == (((2, 1, 0),), [])
    rules = build_quadratic_basis(make_gamma(2, 4, (1, 3)))
    nf, trace = normal_form([(2, 2), (2, 2)], rules)
    assert nf == ((0, 4), (4, 0)) and len(trace) == 1


@pytest.mark.parametrize("n,d,a", GROEBNER_CASES)
def test_groebner_instances(n, d, a):
    rep = verify_groebner(make_gamma(n, d, a))
    assert rep.is_groebner and rep.counterexamples == []
    assert rep.cubics_checked == oracles.binom_count(len(rep.cfg.generators), 3)


@pytest.mark.parametrize("n,d,a", [(2, 4, (1, 3)), (3, 4, (0, 1, 3)), (3, 3, None), (3, 2, (0, 1, 1))])
def test_confluence_under_random_orders(n, d, a):
    cfg = make_gamma(n, d, a)
    rules = build_quadratic_basis(cfg)
    rng = random.Random(20261014)
    cubics = list(itertools.combinations_with_replacement(cfg.generators, 3))
    for m in rng.sample(cubics, min(60, len(cubics))):
        want, _ = normal_form(m, rules)
        assert want == brute_min_monomial(cfg, m)
        for _ in range(5):
            assert normal_form(m, rules, rng=rng)[0] == want
    quartics = list(itertools.combinations_with_replacement(cfg.generators, 4))
    for m in rng.sample(quartics, min(30, len(quartics))):
        results = {normal_form(m, rules, rng=rng)[0] for _ in range(4)}
        assert len(results) == 1


def test_trace_steps_descend():
    cfg = make_gamma(3, 4, (0, 1, 3))
    rules = build_quadratic_basis(cfg)
    for m in list(itertools.combinations_with_replacement(cfg.generators, 3))[::7]:
        nf, trace = normal_form(m, rules)
        seq = [before for before, _ in trace] + [nf]
        assert all(monomial_compare(y, x) == -1 for x, y in zip(seq, seq[1:]))


def test_remark_counterexample():
    rep = verify_groebner(make_gamma(3, 3, (1, 1, 1)))
    assert not rep.is_groebner
    cubics = {c.cubic: c for c in rep.counterexamples}
    key = ((0, 1, 2), (1, 0, 2), (3, 0, 0))
    assert key in cubics
    assert cubics[key].minimal == ((0, 0, 3), (2, 0, 1), (2, 1, 0))
    assert cubics[key].normal_form == key
    d = cubics[key].as_dict()
    assert d["minimal"] == [[0, 0, 3], [2, 0, 1], [2, 1, 0]]


def test_monomial_helper_sorts():
    assert monomial([(3, 0), (0, 3)]) == ((0, 3), (3, 0))
