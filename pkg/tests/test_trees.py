"""Tree membership, bounded searches, certificates, rank, characteristic."""

import random
from fractions import Fraction

import pytest

from oracles import brute_tree_rank
from wctree.enumeration import seq_decode
from wctree.errors import ConfigurationError
from wctree.sets import hilbert_cube, unit_vector_family, unit_vector_hull
from wctree.spaces import L1, L2, Vector
from wctree.trees import (BRANCH_FOUND, WELL_FOUNDED, ExplicitFiniteTree,
                          SearchBudget, StackedTree, WcTree, bounded_wf_search,
                          branch_search, children, encode_characteristic,
                          finite_rank, rank_within, scale_section, subtree_at,
                          validate_certificate)

F = Fraction


def family_tree(eps="3/5", big_m="2"):
    return WcTree(unit_vector_family(L2), F(eps), F(big_m))


def test_parameter_validation():
    fam = unit_vector_family(L2)
    with pytest.raises(ConfigurationError):
        WcTree(fam, F(0), F(2))
    with pytest.raises(ConfigurationError):
        WcTree(fam, F(3, 2), F(2))
    with pytest.raises(ConfigurationError):
        WcTree(fam, F(1, 2), F(1, 2))


def test_root_always_belongs():
    assert family_tree().member(()).verdict.holds


def test_node_evaluation_combines_predicates():
    tree = family_tree()
    # two orthonormal vectors: min norm 1/sqrt(2) > 3/5, constant 1 <= 2
    ev = tree.member((0, 1))
    assert ev.verdict.holds
    assert ev.domination is not None and ev.schauder is not None
    # three orthonormal: min norm 1/sqrt(3) < 3/5 -> domination fails
    ev = tree.member((0, 1, 2))
    assert ev.verdict.fails
    assert ev.domination.fails


def test_repeated_index_fails_prefix_boundedness():
    tree = family_tree()
    ev = tree.member((0, 0))
    assert ev.verdict.fails
    assert ev.schauder is not None and ev.schauder.unbounded


def test_membership_is_monotone_in_parameters():
    fam = unit_vector_family(L2)
    rng = random.Random(3)
    for _ in range(40):
        node = tuple(rng.sample(range(6), rng.randint(1, 3)))
        eps = F(rng.randint(1, 10), 10)
        big_m = F(rng.randint(1, 3))
        stricter = WcTree(fam, eps, big_m).member(node).verdict
        weaker = WcTree(fam, eps / 2, big_m * 2).member(node).verdict
        if stricter.holds:
            assert weaker.holds


def test_stacked_tree_sections_delegate():
    fam = unit_vector_family(L2)
    stacked = StackedTree(fam)
    assert stacked.member(()).verdict.holds
    for n in range(4):
        section = WcTree(fam, F(1, n + 1), F(n + 1))
        for node in [(0,), (0, 1), (0, 1, 2), (2, 4)]:
            assert stacked.member((n,) + node).verdict.kind == \
                section.member(node).verdict.kind
    assert scale_section(fam, 3).eps == F(1, 4)


def test_wf_search_verdict_and_counts():
    verdict = bounded_wf_search(family_tree(), 4, 16)
    assert verdict.kind == WELL_FOUNDED
    assert verdict.branch is None
    assert verdict.stats.fails > 0 and verdict.stats.inconclusive == 0


def test_wf_search_finds_lex_least_branch():
    tree = WcTree(unit_vector_hull(L1), F(1), F(1))
    verdict = bounded_wf_search(tree, 3, 16)
    assert verdict.kind == BRANCH_FOUND
    assert verdict.branch == (0, 4, 8)  # unit vectors sit at multiples of 4


def test_wf_search_budget_exhaustion_is_inconclusive():
    tree = WcTree(unit_vector_hull(L1), F(1), F(1))
    verdict = bounded_wf_search(tree, 5, 24, SearchBudget(10))
    assert verdict.kind not in (WELL_FOUNDED,)
    assert verdict.stats.exhausted


def test_branch_search_certificate_roundtrip():
    tree = WcTree(unit_vector_hull(L1), F(1), F(1))
    cert = branch_search(tree, 5, 24, beam_width=3)
    assert cert is not None
    assert cert.depth == 5
    assert cert.generator == ("affine", 4, 0)
    assert [p.kind for p in cert.prefixes] == ["holds"] * 5
    assert cert.min_margin == 0.0
    assert validate_certificate(tree, cert)
    # certificates do not survive being replayed against a stricter tree
    colder = WcTree(unit_vector_family(L2), F(3, 5), F(2))
    assert not validate_certificate(colder, cert)


def test_branch_search_returns_none_when_tree_dies():
    tree = WcTree(hilbert_cube(L2), F(7, 10), F(2))
    assert branch_search(tree, 1, 32) is None


def test_children_evaluates_extensions():
    tree = family_tree()
    kids = children(tree, (0,), 4)
    assert [i for i, ev in kids if ev.verdict.holds] == [1, 2, 3]  # (0,0) repeats


def test_explicit_tree_requires_prefix_closure():
    with pytest.raises(ConfigurationError):
        ExplicitFiniteTree([(0, 1)])
    tree = ExplicitFiniteTree([(0,), (0, 1), (2,)])
    assert tree.member((0, 1)).verdict.holds
    assert tree.member((1,)).verdict.fails


def test_finite_rank_matches_brute_recursion():
    rng = random.Random(23)
    for _ in range(60):
        nodes = {()}
        for _ in range(rng.randint(0, 12)):
            parent = rng.choice(sorted(nodes))
            if len(parent) < 4:
                nodes.add(parent + (rng.randint(0, 3),))
        tree = ExplicitFiniteTree(nodes)
        assert finite_rank(tree) == brute_tree_rank(tree.nodes)


def test_rank_within_on_live_tree():
    rank, complete = rank_within(family_tree(), 4, 16)
    assert rank == 2  # pairs hold, triples all fail
    assert complete

    # only e0 and e1 are selected below index 8, so the region is shallow
    rank, complete = rank_within(WcTree(unit_vector_hull(L1), F(1), F(1)), 3, 8)
    assert (rank, complete) == (2, True)
    # raising the bound to reach e2 saturates the probe depth instead
    rank, complete = rank_within(WcTree(unit_vector_hull(L1), F(1), F(1)), 3, 10)
    assert (rank, complete) == (3, False)


def test_subtree_view_shifts_root():
    tree = family_tree()
    sub = subtree_at(tree, (0,))
    assert sub.member((1,)).verdict.kind == tree.member((0, 1)).verdict.kind


def test_characteristic_bits_follow_canonical_coding():
    tree = family_tree()
    bits, open_idx = encode_characteristic(tree, 24)
    assert len(bits) == 24 and not open_idx
    for i, ch in enumerate(bits):
        node = seq_decode(i)
        want = "1" if tree.member(node).verdict.holds else "0"
        assert ch == want
