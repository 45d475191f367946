import pytest

from homnet import NetworkError, classify_nodes, enumerate_io_simple_paths, fast_super_appendage, preceq
from homnet.classify import (
    EQUAL_SUPER_SIMPLE,
    INCOMPARABLE,
    SAME_SIMPLE_SUBNETWORK,
    STRICTLY_PRECEDES,
    simple_paths_between,
)
from homnet.network import PathExplosion


def test_e8_classes(e8):
    cls = classify_nodes(e8)
    assert cls.simple == frozenset({"iota", "sigma", "o"})
    assert cls.super_simple == ("iota", "o")
    assert cls.appendage == frozenset({"tau1", "tau2", "tau3"})
    assert cls.super_appendage == frozenset({"tau1", "tau2", "tau3"})


def test_e8_chain_positions(e8):
    cls = classify_nodes(e8)
    assert cls.chain_position == {"iota": 0, "sigma": 1, "o": 2}
    assert cls.interval_index == {"sigma": 1}


def test_haldane_classes(haldane):
    cls = classify_nodes(haldane)
    assert cls.simple == frozenset({"i", "o"})
    assert cls.super_simple == ("i", "o")
    assert cls.appendage == frozenset()
    assert cls.super_appendage == frozenset()


def test_four_node_appendage_is_super(four_node):
    # t's strongly connected company away from the backbone is just
    # itself, so it is super-appendage even though it talks to s
    cls = classify_nodes(four_node)
    assert cls.super_simple == ("i", "s", "o")
    assert cls.appendage == frozenset({"t"})
    assert cls.super_appendage == frozenset({"t"})
    assert cls.chain_position == {"i": 0, "s": 2, "o": 4}


def test_diamond_same_interval(diamond):
    cls = classify_nodes(diamond)
    assert cls.simple == frozenset({"i", "a", "b", "o"})
    assert cls.super_simple == ("i", "o")
    assert cls.interval_index == {"a": 1, "b": 1}
    assert cls.chain_position["a"] == cls.chain_position["b"] == 1


def test_path_enumeration_counts(e8, diamond):
    assert len(enumerate_io_simple_paths(diamond)) == 2
    paths = enumerate_io_simple_paths(e8)
    assert sorted(paths) == [("iota", "o"), ("iota", "sigma", "o")]


def test_path_cap_enforced(diamond):
    with pytest.raises(PathExplosion):
        enumerate_io_simple_paths(diamond, cap=1)
    assert len(enumerate_io_simple_paths(diamond, cap=2)) == 2


def test_paths_between_arbitrary_nodes(e8):
    paths = simple_paths_between(e8, "iota", "sigma", 1000)
    assert set(paths) == {
        ("iota", "sigma"),
        ("iota", "o", "tau2", "sigma"),
        ("iota", "o", "tau3", "tau2", "sigma"),
    }
    with pytest.raises(NetworkError):
        simple_paths_between(e8, "iota", "iota", 1000)
    with pytest.raises(NetworkError):
        simple_paths_between(e8, "nope", "o", 1000)


def test_preceq_verdicts(diamond, e8):
    dia = classify_nodes(diamond)
    assert preceq(dia, "i", "a").relation == STRICTLY_PRECEDES
    assert preceq(dia, "i", "a").holds
    assert preceq(dia, "a", "o").relation == STRICTLY_PRECEDES
    assert preceq(dia, "i", "i").relation == EQUAL_SUPER_SIMPLE
    assert preceq(dia, "a", "b").relation == SAME_SIMPLE_SUBNETWORK
    assert preceq(dia, "a", "b").holds
    assert preceq(dia, "o", "a").relation == INCOMPARABLE
    assert not preceq(dia, "o", "a").holds

    cls = classify_nodes(e8)
    assert preceq(cls, "iota", "sigma").relation == STRICTLY_PRECEDES
    assert preceq(cls, "sigma", "o").relation == STRICTLY_PRECEDES
    assert preceq(cls, "sigma", "sigma").relation == SAME_SIMPLE_SUBNETWORK


def test_preceq_rejects_non_simple(e8):
    cls = classify_nodes(e8)
    with pytest.raises(NetworkError):
        preceq(cls, "tau1", "o")


def test_fast_super_appendage_matches(e8, four_node, diamond, haldane):
    for net in (e8, four_node, diamond, haldane):
        cls = classify_nodes(net)
        assert fast_super_appendage(net, cls) == cls.super_appendage


def test_classification_partitions_nodes(e8, four_node, diamond):
    for net in (e8, four_node, diamond):
        cls = classify_nodes(net)
        assert cls.simple | cls.appendage == frozenset(net.nodes)
        assert not cls.simple & cls.appendage
        assert frozenset(cls.super_simple) <= cls.simple
        assert cls.super_appendage <= cls.appendage
