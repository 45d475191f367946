import json

import pytest

from homnet import IONetwork, analyze, core_corpus


@pytest.fixture
def e8() -> IONetwork:
    """Six-node running example: three super-appendage nodes feeding a
    two-super-simple backbone."""
    return IONetwork(
        nodes=("iota", "sigma", "tau1", "tau2", "tau3", "o"),
        input="iota",
        output="o",
        arrows=frozenset(
            [
                ("tau1", "iota"),
                ("iota", "sigma"),
                ("tau2", "sigma"),
                ("sigma", "tau1"),
                ("tau3", "tau2"),
                ("o", "tau2"),
                ("o", "tau3"),
                ("iota", "o"),
                ("sigma", "o"),
            ]
        ),
    )


@pytest.fixture
def haldane() -> IONetwork:
    return IONetwork(
        nodes=("i", "o"), input="i", output="o", arrows=frozenset({("i", "o")})
    )


@pytest.fixture
def four_node() -> IONetwork:
    """One interior super-simple node with a private appendage loop."""
    return IONetwork(
        nodes=("i", "s", "o", "t"),
        input="i",
        output="o",
        arrows=frozenset([("i", "s"), ("s", "o"), ("s", "t"), ("t", "s")]),
    )


@pytest.fixture
def diamond() -> IONetwork:
    return IONetwork(
        nodes=("i", "a", "b", "o"),
        input="i",
        output="o",
        arrows=frozenset([("i", "a"), ("i", "b"), ("a", "o"), ("b", "o")]),
    )


@pytest.fixture
def e8_file(e8, tmp_path) -> str:
    path = tmp_path / "e8.json"
    path.write_text(
        json.dumps(
            {
                "nodes": list(e8.nodes),
                "input": e8.input,
                "output": e8.output,
                "arrows": sorted(list(a) for a in e8.arrows),
            }
        ),
        encoding="utf-8",
    )
    return str(path)


@pytest.fixture(scope="session")
def corpus():
    """200 seeded random core networks, 3..8 nodes."""
    return list(core_corpus(200))


@pytest.fixture(scope="session")
def corpus_analyses(corpus):
    return [(seed, net, analyze(net)) for seed, net in corpus]
