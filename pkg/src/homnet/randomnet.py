"""Seeded random input-output networks for corpus testing.

Each seed fully determines one candidate network: node count uniform in
3..8, one arrow-density draw in [0.15, 0.5], then a Bernoulli draw per
ordered node pair.  Node n0 is the input, the last node is the output.
Candidates whose nodes are not all on input-to-output routes are
discarded by the corpus walker, never repaired.
"""

from __future__ import annotations

import random
from typing import Iterator

from .classify import PathExplosion, enumerate_io_simple_paths
from .network import IONetwork, validate_core

CORPUS_PATH_CAP = 2000


def random_network(seed: int) -> IONetwork:
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    nodes = tuple("n%d" % i for i in range(n))
    density = rng.uniform(0.15, 0.5)
    arrows = set()
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                arrows.add((nodes[i], nodes[j]))
    return IONetwork(
        nodes=nodes, input=nodes[0], output=nodes[-1], arrows=frozenset(arrows)
    )


def core_corpus(count: int, start_seed: int = 0) -> Iterator[tuple[int, IONetwork]]:
    """Walk consecutive seeds, yielding the first `count` candidates whose
    core check passes and whose simple-path count stays under the corpus
    cap."""
    seed = start_seed
    produced = 0
    while produced < count:
        net = random_network(seed)
        if validate_core(net).is_core:
            try:
                enumerate_io_simple_paths(net, cap=CORPUS_PATH_CAP)
            except PathExplosion:
                seed += 1
                continue
            yield seed, net
            produced += 1
        seed += 1
