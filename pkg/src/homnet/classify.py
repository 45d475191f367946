"""Node classification for core input-output networks.

Every node is either *simple* (lies on at least one input-output simple
path) or *appendage* (lies on none).  A simple node lying on every such
path is *super-simple*; the super-simple nodes are totally ordered by
their position on any path.  An appendage node is *super-appendage* when,
for every input-output simple path S, its strongly connected component in
the graph induced on the nodes off S contains only appendage nodes.

Two routes to the super-appendage set ship side by side: the literal
per-path definition (classify_nodes) and the single-SCC shortcut
(fast_super_appendage, remove all super-simple nodes and check components
for simple members).  Tests assert they agree; both stay available.
"""

from __future__ import annotations

from dataclasses import dataclass

from .network import (
    InvariantError,
    IONetwork,
    NetworkError,
    PathExplosion,
    require_core,
    strongly_connected_components,
    subgraph_successors,
)

DEFAULT_PATH_CAP = 100000

# chain positions: super-simple rho_i sits at 2*i, a simple node strictly
# between rho_{j-1} and rho_j sits at 2*j - 1; positions order the
# backbone and make every simple node comparable to every super-simple one
STRICTLY_PRECEDES = "strictly-precedes"
EQUAL_SUPER_SIMPLE = "equal-super-simple"
SAME_SIMPLE_SUBNETWORK = "same-simple-subnetwork"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class PreceqVerdict:
    """Answer to the ordered query "does a precede-or-equal b?".

    relation is one of the four module constants; `holds` is True for all
    relations except incomparable (which covers both reverse order and
    genuine incomparability).
    """

    relation: str

    @property
    def holds(self) -> bool:
        return self.relation != INCOMPARABLE


@dataclass(frozen=True)
class NodeClassification:
    simple: frozenset[str]
    super_simple: tuple[str, ...]
    appendage: frozenset[str]
    super_appendage: frozenset[str]
    io_paths: tuple[tuple[str, ...], ...]
    interval_index: dict[str, int]
    chain_position: dict[str, int]

    @property
    def interval_count(self) -> int:
        # q+1 intervals between q+2 super-simple nodes
        return len(self.super_simple) - 1


def enumerate_io_simple_paths(
    net: IONetwork, cap: int = DEFAULT_PATH_CAP
) -> list[tuple[str, ...]]:
    """All simple paths from the input node to the output node.

    Deterministic depth-first order with lexicographic successor
    exploration.  Raises PathExplosion when more than `cap` paths exist.
    """
    require_core(net)
    return simple_paths_between(net, net.input, net.output, cap)


def simple_paths_between(
    net: IONetwork, source: str, target: str, cap: int = DEFAULT_PATH_CAP
) -> list[tuple[str, ...]]:
    """All simple paths from `source` to `target`, same determinism and
    cap contract as enumerate_io_simple_paths; no core precondition."""
    for x in (source, target):
        if x not in net.nodes:
            raise NetworkError("unknown node %r" % x)
    if source == target:
        raise NetworkError("source equals target")
    paths: list[tuple[str, ...]] = []
    path = [source]
    on_path = {source}
    iters = [iter(net.successors[source])]
    while iters:
        try:
            nxt = next(iters[-1])
        except StopIteration:
            iters.pop()
            on_path.discard(path.pop())
            continue
        if nxt == target:
            if len(paths) >= cap:
                raise PathExplosion(
                    "more than %d input-output simple paths" % cap
                )
            paths.append(tuple(path) + (target,))
            continue
        if nxt in on_path:
            continue
        path.append(nxt)
        on_path.add(nxt)
        iters.append(iter(net.successors[nxt]))
    return paths


def classify_nodes(net: IONetwork, cap: int = DEFAULT_PATH_CAP) -> NodeClassification:
    """Classify every node; reference (per-path) super-appendage route."""
    paths = enumerate_io_simple_paths(net, cap)
    return _classify_from_paths(net, paths)


def _classify_from_paths(
    net: IONetwork, paths: list[tuple[str, ...]]
) -> NodeClassification:
    all_nodes = frozenset(net.nodes)
    simple = frozenset().union(*map(frozenset, paths))
    appendage = all_nodes - simple

    common = set(paths[0])
    for p in paths[1:]:
        common &= set(p)
    super_simple = tuple(n for n in paths[0] if n in common)

    # same relative order on every path; a violation is a bug, not bad input
    rank = {n: i for i, n in enumerate(super_simple)}
    for p in paths:
        seen = [rank[n] for n in p if n in rank]
        if seen != sorted(seen):
            raise InvariantError("super-simple order differs between paths")

    # interval of a simple node = number of super-simple nodes before it
    # on any path through it; must be path-independent
    interval_index: dict[str, int] = {}
    for p in paths:
        count = 0
        for n in p:
            if n in rank:
                count += 1
            else:
                j = count  # rho_{j-1} was the last super-simple seen
                prev = interval_index.get(n)
                if prev is None:
                    interval_index[n] = j
                elif prev != j:
                    raise InvariantError(
                        "simple node %r sits in two different intervals" % n
                    )

    chain_position: dict[str, int] = {}
    for i, rho in enumerate(super_simple):
        chain_position[rho] = 2 * i
    for n, j in interval_index.items():
        chain_position[n] = 2 * j - 1

    # literal definition: tau is super-appendage iff for every path S the
    # strongly connected component of tau off S contains only appendage nodes
    super_appendage = set(appendage)
    seen_complements: set[frozenset[str]] = set()
    for S in paths:
        if not super_appendage:
            break
        complement = all_nodes - set(S)
        if complement in seen_complements:
            continue
        seen_complements.add(complement)
        succ = subgraph_successors(net, complement)
        order = tuple(n for n in net.nodes if n in complement)
        for comp in strongly_connected_components(order, succ):
            if comp & simple:
                super_appendage -= comp

    return NodeClassification(
        simple=simple,
        super_simple=super_simple,
        appendage=appendage,
        super_appendage=frozenset(super_appendage),
        io_paths=tuple(paths),
        interval_index=interval_index,
        chain_position=chain_position,
    )


def non_super_simple_sccs(
    net: IONetwork, cls: NodeClassification
) -> list[frozenset[str]]:
    """SCCs of the graph with all super-simple nodes removed."""
    allowed = frozenset(net.nodes) - set(cls.super_simple)
    succ = subgraph_successors(net, allowed)
    order = tuple(n for n in net.nodes if n in allowed)
    return strongly_connected_components(order, succ)


def fast_super_appendage(net: IONetwork, cls: NodeClassification) -> frozenset[str]:
    """Shortcut route: appendage node whose SCC, after deleting all
    super-simple nodes, contains no simple node."""
    result: set[str] = set()
    for comp in non_super_simple_sccs(net, cls):
        if not comp & cls.simple:
            result |= comp & cls.appendage
    return frozenset(result)


def preceq(cls: NodeClassification, a: str, b: str) -> PreceqVerdict:
    """Order verdict for two simple nodes (see PreceqVerdict)."""
    for x in (a, b):
        if x not in cls.simple:
            raise NetworkError("node %r is not simple" % x)
    ss = set(cls.super_simple)
    if a == b:
        if a in ss:
            return PreceqVerdict(EQUAL_SUPER_SIMPLE)
        return PreceqVerdict(SAME_SIMPLE_SUBNETWORK)
    pa, pb = cls.chain_position[a], cls.chain_position[b]
    if a not in ss and b not in ss and cls.interval_index[a] == cls.interval_index[b]:
        return PreceqVerdict(SAME_SIMPLE_SUBNETWORK)
    if pa < pb:
        return PreceqVerdict(STRICTLY_PRECEDES)
    return PreceqVerdict(INCOMPARABLE)
