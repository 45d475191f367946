"""Decomposition into structural and appendage subnetworks.

A structural subnetwork spans the region between two consecutive
super-simple nodes: the bounding pair, the simple nodes strictly between
them, and the linked appendage nodes (appendage nodes sharing a
super-simple-free cycle with that simple core).  An appendage subnetwork
is one strongly connected component of the super-appendage nodes.

Each subnetwork owns one square diagonal block of the determinant of the
homeostasis matrix (the Jacobian with the input row and output column
deleted); block_index_sets gives the row/column node sets of that block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .classify import NodeClassification, non_super_simple_sccs
from .network import (
    InvariantError,
    IONetwork,
    NetworkError,
    strongly_connected_components,
    subgraph_successors,
)


@dataclass(frozen=True)
class StructuralSubnetwork:
    index: int  # j, 1-based position between rho_{j-1} and rho_j
    rho_prev: str
    rho_next: str
    simple_core: frozenset[str]
    linked_appendage: frozenset[str]

    @cached_property
    def all_nodes(self) -> frozenset[str]:
        return self.simple_core | self.linked_appendage | {self.rho_prev, self.rho_next}

    @property
    def augmented_core(self) -> frozenset[str]:
        # the subnetwork's interior: what this block contributes to a pattern
        return self.simple_core | self.linked_appendage

    @property
    def is_haldane(self) -> bool:
        return not self.simple_core and not self.linked_appendage

    @property
    def label(self) -> str:
        return "L%d" % self.index


@dataclass(frozen=True)
class AppendageSubnetwork:
    index: int  # 1-based, ordered by smallest member node
    nodes: frozenset[str]

    @property
    def label(self) -> str:
        return "A%d" % self.index


HomeostasisSubnetwork = Union[StructuralSubnetwork, AppendageSubnetwork]


@dataclass(frozen=True)
class BlockIndexSets:
    row_nodes: frozenset[str]
    col_nodes: frozenset[str]


def structural_subnetworks(
    net: IONetwork, cls: NodeClassification
) -> list[StructuralSubnetwork]:
    """One subnetwork per consecutive super-simple pair, in chain order."""
    cores: dict[int, set[str]] = {j: set() for j in range(1, cls.interval_count + 1)}
    for sigma, j in cls.interval_index.items():
        cores[j].add(sigma)

    # a linked appendage node shares an SCC (super-simple nodes removed)
    # with simple nodes of exactly one interval
    linked: dict[int, set[str]] = {j: set() for j in cores}
    assigned: set[str] = set()
    for comp in non_super_simple_sccs(net, cls):
        comp_simple = comp & cls.simple
        if not comp_simple:
            continue
        intervals = {cls.interval_index[s] for s in comp_simple}
        if len(intervals) != 1:
            raise InvariantError(
                "component %s spans simple nodes of several intervals" % sorted(comp)
            )
        j = intervals.pop()
        tau_set = comp & cls.appendage
        linked[j] |= tau_set
        assigned |= tau_set

    not_super = cls.appendage - cls.super_appendage
    if assigned != not_super:
        raise InvariantError(
            "linked appendage nodes %s do not cover the non-super-appendage set %s"
            % (sorted(assigned), sorted(not_super))
        )

    result = []
    for j in range(1, cls.interval_count + 1):
        result.append(
            StructuralSubnetwork(
                index=j,
                rho_prev=cls.super_simple[j - 1],
                rho_next=cls.super_simple[j],
                simple_core=frozenset(cores[j]),
                linked_appendage=frozenset(linked[j]),
            )
        )
    return result


def appendage_subnetworks(
    net: IONetwork, cls: NodeClassification
) -> list[AppendageSubnetwork]:
    """SCCs of the induced subgraph on super-appendage nodes."""
    succ = subgraph_successors(net, cls.super_appendage)
    order = tuple(n for n in net.nodes if n in cls.super_appendage)
    comps = strongly_connected_components(order, succ)
    return [AppendageSubnetwork(index=i + 1, nodes=c) for i, c in enumerate(comps)]


def decompose(
    net: IONetwork, cls: NodeClassification
) -> tuple[list[StructuralSubnetwork], list[AppendageSubnetwork]]:
    structs = structural_subnetworks(net, cls)
    apps = appendage_subnetworks(net, cls)
    _check_partition(net, cls, structs, apps)
    return structs, apps


def _check_partition(net, cls, structs, apps) -> None:
    # every node: a super-simple node, or in exactly one simple core,
    # linked set, or appendage subnetwork
    counted: list[str] = list(cls.super_simple)
    for s in structs:
        counted.extend(s.simple_core)
        counted.extend(s.linked_appendage)
    for a in apps:
        counted.extend(a.nodes)
    if sorted(counted) != sorted(net.nodes):
        raise InvariantError(
            "decomposition does not partition the node set: %s vs %s"
            % (sorted(counted), sorted(net.nodes))
        )


def block_index_sets(net: IONetwork, K: HomeostasisSubnetwork) -> BlockIndexSets:
    """Row/column node sets of the determinant block owned by K."""
    declared = set(net.nodes)
    if isinstance(K, AppendageSubnetwork):
        if not K.nodes <= declared:
            raise NetworkError("subnetwork %s is foreign to this network" % sorted(K.nodes))
        return BlockIndexSets(row_nodes=K.nodes, col_nodes=K.nodes)
    if isinstance(K, StructuralSubnetwork):
        if not K.all_nodes <= declared:
            raise NetworkError("subnetwork %s is foreign to this network" % sorted(K.all_nodes))
        return BlockIndexSets(
            row_nodes=K.all_nodes - {K.rho_prev},
            col_nodes=K.all_nodes - {K.rho_next},
        )
    raise NetworkError("unknown subnetwork kind %r" % type(K).__name__)
