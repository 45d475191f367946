"""Homeostasis pattern network construction.

The pattern network condenses a core input-output network: the backbone
chain alternates super-simple nodes with one backbone node per structural
subnetwork, and each appendage subnetwork becomes one appendage
component.  Components connect to the backbone through a unique vmax
arrow (to the most-downstream backbone node receiving an appendage path
from the component) and a unique vmin arrow (from the most-upstream
backbone node sending one into it).

An appendage path is a simple path whose interior nodes are all appendage
and which carries at least one appendage node overall; a path endpoint
inside a structural subnetwork counts toward that subnetwork's backbone
node, and a super-simple endpoint counts as itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .classify import NodeClassification
from .network import InvariantError, IONetwork, NetworkError
from .subnetworks import AppendageSubnetwork, StructuralSubnetwork


@dataclass(frozen=True)
class SuperSimpleNode:
    name: str

    @property
    def label(self) -> str:
        return self.name


@dataclass(frozen=True)
class BackboneNode:
    j: int

    @property
    def label(self) -> str:
        return "L~%d" % self.j


@dataclass(frozen=True)
class AppendageComponentNode:
    index: int
    nodes: frozenset[str]

    @property
    def label(self) -> str:
        return "A~%d" % self.index


PatternNode = Union[SuperSimpleNode, BackboneNode, AppendageComponentNode]
BackboneElement = Union[SuperSimpleNode, BackboneNode]


@dataclass(frozen=True)
class PatternNetwork:
    net: IONetwork
    backbone: tuple[BackboneElement, ...]
    components: tuple[AppendageComponentNode, ...]
    component_arrows: frozenset[tuple[int, int]]  # (from index, to index)
    vmax: dict[int, BackboneElement]  # component index -> backbone element
    vmin: dict[int, BackboneElement]
    chain_pos: dict[BackboneElement, int]
    node_map: dict[str, PatternNode]
    contents: dict[PatternNode, frozenset[str]]

    def pattern_nodes(self) -> list[PatternNode]:
        return list(self.backbone) + list(self.components)

    def component_by_index(self, index: int) -> AppendageComponentNode:
        return self.components[index - 1]

    def successors(self) -> dict[PatternNode, tuple[PatternNode, ...]]:
        """Arrow map of the pattern network itself (chain, component
        arrows, vmax arrows out of components, vmin arrows into them)."""
        succ: dict[PatternNode, list[PatternNode]] = {
            p: [] for p in self.pattern_nodes()
        }
        for a, b in zip(self.backbone, self.backbone[1:]):
            succ[a].append(b)
        for i, k in sorted(self.component_arrows):
            succ[self.component_by_index(i)].append(self.component_by_index(k))
        for i in sorted(self.vmax):
            succ[self.component_by_index(i)].append(self.vmax[i])
        for i in sorted(self.vmin):
            succ[self.vmin[i]].append(self.component_by_index(i))
        return {p: tuple(s) for p, s in succ.items()}


def pattern_node_of(pnet: PatternNetwork, node: str) -> PatternNode:
    if node not in pnet.node_map:
        raise NetworkError("unknown node %r" % node)
    return pnet.node_map[node]


def build_pattern_network(
    net: IONetwork,
    cls: NodeClassification,
    structs: list[StructuralSubnetwork],
    apps: list[AppendageSubnetwork],
) -> PatternNetwork:
    backbone: list[BackboneElement] = [SuperSimpleNode(cls.super_simple[0])]
    for s in structs:
        backbone.append(BackboneNode(s.index))
        backbone.append(SuperSimpleNode(s.rho_next))
    chain_pos = {elem: pos for pos, elem in enumerate(backbone)}

    components = tuple(
        AppendageComponentNode(index=a.index, nodes=a.nodes) for a in apps
    )

    node_map: dict[str, PatternNode] = {}
    for rho in cls.super_simple:
        node_map[rho] = SuperSimpleNode(rho)
    for s in structs:
        for n in s.simple_core | s.linked_appendage:
            node_map[n] = BackboneNode(s.index)
    for comp in components:
        for n in comp.nodes:
            node_map[n] = comp

    contents: dict[PatternNode, frozenset[str]] = {}
    for elem in backbone:
        if isinstance(elem, SuperSimpleNode):
            contents[elem] = frozenset({elem.name})
        else:
            s = structs[elem.j - 1]
            contents[elem] = s.augmented_core
    for comp in components:
        contents[comp] = comp.nodes

    comp_of: dict[str, int] = {}
    for comp in components:
        for n in comp.nodes:
            comp_of[n] = comp.index
    component_arrows = frozenset(
        (comp_of[t], comp_of[h])
        for t, h in net.arrows
        if t in comp_of and h in comp_of and comp_of[t] != comp_of[h]
    )

    vmax: dict[int, BackboneElement] = {}
    vmin: dict[int, BackboneElement] = {}
    for comp in components:
        vmax[comp.index] = extreme_backbone_contact(
            net, cls, node_map, chain_pos, comp.nodes, comp.label, downstream=True
        )
        vmin[comp.index] = extreme_backbone_contact(
            net, cls, node_map, chain_pos, comp.nodes, comp.label, downstream=False
        )
        pmax = chain_pos[vmax[comp.index]]
        pmin = chain_pos[vmin[comp.index]]
        if pmax > pmin or (
            pmax == pmin and not isinstance(vmax[comp.index], SuperSimpleNode)
        ):
            raise InvariantError(
                "component %s has vmax %s after vmin %s"
                % (comp.label, vmax[comp.index].label, vmin[comp.index].label)
            )

    return PatternNetwork(
        net=net,
        backbone=tuple(backbone),
        components=components,
        component_arrows=component_arrows,
        vmax=vmax,
        vmin=vmin,
        chain_pos=chain_pos,
        node_map=node_map,
        contents=contents,
    )


def extreme_backbone_contact(
    net: IONetwork,
    cls: NodeClassification,
    node_map: dict[str, PatternNode],
    chain_pos: dict[BackboneElement, int],
    seed_nodes: frozenset[str],
    label: str,
    downstream: bool,
) -> BackboneElement:
    """Most-downstream or most-upstream backbone node joined to the given
    appendage node set by an appendage path.

    Reachability inside the appendage-node subgraph stands in for the
    path search: a walk reduces to a simple path on a node subset, and
    interior nodes stay appendage either way.
    """
    appendage = cls.appendage
    adj = net.successors if downstream else net.predecessors

    closure: set[str] = set(seed_nodes)
    stack = sorted(seed_nodes)
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt in appendage and nxt not in closure:
                closure.add(nxt)
                stack.append(nxt)

    candidates: set[BackboneElement] = set()
    for tau in closure:
        for nxt in adj[tau]:
            if nxt in cls.simple:
                target = node_map[nxt]
                assert isinstance(target, (SuperSimpleNode, BackboneNode))
                candidates.add(target)
        if tau not in seed_nodes:
            # a linked appendage node reached through appendage territory is
            # itself a valid endpoint, counting toward its backbone node
            target = node_map[tau]
            if isinstance(target, BackboneNode):
                candidates.add(target)

    if not candidates:
        raise InvariantError(
            "%s has no %s backbone contact"
            % (label, "downstream" if downstream else "upstream")
        )
    key = lambda elem: chain_pos[elem]
    return max(candidates, key=key) if downstream else min(candidates, key=key)


def pattern_to_dot(pnet: PatternNetwork) -> str:
    lines = ["digraph pattern {", "  rankdir=LR;"]
    lines.append("  { rank=same;")
    for elem in pnet.backbone:
        shape = "doublecircle" if isinstance(elem, SuperSimpleNode) else "box"
        lines.append('    "%s" [shape=%s];' % (elem.label, shape))
    lines.append("  }")
    for comp in pnet.components:
        lines.append(
            '  "%s" [shape=ellipse, style=dashed, members="%s"];'
            % (comp.label, ",".join(sorted(comp.nodes)))
        )
    for a, b in zip(pnet.backbone, pnet.backbone[1:]):
        lines.append('  "%s" -> "%s";' % (a.label, b.label))
    for i, k in sorted(pnet.component_arrows):
        lines.append(
            '  "%s" -> "%s";'
            % (pnet.component_by_index(i).label, pnet.component_by_index(k).label)
        )
    for i in sorted(pnet.vmax):
        lines.append(
            '  "%s" -> "%s" [style=dotted, kind="vmax"];'
            % (pnet.component_by_index(i).label, pnet.vmax[i].label)
        )
    for i in sorted(pnet.vmin):
        lines.append(
            '  "%s" -> "%s" [style=dotted, kind="vmin"];'
            % (pnet.vmin[i].label, pnet.component_by_index(i).label)
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
