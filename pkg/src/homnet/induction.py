"""Homeostasis induction: which nodes a vanishing block forces to be
homeostatic.

Two independent engines answer "does subnetwork K induce node kappa":

A. The theorem engine works on the pattern network.  A backbone source
   induces everything strictly downstream on the chain and every
   appendage component whose vmin lies strictly downstream.  An appendage
   source induces super-simple nodes at or after its vmax (at, only when
   vmax is itself super-simple), backbone nodes strictly after its vmax,
   and another component exactly when some pattern-network path connects
   them and every such path crosses a super-simple node inside the
   [vmax(source), vmin(target)] window.

B. The reposition engine re-analyzes the same graph with kappa as the
   output node and asks whether K reappears verbatim among the
   homeostasis subnetworks there.

The two must agree wherever both are defined; the comparison is part of
the shipped test surface, not a debugging aid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import (
    DEFAULT_PATH_CAP,
    NodeClassification,
    classify_nodes,
    simple_paths_between,
)
from .network import (
    InputIsOutputError,
    InvariantError,
    IONetwork,
    NetworkError,
    NonCoreError,
    PathExplosion,
    require_core,
    validate_core,
)
from .pattern import (
    AppendageComponentNode,
    BackboneElement,
    BackboneNode,
    PatternNetwork,
    PatternNode,
    SuperSimpleNode,
    build_pattern_network,
    extreme_backbone_contact,
)
from .subnetworks import (
    AppendageSubnetwork,
    HomeostasisSubnetwork,
    StructuralSubnetwork,
    decompose,
)


@dataclass(frozen=True)
class Analysis:
    """One network's full decomposition, computed once and shared."""

    net: IONetwork
    cls: NodeClassification
    structs: list[StructuralSubnetwork]
    apps: list[AppendageSubnetwork]
    pnet: PatternNetwork

    @property
    def subnetworks(self) -> list[HomeostasisSubnetwork]:
        return list(self.structs) + list(self.apps)


def analyze(net: IONetwork, cap: int = DEFAULT_PATH_CAP) -> Analysis:
    require_core(net)
    cls = classify_nodes(net, cap)
    structs, apps = decompose(net, cls)
    pnet = build_pattern_network(net, cls, structs, apps)
    return Analysis(net=net, cls=cls, structs=structs, apps=apps, pnet=pnet)


def source_node_of(an: Analysis, K: HomeostasisSubnetwork) -> PatternNode:
    """The pattern-network node associated with a homeostasis subnetwork."""
    if isinstance(K, StructuralSubnetwork):
        return BackboneNode(K.index)
    if isinstance(K, AppendageSubnetwork):
        for comp in an.pnet.components:
            if comp.nodes == K.nodes:
                return comp
        raise NetworkError("appendage subnetwork %s not in this network" % sorted(K.nodes))
    raise NetworkError("unknown subnetwork kind %r" % type(K).__name__)


def induces_theorem(
    pnet: PatternNetwork, source: PatternNode, target: PatternNode
) -> bool:
    """Theorem-engine induction verdict between two pattern nodes."""
    if isinstance(source, SuperSimpleNode):
        raise NetworkError(
            "super-simple node %s is not a homeostasis source" % source.label
        )
    pos = pnet.chain_pos
    if isinstance(source, BackboneNode):
        p = pos[source]
        if isinstance(target, (SuperSimpleNode, BackboneNode)):
            return pos[target] > p
        return pos[pnet.vmin[target.index]] > p

    # appendage source
    vmax = pnet.vmax[source.index]
    vpos = pos[vmax]
    if isinstance(target, SuperSimpleNode):
        if isinstance(vmax, SuperSimpleNode):
            return pos[target] >= vpos
        return pos[target] > vpos
    if isinstance(target, BackboneNode):
        return pos[target] > vpos
    if target == source:
        return False
    return _appendage_to_appendage(pnet, source, target)


def _appendage_to_appendage(
    pnet: PatternNetwork,
    source: AppendageComponentNode,
    target: AppendageComponentNode,
) -> bool:
    """True iff a pattern-network path source->target exists and every
    simple such path carries a super-simple node in the window
    [vmax(source), vmin(target)].

    Checking simple paths suffices: any walk reduces to a simple path on
    a subset of its nodes, so a window node found on the reduction is on
    the walk too.
    """
    pos = pnet.chain_pos
    lo = pos[pnet.vmax[source.index]]
    hi = pos[pnet.vmin[target.index]]
    succ = pnet.successors()

    found_any = False
    path: list[PatternNode] = [source]
    on_path: set[PatternNode] = {source}
    iters = [iter(succ[source])]
    while iters:
        try:
            nxt = next(iters[-1])
        except StopIteration:
            iters.pop()
            on_path.discard(path.pop())
            continue
        if nxt == target:
            found_any = True
            ok = any(
                isinstance(p, SuperSimpleNode) and lo <= pos[p] <= hi
                for p in path
            )
            if not ok:
                return False
            continue
        if nxt in on_path:
            continue
        path.append(nxt)
        on_path.add(nxt)
        iters.append(iter(succ[nxt]))
    return found_any


def theorem_pattern(an: Analysis, K: HomeostasisSubnetwork) -> frozenset[str]:
    """All nodes forced homeostatic when K's block determinant vanishes."""
    source = source_node_of(an, K)
    induced: set[str] = {an.net.output}
    for target in an.pnet.pattern_nodes():
        if target == source:
            continue
        if induces_theorem(an.pnet, source, target):
            induced |= an.pnet.contents[target]
    return frozenset(induced)


def homeostasis_pattern(
    net: IONetwork, K: HomeostasisSubnetwork, cap: int = DEFAULT_PATH_CAP
) -> frozenset[str]:
    return theorem_pattern(analyze(net, cap), K)


def all_patterns(
    net: IONetwork, cap: int = DEFAULT_PATH_CAP, an: Analysis | None = None
) -> dict[HomeostasisSubnetwork, frozenset[str]]:
    """One pattern per homeostasis subnetwork; patterns must be pairwise
    distinct (a repeat is an internal failure, not a data condition)."""
    if an is None:
        an = analyze(net, cap)
    result: dict[HomeostasisSubnetwork, frozenset[str]] = {}
    for K in an.subnetworks:
        result[K] = theorem_pattern(an, K)
    values = list(result.values())
    for i in range(len(values)):
        for k in range(i + 1, len(values)):
            if values[i] == values[k]:
                raise InvariantError(
                    "two homeostasis types share the pattern %s" % sorted(values[i])
                )
    return result


# ---------------------------------------------------------------------------
# engine B: output repositioning


def reposition(net: IONetwork, kappa: str) -> IONetwork:
    """The same graph viewed with kappa as its output node."""
    if kappa == net.input:
        raise InputIsOutputError(
            "repositioning the output onto the input node is out of scope"
        )
    return net.with_output(kappa)


def induces_reposition(
    net: IONetwork,
    K: HomeostasisSubnetwork,
    kappa: str,
    cap: int = DEFAULT_PATH_CAP,
) -> bool:
    """Reposition-engine verdict: does K survive verbatim as a
    homeostasis subnetwork once kappa is the output node?

    Raises NonCoreError when the repositioned network is not core (some
    node no longer reaches the new output); the caller decides how to
    treat those cases.
    """
    if kappa not in net.nodes:
        raise NetworkError("unknown node %r" % kappa)
    if kappa == net.output:
        return True
    gk = reposition(net, kappa)
    require_core(gk)
    cls = classify_nodes(gk, cap)
    structs, apps = decompose(gk, cls)
    if isinstance(K, StructuralSubnetwork):
        return any(
            s.rho_prev == K.rho_prev
            and s.rho_next == K.rho_next
            and s.simple_core == K.simple_core
            and s.linked_appendage == K.linked_appendage
            for s in structs
        )
    return any(a.nodes == K.nodes for a in apps)


@dataclass
class EngineComparison:
    checked: int = 0
    disagreements: list[tuple[str, str, bool, bool]] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def agreed(self) -> bool:
        return not self.disagreements


def compare_engines(net: IONetwork, cap: int = DEFAULT_PATH_CAP) -> EngineComparison:
    """Run both engines over every (subnetwork, node) pair.

    Pairs where the repositioned network is undefined (new output equals
    the input) or not core are recorded as skipped, with the theorem
    engine remaining the authority there.
    """
    an = analyze(net, cap)
    patterns = {K: theorem_pattern(an, K) for K in an.subnetworks}
    report = EngineComparison()
    for kappa in net.nodes:
        if kappa == net.input:
            report.skipped.append((kappa, "output would equal input"))
            continue
        if kappa == net.output:
            for K in an.subnetworks:
                report.checked += 1
                if kappa not in patterns[K]:
                    report.disagreements.append((K.label, kappa, False, True))
            continue
        gk = net.with_output(kappa)
        if not validate_core(gk).is_core:
            report.skipped.append((kappa, "repositioned network is not core"))
            continue
        try:
            cls = classify_nodes(gk, cap)
            structs, apps = decompose(gk, cls)
        except PathExplosion:
            report.skipped.append((kappa, "path cap exceeded after repositioning"))
            continue
        for K in an.subnetworks:
            if isinstance(K, StructuralSubnetwork):
                verbatim = any(
                    s.rho_prev == K.rho_prev
                    and s.rho_next == K.rho_next
                    and s.simple_core == K.simple_core
                    and s.linked_appendage == K.linked_appendage
                    for s in structs
                )
            else:
                verbatim = any(a.nodes == K.nodes for a in apps)
            theorem = kappa in patterns[K]
            report.checked += 1
            if theorem != verbatim:
                report.disagreements.append((K.label, kappa, theorem, verbatim))
    return report


# ---------------------------------------------------------------------------
# upstream/downstream simple representatives of a node


def sigma_element(
    net: IONetwork,
    cls: NodeClassification,
    pnet: PatternNetwork,
    kappa: str,
    downstream: bool,
) -> BackboneElement:
    """Backbone element of the minimal upstream (downstream=False) or
    maximal downstream (downstream=True) simple node joined to kappa by
    an appendage path; kappa's own backbone element when kappa is simple.
    """
    if kappa not in net.nodes:
        raise NetworkError("unknown node %r" % kappa)
    if kappa in cls.simple:
        elem = pnet.node_map[kappa]
        assert isinstance(elem, (SuperSimpleNode, BackboneNode))
        return elem
    return extreme_backbone_contact(
        net,
        cls,
        pnet.node_map,
        pnet.chain_pos,
        frozenset({kappa}),
        "node %r" % kappa,
        downstream=downstream,
    )


def super_simple_in_repositioned(
    net: IONetwork, rho: str, kappa: str, cap: int = DEFAULT_PATH_CAP
) -> bool:
    """Is rho on every simple path from the input node to kappa?"""
    if kappa == net.input:
        raise InputIsOutputError("repositioned output equals the input node")
    paths = simple_paths_between(net, net.input, kappa, cap)
    if not paths:
        raise NetworkError("node %r is unreachable from the input" % kappa)
    return all(rho in p for p in paths)


def shared_super_simple_violations(
    net: IONetwork, an: Analysis, cap: int = DEFAULT_PATH_CAP
) -> list[tuple[str, str, bool, bool]]:
    """Cross-check: rho stays super-simple with output kappa exactly when
    rho's chain position is at most the position of kappa's upstream
    simple representative.  Returns (rho, kappa, direct, predicted) rows
    that disagree."""
    violations = []
    for kappa in net.nodes:
        if kappa == net.input:
            continue
        upstream = sigma_element(net, an.cls, an.pnet, kappa, downstream=False)
        bound = an.pnet.chain_pos[upstream]
        paths = simple_paths_between(net, net.input, kappa, cap)
        for rho in an.cls.super_simple:
            direct = all(rho in p for p in paths)
            predicted = an.pnet.chain_pos[SuperSimpleNode(rho)] <= bound
            if direct != predicted:
                violations.append((rho, kappa, direct, predicted))
    return violations
