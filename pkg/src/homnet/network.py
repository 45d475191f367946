"""Input-output network data model, JSON ingestion, and reachability.

An input-output network is a directed graph with a distinguished input
node and a distinguished output node.  The library analyzes *core*
networks: every node must be reachable from the input and must reach the
output.  Non-core networks are rejected by downstream modules, never
silently reduced.

Self-arrows are semantically redundant here (every node's dynamics may
depend on its own state, so the Jacobian diagonal is always treated as
present) and are stripped at parse time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property


class NetworkError(ValueError):
    """Validation failure in user-supplied input (CLI exit code 1)."""


class SchemaError(NetworkError):
    """Malformed network document."""


class NonCoreError(NetworkError):
    """Operation requires a core network and the input is not one."""


class PathExplosion(NetworkError):
    """Simple-path enumeration exceeded the configured cap."""


class InputIsOutputError(NetworkError):
    """Networks whose input node equals the output node are out of scope."""


class InvariantError(RuntimeError):
    """Internal consistency failure (CLI exit code 2).  Always a bug."""


@dataclass(frozen=True)
class IONetwork:
    """Immutable directed graph with input and output nodes.

    nodes keeps declaration order; arrows is a frozenset of (tail, head)
    pairs with no self-arrows and no duplicates.
    """

    nodes: tuple[str, ...]
    input: str
    output: str
    arrows: frozenset[tuple[str, str]]
    dropped_self_arrows: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.input == self.output:
            raise InputIsOutputError(
                "input node equals output node (%r); out of scope" % self.input
            )
        seen: set[str] = set()
        for n in self.nodes:
            if not n:
                raise SchemaError("empty node identifier")
            if n in seen:
                raise SchemaError("duplicate node identifier %r" % n)
            seen.add(n)
        for endpoint in (self.input, self.output):
            if endpoint not in seen:
                raise SchemaError("input/output node %r not declared" % endpoint)
        for tail, head in self.arrows:
            if tail not in seen or head not in seen:
                raise SchemaError("arrow (%r, %r) references unknown node" % (tail, head))
            if tail == head:
                raise SchemaError("self-arrow (%r) must be stripped before construction" % tail)

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        # lexicographic successor order: the determinism contract for
        # every path enumeration in the package
        succ: dict[str, list[str]] = {n: [] for n in self.nodes}
        for tail, head in self.arrows:
            succ[tail].append(head)
        return {n: tuple(sorted(s)) for n, s in succ.items()}

    @cached_property
    def predecessors(self) -> dict[str, tuple[str, ...]]:
        pred: dict[str, list[str]] = {n: [] for n in self.nodes}
        for tail, head in self.arrows:
            pred[head].append(tail)
        return {n: tuple(sorted(p)) for n, p in pred.items()}

    def with_output(self, new_output: str) -> "IONetwork":
        """Same graph, different output node."""
        if new_output not in self.nodes:
            raise NetworkError("unknown node %r" % new_output)
        return IONetwork(self.nodes, self.input, new_output, self.arrows)


@dataclass(frozen=True)
class CoreReport:
    is_core: bool
    unreachable_from_input: frozenset[str]
    cannot_reach_output: frozenset[str]


def parse_network(text: str) -> IONetwork:
    """Parse the JSON document schema into an IONetwork.

    Schema: {"nodes": [...], "input": "...", "output": "...",
    "arrows": [["tail", "head"], ...]}.  Duplicate arrows are
    deduplicated; self-arrows are dropped and recorded on the
    dropped_self_arrows field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("malformed JSON: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise SchemaError("top-level document must be an object")
    for key in ("nodes", "input", "output", "arrows"):
        if key not in doc:
            raise SchemaError("missing key %r" % key)
    nodes = doc["nodes"]
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        raise SchemaError("nodes must be a list of strings")
    arrows_raw = doc["arrows"]
    if not isinstance(arrows_raw, list):
        raise SchemaError("arrows must be a list")
    declared = set(nodes)
    arrows: set[tuple[str, str]] = set()
    dropped: list[str] = []
    for item in arrows_raw:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, str) for x in item)
        ):
            raise SchemaError("arrow %r must be a 2-element array of strings" % (item,))
        tail, head = item
        if tail not in declared:
            raise SchemaError("unknown node %r in arrow" % tail)
        if head not in declared:
            raise SchemaError("unknown node %r in arrow" % head)
        if tail == head:
            dropped.append(tail)
            continue
        arrows.add((tail, head))
    return IONetwork(
        nodes=tuple(nodes),
        input=doc["input"],
        output=doc["output"],
        arrows=frozenset(arrows),
        dropped_self_arrows=tuple(sorted(dropped)),
    )


def serialize_network(net: IONetwork) -> str:
    doc = {
        "nodes": list(net.nodes),
        "input": net.input,
        "output": net.output,
        "arrows": sorted([t, h] for t, h in net.arrows),
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def reachable(net: IONetwork, frm: str, direction: str = "forward") -> frozenset[str]:
    """Nodes reachable from `frm` by directed walks, including `frm`."""
    if frm not in net.nodes:
        raise NetworkError("unknown node %r" % frm)
    if direction == "forward":
        adj = net.successors
    elif direction == "backward":
        adj = net.predecessors
    else:
        raise NetworkError("direction must be 'forward' or 'backward'")
    seen = {frm}
    stack = [frm]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


def validate_core(net: IONetwork) -> CoreReport:
    downstream = reachable(net, net.input, "forward")
    upstream = reachable(net, net.output, "backward")
    unreachable = frozenset(net.nodes) - downstream
    cannot_reach = frozenset(net.nodes) - upstream
    return CoreReport(
        is_core=not unreachable and not cannot_reach,
        unreachable_from_input=unreachable,
        cannot_reach_output=cannot_reach,
    )


def require_core(net: IONetwork) -> None:
    report = validate_core(net)
    if not report.is_core:
        raise NonCoreError(
            "network is not core: unreachable from input %s; cannot reach output %s"
            % (sorted(report.unreachable_from_input), sorted(report.cannot_reach_output))
        )


def strongly_connected_components(
    nodes: tuple[str, ...] | list[str],
    successors: dict[str, tuple[str, ...]],
) -> list[frozenset[str]]:
    """Tarjan's algorithm with an explicit stack; deterministic order.

    Components are returned sorted by their smallest member.
    """
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[frozenset[str]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        # iterative DFS frame: (node, iterator position)
        work = [(root, 0)]
        while work:
            node, pos = work.pop()
            if pos == 0:
                index[node] = lowlink[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            succ = successors.get(node, ())
            advanced = False
            for i in range(pos, len(succ)):
                child = succ[i]
                if child not in index:
                    work.append((node, i + 1))
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    lowlink[node] = min(lowlink[node], index[child])
            if advanced:
                continue
            if lowlink[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                components.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
    return sorted(components, key=min)


def subgraph_successors(
    net: IONetwork, allowed: frozenset[str] | set[str]
) -> dict[str, tuple[str, ...]]:
    """Successor map of the induced subgraph on `allowed` nodes."""
    return {
        n: tuple(s for s in net.successors[n] if s in allowed)
        for n in net.nodes
        if n in allowed
    }


def network_to_dot(net: IONetwork) -> str:
    """DOT rendering; input node drawn as a diamond, output as a double circle."""
    lines = ["digraph network {", "  rankdir=LR;"]
    for n in net.nodes:
        attrs = []
        if n == net.input:
            attrs.append('shape=diamond')
            attrs.append('role="input"')
        elif n == net.output:
            attrs.append('shape=doublecircle')
            attrs.append('role="output"')
        else:
            attrs.append('shape=circle')
        lines.append('  "%s" [%s];' % (n, ", ".join(attrs)))
    for tail, head in sorted(net.arrows):
        lines.append('  "%s" -> "%s";' % (tail, head))
    lines.append("}")
    return "\n".join(lines) + "\n"
