"""Open multigraphs over the six phase-free ZH generators.

A diagram is a set of generator nodes, a multiset of undirected edges
between node ports and boundary positions, and an input/output boundary
split. Generators are symmetric tensors, so edges carry no direction;
ports only exist to make the multigraph structure unambiguous (parallel
edges and self-loops are both legal and both meaningful).

Diagrams are immutable. ``compose`` and ``tensor`` build new values,
``DiagramBuilder`` assembles one incrementally, and ``validate`` reports
structural problems as data rather than exceptions so that callers can
show all of them at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union


class GeneratorKind(Enum):
    """The six atomic node types, with their serialization codes."""

    WHITE_SPIDER = "Z"
    DARK_SPIDER = "X"
    WHITE_NOT = "ZNot"
    DARK_NOT = "XNot"
    H_BOX = "H"
    STAR = "Star"


class ArityMismatch(ValueError):
    """Sequential composition with incompatible boundary widths."""


@dataclass(frozen=True)
class NodePort:
    node: int
    port: int


@dataclass(frozen=True)
class BoundaryPort:
    side: str  # "in" or "out"
    pos: int


Endpoint = Union[NodePort, BoundaryPort]


@dataclass(frozen=True)
class Node:
    kind: GeneratorKind
    degree: int


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


def _endpoint_key(ep: Endpoint) -> tuple:
    if isinstance(ep, BoundaryPort):
        return (0, ep.pos) if ep.side == "in" else (2, ep.pos)
    return (1, ep.node, ep.port)


def _edge_canonical(edge: tuple[Endpoint, Endpoint]) -> tuple[Endpoint, Endpoint]:
    a, b = edge
    return (a, b) if _endpoint_key(a) <= _endpoint_key(b) else (b, a)


@dataclass(frozen=True)
class Diagram:
    """An immutable open diagram with ``n_in`` inputs and ``n_out`` outputs.

    Nodes are indexed densely: node ``i`` is ``nodes[i]``. Edge order is
    canonicalized on construction, so structural equality ignores the
    order in which edges were listed.
    """

    nodes: tuple[Node, ...]
    edges: tuple[tuple[Endpoint, Endpoint], ...]
    n_in: int
    n_out: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        canon = sorted(
            (_edge_canonical(tuple(e)) for e in self.edges),
            key=lambda e: (_endpoint_key(e[0]), _endpoint_key(e[1])),
        )
        object.__setattr__(self, "edges", tuple(canon))

    # -- structural checks -------------------------------------------------

    def validate(self) -> list[Violation]:
        """Return all invariant violations, empty iff well formed."""
        out: list[Violation] = []
        port_uses: dict[NodePort, int] = {}
        boundary_uses: dict[BoundaryPort, int] = {}
        for a, b in self.edges:
            for ep in (a, b):
                if isinstance(ep, NodePort):
                    if not 0 <= ep.node < len(self.nodes):
                        out.append(
                            Violation("UnknownNode", f"edge endpoint references node {ep.node}")
                        )
                        continue
                    degree = self.nodes[ep.node].degree
                    if not 0 <= ep.port < degree:
                        out.append(
                            Violation(
                                "BadPort",
                                f"node {ep.node} has degree {degree}, no port {ep.port}",
                            )
                        )
                        continue
                    port_uses[ep] = port_uses.get(ep, 0) + 1
                else:
                    if ep.side not in ("in", "out"):
                        out.append(Violation("BadBoundary", f"unknown side {ep.side!r}"))
                        continue
                    width = self.n_in if ep.side == "in" else self.n_out
                    if not 0 <= ep.pos < width:
                        out.append(
                            Violation(
                                "BadBoundary",
                                f"{ep.side} boundary has width {width}, no position {ep.pos}",
                            )
                        )
                        continue
                    boundary_uses[ep] = boundary_uses.get(ep, 0) + 1
        for ep, count in sorted(port_uses.items(), key=lambda kv: _endpoint_key(kv[0])):
            if count > 1:
                out.append(
                    Violation(
                        "DuplicatePort",
                        f"port {ep.port} of node {ep.node} used {count} times",
                    )
                )
        for i, node in enumerate(self.nodes):
            if node.kind is GeneratorKind.STAR and node.degree != 0:
                out.append(Violation("StarWithLegs", f"star node {i} has degree {node.degree}"))
                continue
            for port in range(node.degree):
                key = NodePort(node=i, port=port)
                if key not in port_uses:
                    out.append(
                        Violation("MissingPort", f"port {port} of node {i} is dangling")
                    )
        for side, width in (("in", self.n_in), ("out", self.n_out)):
            for pos in range(width):
                count = boundary_uses.get(BoundaryPort(side=side, pos=pos), 0)
                if count != 1:
                    out.append(
                        Violation(
                            "BoundaryDegree",
                            f"{side} position {pos} appears in {count} edges, wanted 1",
                        )
                    )
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nodes": [
                {"id": i, "kind": node.kind.value} for i, node in enumerate(self.nodes)
            ],
            "edges": [
                [_endpoint_to_json(a), _endpoint_to_json(b)] for a, b in self.edges
            ],
            "inputs": [
                {"boundary": "in", "pos": i} for i in range(self.n_in)
            ],
            "outputs": [
                {"boundary": "out", "pos": i} for i in range(self.n_out)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        """Parse the JSON form. Structural shape errors raise ValueError;
        graph-level problems are left for ``validate``."""
        try:
            raw_nodes = list(data["nodes"])
            raw_edges = list(data["edges"])
            raw_inputs = list(data["inputs"])
            raw_outputs = list(data["outputs"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"diagram JSON is missing a required key: {exc}") from exc
        id_to_index: dict[int, int] = {}
        kinds: list[GeneratorKind] = []
        for entry in sorted(raw_nodes, key=lambda e: e["id"]):
            node_id = entry["id"]
            if node_id in id_to_index:
                raise ValueError(f"duplicate node id {node_id}")
            id_to_index[node_id] = len(kinds)
            try:
                kinds.append(GeneratorKind(entry["kind"]))
            except ValueError as exc:
                raise ValueError(f"unknown generator kind {entry['kind']!r}") from exc
        in_map = _boundary_permutation(raw_inputs, "in")
        out_map = _boundary_permutation(raw_outputs, "out")

        degrees = [0] * len(kinds)
        edges = []
        for pair in raw_edges:
            if len(pair) != 2:
                raise ValueError("each edge must have exactly two endpoints")
            eps = []
            for raw in pair:
                ep = _endpoint_from_json(raw, id_to_index, in_map, out_map)
                if isinstance(ep, NodePort):
                    degrees[ep.node] = max(degrees[ep.node], ep.port + 1)
                eps.append(ep)
            edges.append((eps[0], eps[1]))
        nodes = tuple(Node(kind=k, degree=d) for k, d in zip(kinds, degrees))
        return cls(nodes=nodes, edges=tuple(edges), n_in=len(raw_inputs), n_out=len(raw_outputs))


def _endpoint_to_json(ep: Endpoint) -> dict:
    if isinstance(ep, NodePort):
        return {"node": ep.node, "port": ep.port}
    return {"boundary": ep.side, "pos": ep.pos}


def _boundary_permutation(raw: list, side: str) -> dict[int, int]:
    """Map listed boundary positions to their logical order 0..len-1."""
    mapping: dict[int, int] = {}
    for logical, entry in enumerate(raw):
        if entry.get("boundary") != side:
            raise ValueError(f"{side} list holds a non-{side} endpoint: {entry}")
        pos = entry["pos"]
        if pos in mapping:
            raise ValueError(f"{side} position {pos} listed twice")
        mapping[pos] = logical
    if sorted(mapping) != list(range(len(raw))):
        raise ValueError(f"{side} positions must cover 0..{len(raw) - 1}")
    return mapping


def _endpoint_from_json(
    raw: dict,
    id_to_index: dict[int, int],
    in_map: dict[int, int],
    out_map: dict[int, int],
) -> Endpoint:
    if "node" in raw:
        node_id = raw["node"]
        if node_id not in id_to_index:
            raise ValueError(f"edge references unknown node id {node_id}")
        return NodePort(node=id_to_index[node_id], port=raw["port"])
    side = raw.get("boundary")
    if side == "in":
        return BoundaryPort(side="in", pos=in_map.get(raw["pos"], raw["pos"]))
    if side == "out":
        return BoundaryPort(side="out", pos=out_map.get(raw["pos"], raw["pos"]))
    raise ValueError(f"malformed endpoint: {raw}")


# -- constructors ----------------------------------------------------------


def identity(n: int) -> Diagram:
    """n parallel wires, no nodes."""
    if n < 0:
        raise ValueError("wire count must be non-negative")
    edges = tuple(
        (BoundaryPort(side="in", pos=i), BoundaryPort(side="out", pos=i))
        for i in range(n)
    )
    return Diagram(nodes=(), edges=edges, n_in=n, n_out=n)


def generator(kind: GeneratorKind, m: int, n: int) -> Diagram:
    """A single generator node wired straight to the boundary, m inputs
    below and n outputs above."""
    if m < 0 or n < 0:
        raise ValueError("leg counts must be non-negative")
    if kind is GeneratorKind.STAR and (m or n):
        raise ValueError("star is a scalar; it has no legs")
    node = Node(kind=kind, degree=m + n)
    edges = [
        (BoundaryPort(side="in", pos=i), NodePort(node=0, port=i)) for i in range(m)
    ]
    edges += [
        (NodePort(node=0, port=m + j), BoundaryPort(side="out", pos=j))
        for j in range(n)
    ]
    return Diagram(nodes=(node,), edges=tuple(edges), n_in=m, n_out=n)


def basis_state(bit: bool) -> Diagram:
    """The normalized one-wire state |0> or |1> (a star times a one-leg
    dark generator)."""
    kind = GeneratorKind.DARK_NOT if bit else GeneratorKind.DARK_SPIDER
    nodes = (Node(kind=GeneratorKind.STAR, degree=0), Node(kind=kind, degree=1))
    edges = ((NodePort(node=1, port=0), BoundaryPort(side="out", pos=0)),)
    return Diagram(nodes=nodes, edges=edges, n_in=0, n_out=1)


def basis_effect(bit: bool) -> Diagram:
    """The normalized one-wire effect <0| or <1|."""
    kind = GeneratorKind.DARK_NOT if bit else GeneratorKind.DARK_SPIDER
    nodes = (Node(kind=GeneratorKind.STAR, degree=0), Node(kind=kind, degree=1))
    edges = ((BoundaryPort(side="in", pos=0), NodePort(node=1, port=0)),)
    return Diagram(nodes=nodes, edges=edges, n_in=1, n_out=0)


# -- composition -----------------------------------------------------------


@dataclass(frozen=True)
class _Junction:
    pos: int


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """Sequential composition d1 after d2 (matrix order: d1 times d2).

    The outputs of d2 are fused with the inputs of d1 position by
    position. Fused wires are spliced away; a chain of fused wires that
    closes on itself leaves no endpoints at all, so it is materialized
    as a fresh two-leg white spider with a self-loop, which is the
    scalar 2 that the traced wire denotes.
    """
    if d2.n_out != d1.n_in:
        raise ArityMismatch(
            f"cannot plug {d2.n_out} outputs into {d1.n_in} inputs"
        )
    offset = len(d2.nodes)
    nodes: list[Node] = list(d2.nodes) + list(d1.nodes)

    def from_lower(ep: Endpoint) -> Endpoint | _Junction:
        if isinstance(ep, NodePort):
            return ep
        if ep.side == "in":
            return ep
        return _Junction(pos=ep.pos)

    def from_upper(ep: Endpoint) -> Endpoint | _Junction:
        if isinstance(ep, NodePort):
            return NodePort(node=ep.node + offset, port=ep.port)
        if ep.side == "out":
            return ep
        return _Junction(pos=ep.pos)

    raw: list[tuple[Endpoint | _Junction, Endpoint | _Junction]] = [
        (from_lower(a), from_lower(b)) for a, b in d2.edges
    ]
    raw += [(from_upper(a), from_upper(b)) for a, b in d1.edges]

    incident: dict[int, list[tuple[int, int]]] = {}
    for idx, (a, b) in enumerate(raw):
        for end, ep in ((0, a), (1, b)):
            if isinstance(ep, _Junction):
                incident.setdefault(ep.pos, []).append((idx, end))
    for pos, uses in incident.items():
        if len(uses) != 2:
            raise ValueError(
                f"fused position {pos} touches {len(uses)} edges; inputs are malformed"
            )

    consumed = [False] * len(raw)
    edges: list[tuple[Endpoint, Endpoint]] = []

    def walk(start_edge: int, start_pos: int) -> Endpoint | None:
        """Follow the junction chain away from start_edge; return the real
        endpoint it terminates in, or None if it loops back to start_edge."""
        cur_edge, cur_pos = start_edge, start_pos
        while True:
            first, second = incident[cur_pos]
            nxt_edge, nxt_end = second if first[0] == cur_edge else first
            if nxt_edge == start_edge:
                return None
            consumed[nxt_edge] = True
            far = raw[nxt_edge][1 - nxt_end]
            if not isinstance(far, _Junction):
                return far
            cur_edge, cur_pos = nxt_edge, far.pos

    for idx, (a, b) in enumerate(raw):
        if consumed[idx]:
            continue
        a_j = isinstance(a, _Junction)
        b_j = isinstance(b, _Junction)
        if not a_j and not b_j:
            consumed[idx] = True
            edges.append((a, b))
        elif a_j != b_j:
            consumed[idx] = True
            real, junction = (b, a) if a_j else (a, b)
            far = walk(idx, junction.pos)
            assert far is not None, "chain from a real endpoint cannot cycle"
            edges.append((real, far))

    for idx, (a, b) in enumerate(raw):
        if consumed[idx]:
            continue
        # Both ends are junctions and the edge survived the chain sweep,
        # so it belongs to a closed cycle of fused wires.
        consumed[idx] = True
        result = walk(idx, b.pos)
        assert result is None, "cycle sweep reached a real endpoint"
        nodes.append(Node(kind=GeneratorKind.WHITE_SPIDER, degree=2))
        loop_id = len(nodes) - 1
        edges.append((NodePort(node=loop_id, port=0), NodePort(node=loop_id, port=1)))

    return Diagram(nodes=tuple(nodes), edges=tuple(edges), n_in=d2.n_in, n_out=d1.n_out)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Parallel composition; d1 occupies the first boundary positions."""
    offset = len(d1.nodes)

    def shift(ep: Endpoint) -> Endpoint:
        if isinstance(ep, NodePort):
            return NodePort(node=ep.node + offset, port=ep.port)
        base = d1.n_in if ep.side == "in" else d1.n_out
        return BoundaryPort(side=ep.side, pos=ep.pos + base)

    edges = list(d1.edges) + [(shift(a), shift(b)) for a, b in d2.edges]
    return Diagram(
        nodes=tuple(d1.nodes) + tuple(d2.nodes),
        edges=tuple(edges),
        n_in=d1.n_in + d2.n_in,
        n_out=d1.n_out + d2.n_out,
    )


def tensor_all(parts: list[Diagram]) -> Diagram:
    """Left fold of ``tensor`` over ``parts``; empty input gives the unit."""
    out = Diagram(nodes=(), edges=(), n_in=0, n_out=0)
    for part in parts:
        out = tensor(out, part)
    return out


# -- incremental construction ----------------------------------------------


class DiagramBuilder:
    """Assemble a diagram node by node.

    ``node`` registers a generator, ``leg`` allocates its next port and
    returns the handle, ``connect`` joins two handles, and ``finish``
    wires the remaining handles to the boundary in the given order.
    Every allocated leg must end up used exactly once.
    """

    def __init__(self) -> None:
        self._kinds: list[GeneratorKind] = []
        self._degrees: list[int] = []
        self._edges: list[tuple[NodePort, NodePort]] = []
        self._used: set[NodePort] = set()

    def node(self, kind: GeneratorKind) -> int:
        self._kinds.append(kind)
        self._degrees.append(0)
        return len(self._kinds) - 1

    def leg(self, node_id: int) -> NodePort:
        if not 0 <= node_id < len(self._kinds):
            raise ValueError(f"no node {node_id}")
        if self._kinds[node_id] is GeneratorKind.STAR:
            raise ValueError("star is a scalar; it has no legs")
        port = self._degrees[node_id]
        self._degrees[node_id] += 1
        return NodePort(node=node_id, port=port)

    def connect(self, a: NodePort, b: NodePort) -> None:
        for ep in (a, b):
            if ep in self._used:
                raise ValueError(f"leg {ep} is already connected")
        if a == b:
            raise ValueError("cannot connect a leg to itself; allocate two legs")
        self._used.add(a)
        self._used.add(b)
        self._edges.append((a, b))

    def star(self) -> int:
        return self.node(GeneratorKind.STAR)

    def finish(
        self,
        inputs: list[NodePort] = (),
        outputs: list[NodePort] = (),
    ) -> Diagram:
        edges: list[tuple[Endpoint, Endpoint]] = list(self._edges)
        for side, stubs in (("in", inputs), ("out", outputs)):
            for pos, stub in enumerate(stubs):
                if stub in self._used:
                    raise ValueError(f"leg {stub} is already connected")
                self._used.add(stub)
                edges.append((BoundaryPort(side=side, pos=pos), stub))
        for node_id, degree in enumerate(self._degrees):
            for port in range(degree):
                if NodePort(node=node_id, port=port) not in self._used:
                    raise ValueError(f"port {port} of node {node_id} was never connected")
        nodes = tuple(
            Node(kind=k, degree=d) for k, d in zip(self._kinds, self._degrees)
        )
        return Diagram(
            nodes=nodes, edges=tuple(edges), n_in=len(inputs), n_out=len(outputs)
        )
