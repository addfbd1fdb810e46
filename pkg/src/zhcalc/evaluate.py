"""Exact matrix interpretation of diagrams by sparse tensor contraction.

Every generator is a symmetric tensor with entries in the ring handled by
``ExactScalar``, so a diagram denotes a matrix indexed by bitstrings over
its boundary wires. ``evaluate`` contracts the generator tensors along
edges, keeping everything sparse: a factor stores only its nonzero
entries, and wires are summed out either greedily (smallest intermediate
factor first) or in fixed edge order. The two orders must agree exactly;
tests rely on that.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence, Union

from .diagram import (
    ArityMismatch,
    BoundaryPort,
    Diagram,
    GeneratorKind,
    NodePort,
    basis_effect,
    basis_state,
    compose,
    tensor_all,
)
from .scalar import ExactScalar, ONE, TWO, HALF, ZERO, sqrt2_pow

DEFAULT_MAX_BOUNDARY = 22


class TooLarge(ValueError):
    """The diagram has more boundary wires than the configured bound."""


class InvalidDiagram(ValueError):
    """The diagram fails structural validation."""


class BadArity(ValueError):
    """A generator was given leg counts it does not admit."""


@dataclass(frozen=True)
class BasisState:
    """A computational basis bitstring, e.g. |010>."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("basis state bits must be 0 or 1")

    @classmethod
    def from_string(cls, text: str) -> "BasisState":
        if not set(text) <= {"0", "1"}:
            raise ValueError("basis state strings contain only 0 and 1")
        return cls(bits=tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class ExactMatrix:
    """A sparse exact matrix indexed by (row, column) bitstrings.

    Rows have length ``n_out`` and columns ``n_in``; absent entries are
    zero, and stored entries are always nonzero, so dict equality is
    semantic equality.
    """

    n_out: int
    n_in: int
    entries: dict[tuple[str, str], ExactScalar]

    def __post_init__(self) -> None:
        kept: dict[tuple[str, str], ExactScalar] = {}
        for (row, col), value in self.entries.items():
            if len(row) != self.n_out or len(col) != self.n_in:
                raise ValueError(
                    f"entry ({row!r}, {col!r}) does not match shape "
                    f"{self.n_out}x{self.n_in}"
                )
            if not (set(row) | set(col)) <= {"0", "1"}:
                raise ValueError(f"entry ({row!r}, {col!r}) is not a bitstring pair")
            if not value.is_zero:
                kept[(row, col)] = value
        object.__setattr__(self, "entries", kept)

    def entry(self, row: str, col: str) -> ExactScalar:
        return self.entries.get((row, col), ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            n_out=self.n_in,
            n_in=self.n_out,
            entries={(col, row): v for (row, col), v in self.entries.items()},
        )

    def scale(self, factor: ExactScalar) -> "ExactMatrix":
        return ExactMatrix(
            n_out=self.n_out,
            n_in=self.n_in,
            entries={key: v * factor for key, v in self.entries.items()},
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.n_out, self.n_in) != (other.n_out, other.n_in):
            raise ArityMismatch("matrix addition needs equal shapes")
        merged = dict(self.entries)
        for key, v in other.entries.items():
            merged[key] = merged.get(key, ZERO) + v
        return ExactMatrix(n_out=self.n_out, n_in=self.n_in, entries=merged)

    def to_json(self) -> dict:
        return {
            "n_out": self.n_out,
            "n_in": self.n_in,
            "entries": [
                {"row": row, "col": col, "val": value.to_json()}
                for (row, col), value in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        try:
            entries = {
                (e["row"], e["col"]): ExactScalar.from_json(e["val"])
                for e in data["entries"]
            }
            return cls(n_out=data["n_out"], n_in=data["n_in"], entries=entries)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix JSON: {exc}") from exc


def scalar_matrix(value: ExactScalar) -> ExactMatrix:
    return ExactMatrix(n_out=0, n_in=0, entries={("", ""): value})


def identity_matrix(n: int) -> ExactMatrix:
    entries = {}
    for bits in product("01", repeat=n):
        word = "".join(bits)
        entries[(word, word)] = ONE
    return ExactMatrix(n_out=n, n_in=n, entries=entries)


def matrix_compose(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact matrix product a.b."""
    if a.n_in != b.n_out:
        raise ArityMismatch(f"cannot multiply {a.n_out}x{a.n_in} by {b.n_out}x{b.n_in}")
    by_row: dict[str, list[tuple[str, ExactScalar]]] = {}
    for (row, col), value in b.entries.items():
        by_row.setdefault(row, []).append((col, value))
    acc: dict[tuple[str, str], ExactScalar] = {}
    for (row, mid), left in a.entries.items():
        for col, right in by_row.get(mid, ()):
            key = (row, col)
            acc[key] = acc.get(key, ZERO) + left * right
    return ExactMatrix(n_out=a.n_out, n_in=b.n_in, entries=acc)


def matrix_tensor(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact Kronecker product; a indexes the leading bits."""
    entries = {}
    for (row1, col1), v1 in a.entries.items():
        for (row2, col2), v2 in b.entries.items():
            entries[(row1 + row2, col1 + col2)] = v1 * v2
    return ExactMatrix(n_out=a.n_out + b.n_out, n_in=a.n_in + b.n_in, entries=entries)


# -- generator tensors -------------------------------------------------------


def _generator_support(
    kind: GeneratorKind, degree: int
) -> Iterator[tuple[tuple[int, ...], ExactScalar]]:
    """Nonzero entries of a generator as (leg bits, value) pairs.

    The white spider is the all-equal indicator (2 at degree zero), the
    white not weights the all-ones leg pattern by -1, the dark pair are
    parity indicators scaled by sqrt(2)^(3 - degree), and the box is -1
    exactly on the all-ones pattern and 1 elsewhere.
    """
    if kind is GeneratorKind.STAR:
        if degree:
            raise BadArity("star admits no legs")
        yield (), HALF
    elif kind is GeneratorKind.WHITE_SPIDER:
        if degree == 0:
            yield (), TWO
        else:
            yield (0,) * degree, ONE
            yield (1,) * degree, ONE
    elif kind is GeneratorKind.WHITE_NOT:
        if degree:
            yield (0,) * degree, ONE
            yield (1,) * degree, -ONE
        # Degree zero is 1 - 1 = 0: no support at all.
    elif kind in (GeneratorKind.DARK_SPIDER, GeneratorKind.DARK_NOT):
        want = 1 if kind is GeneratorKind.DARK_NOT else 0
        value = sqrt2_pow(3 - degree)
        for bits in product((0, 1), repeat=degree):
            if sum(bits) % 2 == want:
                yield bits, value
    elif kind is GeneratorKind.H_BOX:
        for bits in product((0, 1), repeat=degree):
            yield bits, (-ONE if all(bits) else ONE)
    else:  # pragma: no cover - enum is closed
        raise BadArity(f"unknown generator kind {kind}")


def interpret_generator(kind: GeneratorKind, m: int, n: int) -> ExactMatrix:
    """The 2^n x 2^m matrix of a single generator with m inputs, n outputs."""
    if m < 0 or n < 0:
        raise BadArity("leg counts must be non-negative")
    if kind is GeneratorKind.STAR and (m or n):
        raise BadArity("star admits no legs")
    entries: dict[tuple[str, str], ExactScalar] = {}
    for bits, value in _generator_support(kind, m + n):
        col = "".join(str(b) for b in bits[:m])
        row = "".join(str(b) for b in bits[m:])
        entries[(row, col)] = value
    return ExactMatrix(n_out=n, n_in=m, entries=entries)


# -- contraction engine ------------------------------------------------------


@dataclass
class _Factor:
    wires: tuple[int, ...]
    table: dict[tuple[int, ...], ExactScalar]


def _node_factor(
    kind: GeneratorKind, degree: int, slot_wires: Sequence[int]
) -> _Factor:
    """Project a generator's support onto its distinct incident wires.

    A self-loop makes the same wire occupy two slots; support entries
    whose slots disagree on that wire vanish, and the survivors are keyed
    by one bit per distinct wire.
    """
    distinct: list[int] = []
    for w in slot_wires:
        if w not in distinct:
            distinct.append(w)
    table: dict[tuple[int, ...], ExactScalar] = {}
    for bits, value in _generator_support(kind, degree):
        assignment: dict[int, int] = {}
        consistent = True
        for wire, bit in zip(slot_wires, bits):
            if assignment.setdefault(wire, bit) != bit:
                consistent = False
                break
        if not consistent:
            continue
        key = tuple(assignment[w] for w in distinct)
        total = table.get(key, ZERO) + value
        if total.is_zero:
            table.pop(key, None)
        else:
            table[key] = total
    return _Factor(wires=tuple(distinct), table=table)


def _project_sum(factor: _Factor, summed: set[int]) -> _Factor:
    keep = [i for i, w in enumerate(factor.wires) if w not in summed]
    wires = tuple(factor.wires[i] for i in keep)
    table: dict[tuple[int, ...], ExactScalar] = {}
    for key, value in factor.table.items():
        new_key = tuple(key[i] for i in keep)
        total = table.get(new_key, ZERO) + value
        if total.is_zero:
            table.pop(new_key, None)
        else:
            table[new_key] = total
    return _Factor(wires=wires, table=table)


def _join(f1: _Factor, f2: _Factor, summed: set[int]) -> _Factor:
    """Combine two factors, aligning on shared wires and summing out
    ``summed`` (which must be a subset of the shared wires)."""
    shared = [w for w in f1.wires if w in set(f2.wires)]
    keep1 = [i for i, w in enumerate(f1.wires) if w not in summed]
    keep2 = [
        i for i, w in enumerate(f2.wires) if w not in summed and w not in shared
    ]
    wires = tuple(f1.wires[i] for i in keep1) + tuple(f2.wires[i] for i in keep2)
    shared_idx_1 = [f1.wires.index(w) for w in shared]
    shared_idx_2 = [f2.wires.index(w) for w in shared]
    buckets: dict[tuple[int, ...], list[tuple[tuple[int, ...], ExactScalar]]] = {}
    for key2, v2 in f2.table.items():
        proj = tuple(key2[i] for i in shared_idx_2)
        buckets.setdefault(proj, []).append(
            (tuple(key2[i] for i in keep2), v2)
        )
    table: dict[tuple[int, ...], ExactScalar] = {}
    for key1, v1 in f1.table.items():
        proj = tuple(key1[i] for i in shared_idx_1)
        kept1 = tuple(key1[i] for i in keep1)
        for kept2, v2 in buckets.get(proj, ()):
            new_key = kept1 + kept2
            total = table.get(new_key, ZERO) + v1 * v2
            if total.is_zero:
                table.pop(new_key, None)
            else:
                table[new_key] = total
    return _Factor(wires=wires, table=table)


def evaluate(
    d: Diagram,
    *,
    order: str = "greedy",
    max_boundary: int = DEFAULT_MAX_BOUNDARY,
) -> ExactMatrix:
    """The exact matrix denoted by ``d``.

    ``order`` picks the contraction schedule: "greedy" sums the wire
    whose elimination gives the narrowest intermediate factor, while
    "sequential" walks wires in edge order. Both give the same matrix.
    """
    if order not in ("greedy", "sequential"):
        raise ValueError(f"unknown contraction order {order!r}")
    problems = d.validate()
    if problems:
        raise InvalidDiagram("; ".join(str(p) for p in problems))
    if d.n_in + d.n_out > max_boundary:
        raise TooLarge(
            f"{d.n_in + d.n_out} boundary wires exceed the bound of {max_boundary}"
        )

    node_slots: list[list[int]] = [[-1] * node.degree for node in d.nodes]
    in_wire = [-1] * d.n_in
    out_wire = [-1] * d.n_out
    open_wires: set[int] = set()
    for widx, (a, b) in enumerate(d.edges):
        for ep in (a, b):
            if isinstance(ep, NodePort):
                node_slots[ep.node][ep.port] = widx
            else:
                open_wires.add(widx)
                target = in_wire if ep.side == "in" else out_wire
                target[ep.pos] = widx

    scalar = ONE
    factors: dict[int, _Factor] = {}
    holders: dict[int, set[int]] = {w: set() for w in range(len(d.edges))}
    next_fid = 0

    def install(factor: _Factor, replacing: Iterable[int]) -> None:
        nonlocal scalar, next_fid
        for fid in replacing:
            factors.pop(fid)
        if not factor.wires:
            scalar = scalar * factor.table.get((), ZERO)
            return
        fid = next_fid
        next_fid += 1
        factors[fid] = factor
        for w in factor.wires:
            holders[w] = {
                f for f in holders[w] if f in factors and w in factors[f].wires
            }
            holders[w].add(fid)

    for nid, node in enumerate(d.nodes):
        install(_node_factor(node.kind, node.degree, node_slots[nid]), ())

    closed = [w for w in range(len(d.edges)) if w not in open_wires]
    done: set[int] = set()

    def contract(wire: int) -> None:
        owner_ids = sorted(holders[wire])
        if len(owner_ids) == 1:
            factor = factors[owner_ids[0]]
            summed = {w for w in factor.wires if w not in open_wires and len(holders[w]) == 1}
            merged = _project_sum(factor, summed)
        else:
            f1, f2 = factors[owner_ids[0]], factors[owner_ids[1]]
            summed = {w for w in f1.wires if w in set(f2.wires)}
            merged = _join(f1, f2, summed)
        done.update(summed)
        install(merged, owner_ids)

    if order == "sequential":
        for wire in closed:
            if wire not in done:
                contract(wire)
    else:
        def width(wire: int) -> int:
            owner_ids = sorted(holders[wire])
            if len(owner_ids) == 1:
                return len(factors[owner_ids[0]].wires) - 1
            w1 = factors[owner_ids[0]].wires
            w2 = factors[owner_ids[1]].wires
            shared = len(set(w1) & set(w2))
            return len(w1) + len(w2) - 2 * shared

        heap = [(width(w), w) for w in closed]
        heapq.heapify(heap)
        while heap:
            score, wire = heapq.heappop(heap)
            if wire in done:
                continue
            current = width(wire)
            if current != score:
                heapq.heappush(heap, (current, wire))
                continue
            contract(wire)

    # Only open wires remain. Fold the surviving factors into one sparse
    # table, then expand wires no factor covers (boundary-to-boundary
    # wires are free indices).
    combined = _Factor(wires=(), table={(): ONE})
    for fid in sorted(factors):
        combined = _join(combined, factors[fid], set())
    covered = set(combined.wires)
    free = sorted(w for w in open_wires if w not in covered)

    entries: dict[tuple[str, str], ExactScalar] = {}
    for key, value in combined.table.items():
        total = value * scalar
        if total.is_zero:
            continue
        base = dict(zip(combined.wires, key))
        for bits in product((0, 1), repeat=len(free)):
            assignment = base | dict(zip(free, bits))
            row = "".join(str(assignment[w]) for w in out_wire)
            col = "".join(str(assignment[w]) for w in in_wire)
            entries[(row, col)] = entries.get((row, col), ZERO) + total
    return ExactMatrix(n_out=d.n_out, n_in=d.n_in, entries=entries)


def apply_basis(
    d: Diagram,
    v: Union[BasisState, Sequence[int]],
    side: str,
    *,
    order: str = "greedy",
    max_boundary: int = DEFAULT_MAX_BOUNDARY,
) -> ExactMatrix:
    """Plug |v> into the inputs (side="in") or <v| onto the outputs
    (side="out") and evaluate.

    The basis gadgets are composed into the diagram before contraction,
    so a wide boundary collapses to a narrow one instead of being
    enumerated.
    """
    state = v if isinstance(v, BasisState) else BasisState(bits=tuple(v))
    if side == "in":
        if len(state) != d.n_in:
            raise ArityMismatch(f"state has {len(state)} bits, diagram takes {d.n_in}")
        plug = tensor_all([basis_state(bool(b)) for b in state.bits])
        plugged = compose(d, plug)
    elif side == "out":
        if len(state) != d.n_out:
            raise ArityMismatch(f"state has {len(state)} bits, diagram emits {d.n_out}")
        plug = tensor_all([basis_effect(bool(b)) for b in state.bits])
        plugged = compose(plug, d)
    else:
        raise ValueError(f"side must be 'in' or 'out', not {side!r}")
    return evaluate(plugged, order=order, max_boundary=max_boundary)
