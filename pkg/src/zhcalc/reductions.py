"""Turn formula-comparison instances into diagram questions.

Three builders live here.  ``build_state_eq`` produces a pair of
state diagrams that agree on a basis input exactly when the instance's
two counts agree there.  ``build_contains_entry`` produces one diagram
whose matrix contains a chosen dyadic value exactly when such an
agreement exists.  ``build_circuit_extraction`` wraps a model count in
a one-wire block that is always proportional to a unitary.

Every builder emits atomic generators only, and the two instance
builders double-check themselves on one pseudo-random basis input
before returning, so a normalization slip fails at construction time
rather than in a downstream solver.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .counting import formula_with_count
from .diagram import (
    ArityMismatch,
    Diagram,
    DiagramBuilder,
    GeneratorKind,
    compose,
    generator,
    identity,
    tensor,
    tensor_all,
)
from .encode import GateBlock, counting_state, encode_formula, gate_gadget
from .evaluate import apply_basis
from .formula import (
    And,
    Formula,
    Not,
    Or,
    SatCompareInstance,
    Var,
    count_sat,
    substitute,
)
from .scalar import ExactScalar


class ContractViolation(RuntimeError):
    """A builder's construction-time self-check failed."""


@dataclass(frozen=True)
class StateEqInstance:
    """Two diagrams with matching boundaries, asked whether some basis
    input sends them to the same state."""

    d1: Diagram
    d2: Diagram

    def __post_init__(self) -> None:
        if (self.d1.n_in, self.d1.n_out) != (self.d2.n_in, self.d2.n_out):
            raise ArityMismatch(
                f"boundaries differ: {self.d1.n_in}->{self.d1.n_out} "
                f"vs {self.d2.n_in}->{self.d2.n_out}"
            )

    def to_json(self) -> dict:
        return {"d1": self.d1.to_json(), "d2": self.d2.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "StateEqInstance":
        return cls(
            d1=Diagram.from_json(data["d1"]), d2=Diagram.from_json(data["d2"])
        )


@dataclass(frozen=True)
class DyadicK:
    """The dyadic rational c/2^d in lowest form.

    Lowest form means the denominator is genuinely needed: either d is
    zero (plain integer, including zero itself) or c is odd.  Use
    ``make`` to normalize arbitrary numerator/exponent pairs.
    """

    c: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError("exponent must be non-negative")
        if self.d > 0 and self.c % 2 == 0:
            raise ValueError(f"{self.c}/2^{self.d} is not in lowest form")

    @classmethod
    def make(cls, c: int, d: int) -> "DyadicK":
        if d < 0:
            raise ValueError("exponent must be non-negative")
        if c == 0:
            return cls(c=0, d=0)
        while d > 0 and c % 2 == 0:
            c //= 2
            d -= 1
        return cls(c=c, d=d)

    @property
    def value(self) -> ExactScalar:
        return ExactScalar(self.c, 0, self.d)

    def to_json(self) -> dict:
        return {"c": self.c, "d": self.d}

    @classmethod
    def from_json(cls, data: dict) -> "DyadicK":
        return cls(c=int(data["c"]), d=int(data["d"]))

    def __str__(self) -> str:
        if self.d == 0:
            return str(self.c)
        return f"{self.c}/{2 ** self.d}"


# -- shared pieces ----------------------------------------------------------


def _stars(count: int) -> Diagram:
    return tensor_all([generator(GeneratorKind.STAR, 0, 0)] * count)


def _two_root_two() -> Diagram:
    """Closed loop evaluating to 2*sqrt(2): a dark cap tracing a white cup."""
    return compose(
        generator(GeneratorKind.DARK_SPIDER, 2, 0),
        generator(GeneratorKind.WHITE_SPIDER, 0, 2),
    )


def _minus_one() -> Diagram:
    """Closed gadget evaluating to exactly -1.

    A one-leg white not against a one-leg dark not contracts to -2; a
    star halves it.  No zero-leg boxes are involved.
    """
    builder = DiagramBuilder()
    builder.star()
    white = builder.node(GeneratorKind.WHITE_NOT)
    dark = builder.node(GeneratorKind.DARK_NOT)
    builder.connect(builder.leg(white), builder.leg(dark))
    return builder.finish()


def _antisymmetric_cap() -> Diagram:
    """The two-wire effect sqrt(2) * (<01| - <10|).

    A white cap with a white not on its first wire and a dark not on
    its second.  Applied to a pair of counting states it extracts the
    difference of the two counts, up to a fixed power of sqrt(2).
    """
    nots = tensor(
        generator(GeneratorKind.WHITE_NOT, 1, 1),
        generator(GeneratorKind.DARK_NOT, 1, 1),
    )
    return compose(generator(GeneratorKind.WHITE_SPIDER, 2, 0), nots)


def _copy_layer(n: int) -> Diagram:
    """n wires in, 2n out: output j and output n+j both copy input j."""
    builder = DiagramBuilder()
    ins: list = []
    first: list = []
    second: list = []
    for _ in range(n):
        spider = builder.node(GeneratorKind.WHITE_SPIDER)
        ins.append(builder.leg(spider))
        first.append(builder.leg(spider))
        second.append(builder.leg(spider))
    return builder.finish(inputs=ins, outputs=first + second)


def _counting_branch(
    phi: Formula, opened: Sequence[str], summed: Sequence[str]
) -> Diagram:
    """Encode ``phi`` with the ``summed`` variables driven by BOTH
    states, leaving the ``opened`` wires as inputs."""
    enc = encode_formula(phi, list(opened) + list(summed))
    plugs = tensor_all([gate_gadget(GateBlock.BOTH)] * len(list(summed)))
    return compose(enc, tensor(identity(len(list(opened))), plugs))


def _conjunction(names: Sequence[str]) -> Formula:
    return reduce(And, (Var(name) for name in names))


# -- builders ---------------------------------------------------------------


def build_state_eq(inst: SatCompareInstance) -> StateEqInstance:
    """Diagrams D1, D2 whose value at basis input v is the model count
    of psi (resp. rho) under v, as an exact scalar.

    Both diagrams take the n shared wires as inputs and have no
    outputs; the extra variables are summed over internally and the
    formula output is collapsed through an IS_TRUE effect.
    """
    is_true = gate_gadget(GateBlock.IS_TRUE)
    d1 = compose(is_true, _counting_branch(inst.psi, inst.x_vars, inst.y_vars))
    d2 = compose(is_true, _counting_branch(inst.rho, inst.x_vars, inst.z_vars))
    return StateEqInstance(d1=d1, d2=d2)


def dyadic_scalar(k: DyadicK) -> Diagram:
    """A closed diagram evaluating to exactly c/2^d, for nonzero k.

    The magnitude comes from collapsing the counting state of a formula
    with exactly |c| models through IS_TRUE; d stars supply the
    denominator and a white-not gadget flips the sign when c < 0.
    """
    if k.c == 0:
        raise ValueError("the zero scalar has a dedicated construction")
    magnitude = abs(k.c)
    names = [f"w{i}" for i in range(1, magnitude.bit_length() + 1)]
    counted = compose(
        gate_gadget(GateBlock.IS_TRUE),
        counting_state(formula_with_count(names, magnitude), names),
    )
    parts = [counted]
    if k.d:
        parts.append(_stars(k.d))
    if k.c < 0:
        parts.append(_minus_one())
    return tensor_all(parts)


def build_contains_entry(inst: SatCompareInstance, k: DyadicK) -> Diagram:
    """A diagram with n inputs and no outputs that contains k among its
    entries exactly when the instance's two counts agree somewhere.

    For k in {0, 1} the entry at basis input v is
    count(rho under v) - count(psi under v) + k on the nose.  Both
    formulae gain a guard variable forced to be false; for k = 1 the
    second branch also accepts the all-ones word, shifting its count by
    one.  The two counting states meet an antisymmetric cap normalized
    back down by a fixed scalar tail.  Any other nonzero k tensors the
    k = 1 diagram with a closed scalar of value k, rescaling every
    entry.
    """
    guard_y = f"y{inst.m + 1}"
    guard_z = f"z{inst.m + 1}"
    ys = list(inst.y_vars) + [guard_y]
    zs = list(inst.z_vars) + [guard_z]
    psi_prime = And(inst.psi, Not(Var(guard_y)))
    rho_prime = And(inst.rho, Not(Var(guard_z)))
    if k.c != 0:
        rho_prime = Or(rho_prime, _conjunction(zs))

    pair = tensor(
        _counting_branch(psi_prime, inst.x_vars, ys),
        _counting_branch(rho_prime, inst.x_vars, zs),
    )
    effect = tensor_all(
        [_antisymmetric_cap(), _two_root_two(), _stars(inst.m + 3)]
    )
    built = compose(effect, compose(pair, _copy_layer(inst.n)))
    if k.c != 0 and (k.c, k.d) != (1, 0):
        built = tensor(built, dyadic_scalar(k))

    _check_contains_entry(built, inst, k)
    return built


def _check_contains_entry(
    built: Diagram, inst: SatCompareInstance, k: DyadicK
) -> None:
    """Evaluate one deterministic pseudo-random basis input against the
    formula-level oracle; raise if the construction is off."""
    rng = random.Random(f"contains-entry {inst.n} {inst.m} {k}")
    v = [rng.randrange(2) for _ in range(inst.n)]
    bound = {name: bool(bit) for name, bit in zip(inst.x_vars, v)}
    diff = count_sat(substitute(inst.rho, bound), inst.z_vars) - count_sat(
        substitute(inst.psi, bound), inst.y_vars
    )
    if k.c == 0:
        expected = ExactScalar(diff, 0, 0)
    else:
        expected = ExactScalar(k.c * (diff + 1), 0, k.d)
    got = apply_basis(built, v, "in").entry("", "")
    if got != expected:
        raise ContractViolation(
            f"entry at {v} is {got}, oracle says {expected}"
        )


def build_circuit_extraction(phi: Formula, variables: Sequence[str]) -> Diagram:
    """A one-wire block evaluating to [[a0, a1], [a1, -a0]] where a1 is
    the model count of ``phi`` over ``variables`` and a0 the co-count.

    The counting state drives a copy spider whose value flows into the
    target wire twice: once through a box (phase flip branch) and once
    into a dark spider (bit flip branch).  The resulting matrix is a
    real multiple of a unitary for every formula.
    """
    builder = DiagramBuilder()
    control = builder.node(GeneratorKind.WHITE_SPIDER)
    flip = builder.node(GeneratorKind.WHITE_NOT)
    target_white = builder.node(GeneratorKind.WHITE_SPIDER)
    box = builder.node(GeneratorKind.H_BOX)
    target_dark = builder.node(GeneratorKind.DARK_SPIDER)

    target_in = builder.leg(flip)
    builder.connect(builder.leg(flip), builder.leg(target_white))
    builder.connect(builder.leg(target_white), builder.leg(box))
    builder.connect(builder.leg(box), builder.leg(control))
    builder.connect(builder.leg(target_white), builder.leg(target_dark))
    builder.connect(builder.leg(control), builder.leg(target_dark))
    target_out = builder.leg(target_dark)
    control_in = builder.leg(control)
    core = builder.finish(inputs=[target_in, control_in], outputs=[target_out])

    names = list(variables)
    return compose(core, tensor(identity(1), counting_state(phi, names)))
