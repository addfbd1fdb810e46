"""CNF conversion and the fixed-shape 0-1 word codec.

A CNF is a clause list over an explicit, ordered variable list.
to_cnf converts an arbitrary formula by connective elimination,
negation normal form and distribution, without auxiliary variables,
so the model count over the same variable list is preserved.

The 0-1 codec packs a CNF with m clauses over n variables into a word
of exactly 2*k*k bits, k = max(m, n): the clause list is padded with
tautological clauses {x1, ~x1} up to k clauses, k - n fresh variables
are appended (positively) to every clause, and each clause is emitted
as 2k bits, positions 2i-1 and 2i flagging the literals x_i and ~x_i.
Decoding reads the word back as a CNF over x1..xk, dropping unset
positions.

Count preservation holds exactly when m <= n.  When clauses outnumber
variables, appending a fresh variable to every clause admits every
assignment that sets it to True, so the count over the padded list
strictly exceeds the original count; no padding that keeps k clauses
over k variables and only weakens clauses can avoid this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from zhcalc.formula import (
    And,
    Const,
    Formula,
    FormulaError,
    Iff,
    Implies,
    Not,
    Or,
    Var,
)

DEFAULT_MAX_CLAUSES = 4096


class SizeBlowup(FormulaError):
    """Distribution exceeded the configured clause budget."""


class BadLength(ValueError):
    """A word's length is not of the form 2*k*k for a positive k."""


@dataclass(frozen=True)
class Literal:
    index: int
    positive: bool

    def __str__(self) -> str:
        return ("" if self.positive else "~") + f"#{self.index}"


Clause = frozenset[Literal]


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of disjunction clauses over an ordered variable list."""

    variables: tuple[str, ...]
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        n = len(self.variables)
        for clause in self.clauses:
            for lit in clause:
                if not 0 <= lit.index < n:
                    raise ValueError(f"literal {lit} outside variable list")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def to_formula(self) -> Formula:
        conj: Formula | None = None
        for clause in self.clauses:
            disj: Formula | None = None
            for lit in sorted(clause, key=lambda l: (l.index, not l.positive)):
                atom: Formula = Var(self.variables[lit.index])
                if not lit.positive:
                    atom = Not(atom)
                disj = atom if disj is None else Or(disj, atom)
            if disj is None:
                disj = Const(False)
            conj = disj if conj is None else And(conj, disj)
        return Const(True) if conj is None else conj


def _eliminate_arrows(phi: Formula) -> Formula:
    match phi:
        case Var(_) | Const(_):
            return phi
        case Not(child):
            return Not(_eliminate_arrows(child))
        case And(l, r):
            return And(_eliminate_arrows(l), _eliminate_arrows(r))
        case Or(l, r):
            return Or(_eliminate_arrows(l), _eliminate_arrows(r))
        case Implies(l, r):
            return Or(Not(_eliminate_arrows(l)), _eliminate_arrows(r))
        case Iff(l, r):
            a, b = _eliminate_arrows(l), _eliminate_arrows(r)
            return And(Or(Not(a), b), Or(a, Not(b)))
    raise TypeError(f"not a formula: {phi!r}")


def _nnf(phi: Formula, negate: bool) -> Formula:
    match phi:
        case Var(_):
            return Not(phi) if negate else phi
        case Const(value):
            return Const(value != negate)
        case Not(child):
            return _nnf(child, not negate)
        case And(l, r):
            if negate:
                return Or(_nnf(l, True), _nnf(r, True))
            return And(_nnf(l, False), _nnf(r, False))
        case Or(l, r):
            if negate:
                return And(_nnf(l, True), _nnf(r, True))
            return Or(_nnf(l, False), _nnf(r, False))
    raise TypeError(f"unexpected node in NNF: {phi!r}")


def to_cnf(
    phi: Formula,
    variables: tuple[str, ...] | list[str],
    *,
    max_clauses: int = DEFAULT_MAX_CLAUSES,
) -> CnfFormula:
    """Equivalent CNF over the same variable list; counts are preserved.

    No auxiliary variables are introduced; the clause set may grow
    exponentially, guarded by max_clauses (SizeBlowup on overflow).
    Tautological clauses are dropped and duplicate clauses merged.
    """
    names = tuple(variables)
    index = {name: i for i, name in enumerate(names)}
    nnf = _nnf(_eliminate_arrows(phi), False)

    def clauses_of(node: Formula) -> list[frozenset[Literal]]:
        match node:
            case Const(True):
                return []
            case Const(False):
                return [frozenset()]
            case Var(name):
                return [frozenset((Literal(index[name], True),))]
            case Not(Var(name)):
                return [frozenset((Literal(index[name], False),))]
            case And(l, r):
                return _capped(clauses_of(l) + clauses_of(r), max_clauses)
            case Or(l, r):
                left, right = clauses_of(l), clauses_of(r)
                merged = [a | b for a in left for b in right]
                return _capped(merged, max_clauses)
        raise TypeError(f"unexpected node after NNF: {node!r}")

    out: list[Clause] = []
    seen = set()
    for clause in clauses_of(nnf):
        if any(Literal(l.index, not l.positive) in clause for l in clause):
            continue
        if clause not in seen:
            seen.add(clause)
            out.append(clause)
    return CnfFormula(names, tuple(out))


def _capped(clauses: list[Clause], max_clauses: int) -> list[Clause]:
    if len(clauses) > max_clauses:
        raise SizeBlowup(f"{len(clauses)} clauses exceeds budget {max_clauses}")
    return clauses


# ---------------------------------------------------------------------------
# 0-1 words


@dataclass(frozen=True)
class Word01:
    """A bit word of length 2*k*k encoding k clauses over k variables."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(bit not in (0, 1) for bit in self.bits):
            raise ValueError("word bits must be 0 or 1")
        if self.block_size == 0:
            raise BadLength(f"length {len(self.bits)} is not 2*k*k with k >= 1")

    @property
    def block_size(self) -> int:
        length = len(self.bits)
        k = math.isqrt(length // 2) if length else 0
        return k if k >= 1 and 2 * k * k == length else 0

    def __str__(self) -> str:
        return "".join("1" if bit else "0" for bit in self.bits)

    @classmethod
    def from_string(cls, text: str) -> "Word01":
        cleaned = text.replace(" ", "")
        if not set(cleaned) <= {"0", "1"}:
            raise BadLength("words contain only 0, 1 and spaces")
        return cls(tuple(ch == "1" for ch in cleaned))


def encode01(cnf: CnfFormula) -> Word01:
    """Pack a CNF into its fixed-shape 0-1 word.

    The word always decodes back to the padded CNF.  The padded CNF has
    the same model count as the input exactly when m <= n; see the
    module docstring for why the m > n case cannot be count-preserving.
    """
    n, m = cnf.n, cnf.m
    k = max(m, n)
    if k == 0:
        raise ValueError("cannot encode a CNF with no variables and no clauses")
    fresh = frozenset(Literal(i, True) for i in range(n, k))
    padding: Clause = frozenset((Literal(0, True), Literal(0, False))) | fresh
    clauses = [clause | fresh for clause in cnf.clauses]
    clauses.extend([padding] * (k - m))
    bits: list[int] = []
    for clause in clauses:
        for i in range(k):
            bits.append(1 if Literal(i, True) in clause else 0)
            bits.append(1 if Literal(i, False) in clause else 0)
    return Word01(tuple(bits))


def decode01(word: Word01) -> CnfFormula:
    """Read a word back as k clauses over x1..xk; unset positions are dropped."""
    k = word.block_size
    if k == 0:
        raise BadLength(f"length {len(word.bits)} is not 2*k*k with k >= 1")
    variables = tuple(f"x{i}" for i in range(1, k + 1))
    clauses = []
    for j in range(k):
        block = word.bits[2 * k * j : 2 * k * (j + 1)]
        literals = []
        for i in range(k):
            if block[2 * i]:
                literals.append(Literal(i, True))
            if block[2 * i + 1]:
                literals.append(Literal(i, False))
        clauses.append(frozenset(literals))
    return CnfFormula(variables, tuple(clauses))


# ---------------------------------------------------------------------------
# DIMACS


def to_dimacs(cnf: CnfFormula) -> str:
    lines = [f"p cnf {cnf.n} {cnf.m}"]
    for clause in cnf.clauses:
        nums = [
            (l.index + 1) if l.positive else -(l.index + 1)
            for l in sorted(clause, key=lambda l: (l.index, not l.positive))
        ]
        lines.append(" ".join(str(v) for v in nums) + " 0")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> CnfFormula:
    n = None
    clauses = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            n = int(parts[2])
            continue
        if n is None:
            raise ValueError("clause before problem line")
        nums = [int(tok) for tok in line.split()]
        if nums[-1] != 0:
            raise ValueError(f"clause not 0-terminated: {line!r}")
        clauses.append(
            frozenset(Literal(abs(v) - 1, v > 0) for v in nums[:-1])
        )
    if n is None:
        raise ValueError("missing problem line")
    return CnfFormula(tuple(f"x{i}" for i in range(1, n + 1)), tuple(clauses))
