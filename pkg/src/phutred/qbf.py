"""Restricted quantified Boolean formulas and a brute-force truth oracle.

The formula class handled everywhere in this package is fixed: a prenex
block of strictly alternating quantifiers starting with an existential,
an even number of variables, and a 3CNF matrix.  Because the quantifier
pattern is forced by the variable count, formulas never store it; odd
variables are existential, even ones universal.

Clause literal order is canonicalized at construction (variables
descending, positive literal before negative on ties).  Clause order and
duplicate literals are preserved.  The canonical order is what makes the
downstream board layout realizable with straight stone lines, and it does
not change the truth value of any clause.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import FormError, QbfSyntaxError, ResourceError

EVAL_VAR_CAP = 20


@dataclass(frozen=True, order=True)
class Literal:
    variable: int
    negated: bool

    def __str__(self) -> str:
        return f"-{self.variable}" if self.negated else str(self.variable)

    @staticmethod
    def from_int(value: int) -> "Literal":
        if value == 0:
            raise ValueError("literal integer must be nonzero")
        return Literal(abs(value), value < 0)

    def to_int(self) -> int:
        return -self.variable if self.negated else self.variable

    def holds(self, assignment: Sequence[bool]) -> bool:
        value = assignment[self.variable - 1]
        return not value if self.negated else value


Clause = Tuple[Literal, Literal, Literal]


def _canonical_clause(literals: Iterable[Literal]) -> Clause:
    lits = sorted(literals, key=lambda l: (-l.variable, l.negated))
    if len(lits) != 3:
        raise FormError(f"clause must have exactly 3 literals, got {len(lits)}")
    return (lits[0], lits[1], lits[2])


@dataclass(frozen=True)
class QbfFormula:
    """An alternating-prefix 3CNF formula.

    Invariants are enforced at construction: n even and >= 2, m >= 1,
    every literal's variable in 1..n.  Instances are immutable and safe to
    share across threads.
    """

    n: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise FormError(f"variable count must be even and >= 2, got {self.n}")
        if not self.clauses:
            raise FormError("at least one clause is required")
        canon = tuple(_canonical_clause(c) for c in self.clauses)
        object.__setattr__(self, "clauses", canon)
        for clause in canon:
            for lit in clause:
                if not 1 <= lit.variable <= self.n:
                    raise FormError(
                        f"literal {lit} references a variable outside 1..{self.n}"
                    )

    @property
    def m(self) -> int:
        return len(self.clauses)

    def quantifier(self, variable: int) -> str:
        """'E' for existential (odd index), 'A' for universal (even)."""
        if not 1 <= variable <= self.n:
            raise ValueError(f"variable {variable} out of range")
        return "E" if variable % 2 == 1 else "A"

    def matrix_value(self, assignment: Sequence[bool]) -> bool:
        return all(any(lit.holds(assignment) for lit in cl) for cl in self.clauses)

    def clause_value(self, index: int, assignment: Sequence[bool]) -> bool:
        return any(lit.holds(assignment) for lit in self.clauses[index])


def parse_qbf(text: str) -> QbfFormula:
    """Parse the `p qcnf <n> <m>` text format.

    Comment lines start with `c`.  Each clause line holds exactly three
    nonzero integers; sign encodes negation.  There is no clause
    terminator.
    """
    header = None
    clauses: List[Clause] = []
    expected_m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if header is None:
            fields = line.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "qcnf":
                raise QbfSyntaxError("expected header `p qcnf <n> <m>`", lineno)
            try:
                n, expected_m = int(fields[2]), int(fields[3])
            except ValueError:
                raise QbfSyntaxError("header counts must be integers", lineno) from None
            header = (n, expected_m)
            continue
        fields = line.split()
        if len(fields) != 3:
            raise QbfSyntaxError(
                f"clause line must have exactly 3 literals, got {len(fields)}",
                lineno,
            )
        lits = []
        for col, tok in enumerate(fields, start=1):
            try:
                value = int(tok)
            except ValueError:
                raise QbfSyntaxError(f"bad literal {tok!r}", lineno, col) from None
            if value == 0:
                raise QbfSyntaxError("literal 0 is not allowed", lineno, col)
            lits.append(Literal.from_int(value))
        clauses.append(_canonical_clause(lits))
    if header is None:
        raise QbfSyntaxError("missing header line", 1)
    n, m = header
    if len(clauses) != m:
        raise FormError(f"header declares {m} clauses, found {len(clauses)}")
    return QbfFormula(n=n, clauses=tuple(clauses))


def serialize_qbf(formula: QbfFormula) -> str:
    """Canonical text form: LF endings, no trailing spaces, no comments."""
    lines = [f"p qcnf {formula.n} {formula.m}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause))
    return "\n".join(lines) + "\n"


def evaluate_qbf(formula: QbfFormula, var_cap: int = EVAL_VAR_CAP) -> bool:
    """Exhaustive alternating evaluation: OR at odd levels, AND at even.

    This is the truth oracle every other stage of the pipeline is checked
    against, so it stays deliberately naive.
    """
    if formula.n > var_cap:
        raise ResourceError(f"n={formula.n} exceeds evaluation cap {var_cap}")
    assignment = [False] * formula.n

    def level(i: int) -> bool:
        if i == formula.n:
            return formula.matrix_value(assignment)
        results = []
        for value in (False, True):
            assignment[i] = value
            results.append(level(i + 1))
        if formula.quantifier(i + 1) == "E":
            return results[0] or results[1]
        return results[0] and results[1]

    return level(0)


def enumerate_small_formulas(
    n: int, m: int, count: int, seed: int
) -> List[QbfFormula]:
    """Deterministic pseudorandom sample of valid formulas.

    Restricted to the desk-scale corpus sizes; unused variables are legal
    and duplicates inside a clause are allowed.
    """
    if n not in (2, 4, 6):
        raise ResourceError(f"generator supports n in {{2,4,6}}, got {n}")
    if not 1 <= m <= 5:
        raise ResourceError(f"generator supports 1 <= m <= 5, got {m}")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        clauses = []
        for _ in range(m):
            clauses.append(
                tuple(
                    Literal(rng.randint(1, n), rng.random() < 0.5) for _ in range(3)
                )
            )
        out.append(QbfFormula(n=n, clauses=tuple(clauses)))
    return out
