"""Invertible polynomials: validation, canonical weights and the transpose."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import permutations
from math import gcd
from typing import Sequence

from .errors import NotInvertible, NotInvertibleType, NotPositive
from .exactmath import det, inverse, rat_str

VARS = "xyzuvw"
_FACTOR = r"[a-z]\d*(?:\^\d+)?"
_MONOMIAL = re.compile(rf"{_FACTOR}(?:\*?{_FACTOR})*")


def var_name(i: int, n: int) -> str:
    return VARS[i] if n <= len(VARS) else f"x{i + 1}"


@dataclass(frozen=True)
class WeightSystem:
    a: tuple[int, ...]
    d: int

    @property
    def w(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(ai, self.d) for ai in self.a)

    @property
    def c_f(self) -> int:
        return reduce(gcd, self.a, self.d)

    @property
    def a_W(self) -> int:
        return self.d - sum(self.a)

    @property
    def epsilon(self) -> Fraction:
        return Fraction(-self.a_W, self.c_f)

    @property
    def reduced(self) -> tuple[tuple[int, ...], int]:
        c = self.c_f
        return tuple(ai // c for ai in self.a), self.d // c

    def to_json(self) -> dict:
        ra, rd = self.reduced
        return {
            "a": list(self.a), "d": self.d,
            "w": [rat_str(x) for x in self.w],
            "c_f": self.c_f, "a_W": self.a_W, "epsilon": rat_str(self.epsilon),
            "reduced": {"a": list(ra), "d": rd},
        }


@dataclass(frozen=True)
class Block:
    kind: str  # "fermat" | "chain" | "loop"
    variables: tuple[int, ...]

    def to_json(self) -> dict:
        return {"type": self.kind, "variables": list(self.variables)}


@dataclass(frozen=True)
class InvPoly:
    """An invertible polynomial, given by its exponent matrix (rows are monomials)."""

    E: tuple[tuple[int, ...], ...]
    _validated: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        E = tuple(tuple(int(x) for x in row) for row in self.E)
        object.__setattr__(self, "E", E)
        n = len(E)
        if n == 0 or any(len(r) != n for r in E):
            raise NotInvertible("exponent matrix must be square and non-empty")
        if any(x < 0 for r in E for x in r):
            raise NotInvertibleType("exponents must be non-negative")
        if not self._validated:
            self.validate()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "InvPoly":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_json(cls, data: dict) -> "InvPoly":
        if not isinstance(data, dict) or "monomials" not in data:
            raise NotInvertibleType("expected an object with a 'monomials' field")
        return cls.from_rows(data["monomials"])

    @classmethod
    def parse(cls, text: str) -> "InvPoly":
        """Parse strings such as ``"x^6*y + y^3 + z^2"`` (variables x, y, z, u, v, w)."""
        monos = [m.replace(" ", "") for m in text.replace("-", "+").split("+") if m.strip()]
        for m in monos:
            if not _MONOMIAL.fullmatch(m):
                raise ValueError(f"malformed monomial {m!r}")
        names = sorted({c for m in monos for c in re.findall(r"[a-z]\d*", m)},
                       key=lambda s: (VARS.index(s) if s in VARS else 99, s))
        rows = []
        for m in monos:
            row = [0] * len(names)
            for v, e in re.findall(r"([a-z]\d*)(?:\^(\d+))?", m.replace("*", "")):
                row[names.index(v)] += int(e) if e else 1
            rows.append(row)
        return cls.from_rows(rows)

    def to_json(self) -> dict:
        return {"monomials": [list(r) for r in self.E]}

    @property
    def n(self) -> int:
        return len(self.E)

    def __str__(self) -> str:
        terms = []
        for row in self.E:
            parts = []
            for j, e in enumerate(row):
                if e == 1:
                    parts.append(var_name(j, self.n))
                elif e > 1:
                    parts.append(f"{var_name(j, self.n)}^{e}")
            terms.append("*".join(parts))
        return " + ".join(terms)

    # -- derived data --------------------------------------------------------
    @cached_property
    def det(self) -> int:
        return int(det(self.E))

    @cached_property
    def weights(self) -> WeightSystem:
        return canonical_weights(self)

    @property
    def w(self) -> tuple[Fraction, ...]:
        return self.weights.w

    @cached_property
    def E_inv(self) -> list[list[Fraction]]:
        return inverse(self.E)

    def validate(self) -> None:
        canonical_weights(self)
        atomic_decomposition(self)


def canonical_weights(p: InvPoly) -> WeightSystem:
    """Solve E*a = d*(1,...,1) with d = |det E|."""
    D = int(det(p.E))
    if D == 0:
        raise NotInvertible("det E = 0")
    Einv = inverse(p.E)
    a = [sum(row) * D for row in Einv]
    if D < 0:
        a, D = [-x for x in a], -D
    if any(Fraction(x).denominator != 1 for x in a):
        raise NotInvertible("non-integral weight solution")
    a = tuple(int(x) for x in a)
    if any(x <= 0 for x in a):
        raise NotPositive(f"weights {a} are not all positive")
    return WeightSystem(a, D)


def transpose(p: InvPoly) -> InvPoly:
    return InvPoly(tuple(zip(*p.E)))


def atomic_decomposition(p: InvPoly) -> list[Block]:
    """Split the variables into Fermat, chain and loop blocks.

    Every monomial must be x_i^a (a >= 2) or x_i^a x_j (a >= 2, j != i) with
    distinct leading variables and each x_j used as a pointer at most once.
    Chains are reported from the head monomial x_1^a1 x_2 down to the tail.
    """
    n = p.n
    main = [None] * n
    ptr = [None] * n  # by main variable
    for row in p.E:
        big = [j for j, e in enumerate(row) if e >= 2]
        ones = [j for j, e in enumerate(row) if e == 1]
        if len(big) != 1 or len(ones) > 1:
            raise NotInvertibleType(f"monomial {row} is not of atomic type")
        i = big[0]
        if main[i] is not None:
            raise NotInvertibleType(f"variable {i} leads two monomials")
        main[i] = row
        ptr[i] = ones[0] if ones else None
    targets = [j for j in ptr if j is not None]
    if len(set(targets)) != len(targets):
        raise NotInvertibleType("a variable is pointed to by two monomials")
    pointed = set(targets)
    blocks, seen = [], set()
    for start in range(n):
        if start in pointed or start in seen:
            continue
        path = [start]
        while ptr[path[-1]] is not None:
            path.append(ptr[path[-1]])
        seen.update(path)
        blocks.append(Block("fermat" if len(path) == 1 else "chain", tuple(path)))
    for start in range(n):
        if start in seen:
            continue
        cyc = [start]
        while ptr[cyc[-1]] != start:
            cyc.append(ptr[cyc[-1]])
        seen.update(cyc)
        blocks.append(Block("loop", tuple(cyc)))
    return sorted(blocks, key=lambda b: min(b.variables))


def hat_c(p: InvPoly) -> Fraction:
    return sum((1 - 2 * w for w in p.w), Fraction(0))


def milnor_number(p: InvPoly) -> int:
    out = Fraction(1)
    for w in p.w:
        out *= 1 / w - 1
    return int(out)


def equivalent_up_to_permutation(p: InvPoly, q: InvPoly) -> bool:
    """True if relabelling variables (and reordering monomials) turns p into q."""
    if p.n != q.n:
        return False
    target = sorted(q.E)
    return any(sorted(tuple(row[s] for s in sigma) for row in p.E) == target
               for sigma in permutations(range(p.n)))
