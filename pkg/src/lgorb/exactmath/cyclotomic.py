"""Elements of cyclotomic fields Q(zeta_N), stored in the power basis mod Phi_N."""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from .rational import rat_str


def _norm(c):
    """Collapse integral Fractions to ints so the common case stays fast."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _poly_divmod_monic(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, low-order coefficient first; den monic
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [0], num
    q = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    return q, num[:dd]


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Phi_N as an integer coefficient tuple, constant term first.

    Obtained by exact division of x^N - 1 by the product of Phi_d over the
    proper divisors d of N.
    """
    if N < 1:
        raise ValueError("N must be positive")
    num = [-1] + [0] * (N - 1) + [1]
    den = [1]
    for d in range(1, N):
        if N % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod_monic(num, den)
    if any(r):
        raise ArithmeticError("cyclotomic division left a remainder")
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return tuple(q)


@lru_cache(maxsize=None)
def _power_table(N: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds x^k mod Phi_N for 0 <= k < N."""
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(N):
        rows.append(tuple(cur))
        # multiply by x and reduce using x^deg = -sum phi_j x^j
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _degree(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


def _reduce_cyclic(vec: Sequence, N: int) -> tuple:
    """Reduce an element of Q[x]/(x^N - 1) modulo Phi_N."""
    deg = _degree(N)
    table = _power_table(N)
    out = list(vec[:deg]) + [0] * max(0, deg - len(vec))
    for k in range(deg, len(vec)):
        c = vec[k]
        if c:
            row = table[k]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(_norm(c) for c in out)


class Cyclo:
    """An element of Q(zeta_N) as a coefficient vector in 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Iterable):
        coeffs = tuple(_norm(c) for c in coeffs)
        if len(coeffs) != _degree(N):
            raise ValueError(f"expected {_degree(N)} coefficients for conductor {N}")
        self.N = N
        self.coeffs = coeffs

    @classmethod
    def rational(cls, r) -> "Cyclo":
        return cls(1, (r if isinstance(r, int) else Fraction(r),))

    @classmethod
    def zero(cls) -> "Cyclo":
        return cls(1, (0,))

    @classmethod
    def one(cls) -> "Cyclo":
        return cls(1, (1,))

    @classmethod
    def from_cyclic(cls, N: int, vec: Sequence) -> "Cyclo":
        """Build from coefficients of 1, zeta, ..., zeta^(N-1) (any length, folded mod N)."""
        folded = [0] * N
        for k, c in enumerate(vec):
            if c:
                folded[k % N] += c
        return cls(N, _reduce_cyclic(folded, N))

    # -- structure -------------------------------------------------------
    def embed(self, M: int) -> "Cyclo":
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"conductor {self.N} does not divide {M}")
        step = M // self.N
        vec = [0] * M
        for j, c in enumerate(self.coeffs):
            if c:
                vec[j * step] = c
        return Cyclo(M, _reduce_cyclic(vec, M))

    def _lift(self, other):
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other)
        if self.N == other.N:
            return self, other
        M = lcm(self.N, other.N)
        return self.embed(M), other.embed(M)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("cyclotomic value is not rational")
        return Fraction(self.coeffs[0])

    def __complex__(self) -> complex:
        return complex(sum(float(c) * cmath.exp(2j * cmath.pi * k / self.N)
                           for k, c in enumerate(self.coeffs) if c))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        a, b = self._lift(other)
        return Cyclo(a.N, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.N, (-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._lift(other)
        return Cyclo(a.N, (x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            other = Fraction(other)
            return Cyclo(self.N, (c * other for c in self.coeffs))
        if other.N == 1:
            s = other.coeffs[0]
            return Cyclo(self.N, (c * s for c in self.coeffs))
        if self.N == 1:
            s = self.coeffs[0]
            return Cyclo(other.N, (c * s for c in other.coeffs))
        a, b = self._lift(other)
        N = a.N
        vec = [0] * N
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        vec[(i + j) % N] += x * y
        return Cyclo(N, _reduce_cyclic(vec, N))

    __rmul__ = __mul__

    def mul_root(self, k: int, M: int) -> "Cyclo":
        """Multiply by zeta_M^k without forming the root as a separate element."""
        N = lcm(self.N, M)
        a = self.embed(N)
        shift = (k * (N // M)) % N
        vec = [0] * N
        for i, x in enumerate(a.coeffs):
            if x:
                vec[(i + shift) % N] += x
        return Cyclo(N, _reduce_cyclic(vec, N))

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclo.rational(1 / Fraction(self.coeffs[0]))
        # solve self * x = 1 via the multiplication matrix over Q
        N, deg = self.N, len(self.coeffs)
        cols = []
        for j in range(deg):
            basis = [0] * deg
            basis[j] = 1
            cols.append((self * Cyclo(N, basis)).coeffs)
        mat = [[Fraction(cols[j][i]) for j in range(deg)] + [Fraction(1 if i == 0 else 0)]
               for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            inv = 1 / mat[c][c]
            mat[c] = [v * inv for v in mat[c]]
            for r in range(deg):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[c])]
        return Cyclo(N, (mat[i][deg] for i in range(deg)))

    def __truediv__(self, other):
        if not isinstance(other, Cyclo):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Cyclo.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Cyclo):
            try:
                other = Cyclo.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._lift(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.coeffs[0]))
        return hash("lgorb.Cyclo.irrational")

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo({rat_str(self.coeffs[0])})"
        return f"Cyclo(N={self.N}, {list(map(rat_str, self.coeffs))})"

    def to_json(self) -> list:
        """List of [k, N, "coeff"] triples meaning coeff * zeta_N^k."""
        return [[k, self.N, rat_str(c)] for k, c in enumerate(self.coeffs) if c]

    @classmethod
    def from_json(cls, triples) -> "Cyclo":
        out = cls.zero()
        for k, N, c in triples:
            out = out + cyclo_root(int(k), int(N)) * Fraction(c)
        return out


def cyclo_root(k: int, N: int) -> Cyclo:
    """zeta_N^k, reduced modulo Phi_N."""
    if N < 1:
        raise ValueError("N must be positive")
    return Cyclo(N, _power_table(N)[k % N])


def root_order(k: int, N: int) -> int:
    return N // gcd(k, N)
