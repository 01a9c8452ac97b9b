"""Exact arithmetic in Z[zeta_M], M = q^2 - 1.

Elements are integer coefficient vectors reduced modulo the M-th
cyclotomic polynomial, which is computed by exact integer division of
x^M - 1 by the product of the lower cyclotomic polynomials.  There is
deliberately no division: every character formula with a denominator is
evaluated upstream as a geometric sum.

The Teichmueller lift chi sends the fixed generator g of F_{q^2}^x to
the canonical root zeta, so chi(x) = zeta^dlog(x).
"""

from __future__ import annotations

from functools import lru_cache

from .fields import FieldTower


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    lead = den[-1]
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        out[i - dd] = c
        for j in range(dd + 1):
            num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic(d)))
    return tuple(_poly_divexact(num, den))


class CycloRing:
    """Z[x]/(Phi_M(x)) with canonical reduced representatives."""

    def __init__(self, M: int):
        self.M = M
        self.phi = cyclotomic(M)
        self.deg = len(self.phi) - 1
        self._zeta_pows = self._build_zeta_pows()
        self.zero = CycloInt(self, (0,) * self.deg)
        self.one = self.const(1)

    def _build_zeta_pows(self) -> list[tuple[int, ...]]:
        pows = []
        cur = [1] + [0] * (self.deg - 1)
        for _ in range(self.M):
            pows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [cur[i] - top * self.phi[i] for i in range(self.deg)]
        return pows

    def const(self, c: int) -> "CycloInt":
        v = [0] * self.deg
        v[0] = c
        return CycloInt(self, tuple(v))

    def zeta(self, j: int) -> "CycloInt":
        return CycloInt(self, self._zeta_pows[j % self.M])

    def reduce(self, coeffs: list[int]) -> tuple[int, ...]:
        c = list(coeffs)
        dd = self.deg
        for i in range(len(c) - 1, dd - 1, -1):
            t = c[i]
            if t:
                c[i] = 0
                for j in range(dd):
                    c[i - dd + j] -= t * self.phi[j]
        c = c[:dd]
        c += [0] * (dd - len(c))
        return tuple(c)

    def element(self, coeffs) -> "CycloInt":
        return CycloInt(self, self.reduce(list(coeffs)))

    def __repr__(self):
        return f"CycloRing(M={self.M})"


class CycloInt:
    """An element of Z[zeta_M]; immutable, equality is coefficientwise."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: CycloRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.c = coeffs

    def __add__(self, other: "CycloInt") -> "CycloInt":
        return CycloInt(self.ring, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "CycloInt") -> "CycloInt":
        return CycloInt(self.ring, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.ring, tuple(-a for a in self.c))

    def __mul__(self, other) -> "CycloInt":
        if isinstance(other, int):
            return CycloInt(self.ring, tuple(a * other for a in self.c))
        prod = [0] * (2 * self.ring.deg - 1)
        for i, ai in enumerate(self.c):
            if ai:
                for j, bj in enumerate(other.c):
                    prod[i + j] += ai * bj
        return CycloInt(self.ring, self.ring.reduce(prod))

    def __rmul__(self, other: int) -> "CycloInt":
        return self * other

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.ring.const(other)
        return isinstance(other, CycloInt) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __repr__(self):
        return f"CycloInt{list(self.c)}"


@lru_cache(maxsize=None)
def ring_for(M: int) -> CycloRing:
    return CycloRing(M)


def teichmuller(t: FieldTower, x: int) -> CycloInt:
    """Lift a unit of F_{q^2} to the root of unity zeta^dlog(x)."""
    if x == 0:
        raise ValueError("Teichmueller lift of 0 is undefined")
    return ring_for(t.M).zeta(t.dlog(x))
