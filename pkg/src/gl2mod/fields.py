"""Deterministic construction of the tower F_p < F_q < F_{q^2}.

All field elements live in the single quotient ring F_p[x]/(f) with f a
monic irreducible of degree 2n, encoded as integers in [0, p^(2n)) whose
base-p digits are the polynomial coefficients (low degree first).  The
class of x is required to generate the multiplicative group, which makes
discrete logs, Teichmueller exponents and the subfield F_q = Fix(Frob^n)
immediate.

The defining polynomial is the lexicographically smallest monic
irreducible (coefficient tuples ordered low degree first) whose root
generates, so two runs -- or two machines -- always agree on every
derived symbol: the generator g, epsilon = g^(q+1), sqrt(epsilon), and
the embedding iota of F_{q^2} into 2x2 matrices over F_q.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

MAX_Q_SUITES = 13
MAX_Q_FIELDS = 49

# add/neg tables are built only below this many ring elements
_TABLE_LIMIT = 1500


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    # a, b reduced mod f; f monic, coefficients low degree first
    deg = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg):
                prod[i - deg + j] = (prod[i - deg + j] - c * f[j]) % p
    out = prod[:deg]
    while len(out) < deg:
        out.append(0)
    return out


def _polypowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    deg = len(f) - 1
    res = [0] * deg
    res[0] = 1
    base = list(a)
    while e:
        if e & 1:
            res = _polymulmod(res, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return res


def _trim(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    r = _trim(list(a))
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while len(r) - 1 >= db:
        c = r[-1] * inv % p
        off = len(r) - 1 - db
        for j in range(db + 1):
            r[off + j] = (r[off + j] - c * b[j]) % p
        _trim(r)
    return r


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Rabin test for a monic polynomial, coefficients low degree first."""
    f = list(coeffs)
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        return False
    x = [0, 1] + [0] * (d - 2) if d >= 2 else [0]
    if d == 1:
        return True
    # x^(p^d) == x mod f
    xp = _polypowmod(x, p ** d, f, p)
    target = x + [0] * (d - len(x))
    if xp != target[:d]:
        return False
    for ell in _prime_factors(d):
        h = _polypowmod(x, p ** (d // ell), f, p)
        diff = [(h[i] - target[i]) % p for i in range(d)]
        g = _poly_gcd(diff, f, p)
        if len(g) > 1:
            return False
    return True


def monic_irreducibles(p: int, degree: int):
    """Yield monic irreducible coefficient tuples in lexicographic order.

    Tuples are (c_0, ..., c_{d-1}, 1), low degree first; the scan order is
    the tuple order on (c_0, ..., c_{d-1}).
    """
    for tail in itertools.product(range(p), repeat=degree):
        coeffs = tail + (1,)
        if is_irreducible(coeffs, p):
            yield coeffs


class FieldTower:
    """The tower F_p < F_q < F_{q^2} with fixed generator g of F_{q^2}^x.

    Elements are ints in [0, q^2) encoding base-p coefficient vectors.
    Immutable after construction; every operation is a pure function of
    its arguments.
    """

    def __init__(self, p: int, n: int, max_q: int = MAX_Q_FIELDS):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n < 1:
            raise ValueError(f"n = {n} must be >= 1")
        q = p ** n
        if q > max_q:
            raise ValueError(f"q = {q} exceeds configured bound {max_q}")
        self.p = p
        self.n = n
        self.q = q
        self.q2 = q * q
        self.M = self.q2 - 1

        self.poly = self._find_poly()
        self._build_tables()

        self.g = self.exp[1]
        self.eps = self.exp[(q + 1) % self.M]
        # smallest j with (g^j)^2 = eps; exists iff p odd
        self.sqrt_eps = self.exp[(q + 1) // 2] if p != 2 else None
        self.one = 1
        self.zero = 0
        self.minus_one = self.neg(1)

    # -- construction ------------------------------------------------

    def _find_poly(self) -> tuple[int, ...]:
        d = 2 * self.n
        for coeffs in monic_irreducibles(self.p, d):
            if self._root_order_is_full(coeffs):
                return coeffs
        raise RuntimeError("no generating polynomial found")  # unreachable

    def _root_order_is_full(self, coeffs: tuple[int, ...]) -> bool:
        f = list(coeffs)
        x = [0, 1] + [0] * (2 * self.n - 2)
        for ell in _prime_factors(self.M):
            h = _polypowmod(x, self.M // ell, f, self.p)
            if h == [1] + [0] * (2 * self.n - 1):
                return False
        h = _polypowmod(x, self.M, f, self.p)
        return h == [1] + [0] * (2 * self.n - 1)

    def _encode(self, digits) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _decode(self, e: int) -> list[int]:
        out = []
        for _ in range(2 * self.n):
            e, r = divmod(e, self.p)
            out.append(r)
        return out

    def _build_tables(self):
        p, M = self.p, self.M
        f = list(self.poly)
        deg = 2 * self.n
        exp = [0] * M
        log = [-1] * (self.q2)
        cur = [1] + [0] * (deg - 1)
        for j in range(M):
            e = self._encode(cur)
            exp[j] = e
            log[e] = j
            # multiply by x and reduce (f monic)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(deg):
                    cur[i] = (cur[i] - top * f[i]) % p
        if exp[0] != 1:
            raise RuntimeError("internal error: g^0 != 1")
        self.exp = exp
        self.log = log

        if self.q2 <= _TABLE_LIMIT:
            add = [[0] * self.q2 for _ in range(self.q2)]
            digits = [self._decode(e) for e in range(self.q2)]
            for a in range(self.q2):
                da = digits[a]
                for b in range(a, self.q2):
                    db = digits[b]
                    s = self._encode([(da[i] + db[i]) % p for i in range(deg)])
                    add[a][b] = s
                    add[b][a] = s
            self._add = add
        else:
            self._add = None

        # F_q = fixed points of Frobenius x -> x^q; its nonzero part is
        # the subgroup of index q+1, so dlogs are the multiples of q+1.
        fq = [0] + [exp[(j * (self.q + 1)) % M] for j in range(self.q - 1)]
        self.fq_elems = tuple(sorted(fq))
        self.fq_units = tuple(e for e in self.fq_elems if e != 0)
        self.fq2_units = tuple(exp)

    # -- arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        p = self.p
        da, db = self._decode(a), self._decode(b)
        return self._encode([(da[i] + db[i]) % p for i in range(len(da))])

    def neg(self, a: int) -> int:
        p = self.p
        da = self._decode(a)
        return self._encode([(-c) % p for c in da])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        j = self.log[a] + self.log[b]
        if j >= self.M:
            j -= self.M
        return self.exp[j]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(-self.log[a]) % self.M]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, e: int) -> int:
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return self.exp[(self.log[a] * e) % self.M]

    def frob(self, a: int) -> int:
        return self.pow_(a, self.q) if a else 0

    def from_int(self, m: int) -> int:
        return m % self.p

    def in_fq(self, a: int) -> bool:
        return a == 0 or (self.log[a] * self.q) % self.M == self.log[a]

    def coeffs(self, a: int) -> list[int]:
        """Coefficient vector over F_p, low degree first."""
        return self._decode(a)

    # -- tower-level symbols -------------------------------------------

    def dlog(self, x: int) -> int:
        if x == 0:
            raise ValueError("dlog of 0 is undefined")
        return self.log[x]

    def norm(self, c: int) -> int:
        """The norm F_{q^2} -> F_q, c -> c^(q+1)."""
        return self.pow_(c, self.q + 1) if c else 0

    def iota(self, c: int) -> list[list[int]]:
        """Embed c = x + y*sqrt(eps) in F_{q^2} as [[x, y*eps], [y, x]]."""
        if self.p == 2:
            raise ValueError("iota requires p odd")
        s = self.sqrt_eps
        inv2 = self.inv(self.from_int(2))
        cq = self.frob(c)
        x = self.mul(self.add(c, cq), inv2)
        y = self.mul(self.sub(c, cq), self.mul(inv2, self.inv(s)))
        return [[x, self.mul(y, self.eps)], [y, x]]

    def describe(self) -> dict:
        """Reproducibility record echoed into every report."""
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "poly": list(self.poly),
            "g": self.coeffs(self.g),
            "eps": self.coeffs(self.eps),
        }

    def __repr__(self):
        return f"FieldTower(p={self.p}, n={self.n}, poly={list(self.poly)})"


@lru_cache(maxsize=None)
def build_tower(p: int, n: int, max_q: int = MAX_Q_FIELDS) -> FieldTower:
    """Build (and cache) the deterministic tower for q = p^n."""
    return FieldTower(p, n, max_q=max_q)


def tower_for_q(q: int, max_q: int = MAX_Q_FIELDS) -> FieldTower:
    """Resolve a prime power q to its tower; error if q is not one."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return build_tower(p, n, max_q=max_q)
    raise ValueError(f"q = {q} is not a prime power")
