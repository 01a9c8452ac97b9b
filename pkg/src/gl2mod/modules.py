"""Finite-dimensional representations with exact action matrices.

A GModule pairs a labeled basis with a rule producing the action matrix
of any group element.  Polynomial modules act by direct substitution;
basis-transcribed modules (curve cohomology, quotients) act through
generator atoms glued along Bruhat words.  On top of that sit the
workhorses every verification rests on: the representation checker, the
intertwiner solver, subquotients, section solving and hom-space rank
enumeration.
"""

from __future__ import annotations

import itertools
from random import Random

from .fields import FieldTower
from . import linalg
from .linalg import Mat, Vec

Atom = tuple  # ("weyl",) | ("unip", u) | ("diag", x1, x2)

GROUPS = ("SL2", "GL2", "U2")


def weyl_atom() -> Atom:
    return ("weyl",)


def unip_atom(u: int) -> Atom:
    return ("unip", u)


def diag_atom(x1: int, x2: int) -> Atom:
    return ("diag", x1, x2)


def atom_matrix(t: FieldTower, atom: Atom) -> Mat:
    kind = atom[0]
    if kind == "weyl":
        return [[0, 1], [t.minus_one, 0]]
    if kind == "unip":
        return [[1, 0], [atom[1], 1]]
    if kind == "diag":
        return [[atom[1], 0], [0, atom[2]]]
    raise ValueError(f"unknown atom {atom!r}")


def word_matrix(t: FieldTower, word: list[Atom]) -> Mat:
    g = linalg.identity(2)
    for atom in word:
        g = linalg.mat_mul(t, g, atom_matrix(t, atom))
    return g


def bruhat_decompose(t: FieldTower, g: Mat) -> list[Atom]:
    """Factor g into diag / lower-unipotent / weyl atoms.

    Lower-triangular input never produces a weyl atom.  The word
    multiplies back to g exactly.
    """
    a, b = g[0]
    c, d = g[1]
    det = linalg.det2(t, g)
    if det == 0:
        raise ValueError("singular matrix has no Bruhat word")
    word: list[Atom] = []
    if b == 0:
        u = t.div(c, a)
        if u:
            word.append(unip_atom(u))
        if (a, d) != (1, 1):
            word.append(diag_atom(a, d))
        return word
    # g = L(d/b) T(b, det/b) W L(a/b)
    u1 = t.div(d, b)
    if u1:
        word.append(unip_atom(u1))
    x1, x2 = b, t.div(det, b)
    if (x1, x2) != (1, 1):
        word.append(diag_atom(x1, x2))
    word.append(weyl_atom())
    u2 = t.div(a, b)
    if u2:
        word.append(unip_atom(u2))
    return word


def u2_split(t: FieldTower, g: Mat) -> tuple[int, Mat]:
    """Write g in U_2(F_{q^2}) as diag(z, z^-q) * h with h in SL_2(F_q)."""
    for j in range(t.M):
        z = t.exp[j]
        zi = t.inv(z)
        zq = t.pow_(z, t.q)
        h = [
            [t.mul(zi, g[0][0]), t.mul(zi, g[0][1])],
            [t.mul(zq, g[1][0]), t.mul(zq, g[1][1])],
        ]
        if all(t.in_fq(x) for row in h for x in row) and linalg.det2(t, h) == 1:
            return z, h
    raise ValueError("matrix is not in U_2(F_{q^2})")


class GModule:
    """A representation: labeled basis plus exact generator actions.

    `level` is "q" or "q2" (scalars of the underlying vector space);
    `group` is the group whose relations check_representation verifies
    and whose elements `act` accepts.  Immutable once constructed.
    """

    def __init__(self, tower: FieldTower, level: str, labels, group: str,
                 act_atom=None, act_elem=None, name: str = ""):
        if group not in GROUPS:
            raise ValueError(f"unknown group {group!r}")
        self.tower = tower
        self.level = level
        self.labels = tuple(labels)
        self.group = group
        self.name = name or "module"
        self._act_atom = act_atom
        self._act_elem = act_elem
        self._cache: dict[Atom, Mat] = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def scalars(self) -> tuple[int, ...]:
        t = self.tower
        return t.fq_elems if self.level == "q" else tuple(range(t.q2))

    def unit_scalars(self) -> tuple[int, ...]:
        t = self.tower
        return t.fq_units if self.level == "q" else t.fq2_units

    def atom_mat(self, atom: Atom) -> Mat:
        m = self._cache.get(atom)
        if m is None:
            if self._act_atom is not None:
                m = self._act_atom(atom)
            else:
                m = self._act_elem(atom_matrix(self.tower, atom))
            self._cache[atom] = m
        return m

    def act(self, g: Mat) -> Mat:
        """Action matrix of a group element (columns = images of basis)."""
        if self._act_elem is not None:
            return self._act_elem(g)
        return self.act_word_of(g)

    def act_word_of(self, g: Mat) -> Mat:
        t = self.tower
        if self.group == "U2" and not all(t.in_fq(x) for row in g for x in row):
            z, h = u2_split(t, g)
            word = [diag_atom(z, t.pow_(z, -t.q))] + bruhat_decompose(t, h)
        else:
            word = bruhat_decompose(t, g)
        return self.act_word(word)

    def act_word(self, word: list[Atom]) -> Mat:
        t = self.tower
        m = linalg.identity(self.dim)
        for atom in word:
            m = linalg.mat_mul(t, m, self.atom_mat(atom))
        return m

    def __repr__(self):
        return f"GModule({self.name}, dim={self.dim}, group={self.group}, level={self.level})"


# -- polynomial modules -----------------------------------------------


def poly_conv(t: FieldTower, a: Vec, b: Vec) -> Vec:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = t.add(out[i + j], t.mul(x, y))
    return out


def monomial_labels(k: int) -> list[str]:
    # fixed order: descending X-degree
    return [f"X^{k - i}Y^{i}" for i in range(k + 1)]


def substitution_matrix(t: FieldTower, k: int, g: Mat) -> Mat:
    """Action of g on homogeneous degree-k polynomials, X -> aX+cY, Y -> bX+dY."""
    a, b = g[0]
    c, d = g[1]
    gx = [a, c]  # coefficients of aX + cY in the (X, Y) basis
    gy = [b, d]
    powx = [[1]]
    powy = [[1]]
    for _ in range(k):
        powx.append(poly_conv(t, powx[-1], gx))
        powy.append(poly_conv(t, powy[-1], gy))
    cols = [poly_conv(t, powx[k - i], powy[i]) for i in range(k + 1)]
    return linalg.from_columns(cols)


def sym_power_module(t: FieldTower, k: int, level: str = "q",
                     group: str | None = None) -> GModule:
    """V_k with basis X^k, X^(k-1)Y, ..., Y^k."""
    if k < 0:
        raise ValueError("negative k lives only in the Grothendieck group")
    if group is None:
        group = "U2" if level == "q2" else "GL2"
    return GModule(
        t, level, monomial_labels(k), group,
        act_elem=lambda g: substitution_matrix(t, k, g),
        name=f"V_{k}" + ("/q2" if level == "q2" else ""),
    )


def trivial_module(t: FieldTower, level: str = "q", group: str = "GL2") -> GModule:
    return GModule(t, level, ("1",), group, act_elem=lambda g: [[1]], name="triv")


# -- transforms --------------------------------------------------------


def det_twist(m: GModule, power: int, name: str | None = None) -> GModule:
    t = m.tower

    def act(g):
        d = t.pow_(linalg.det2(t, g), power)
        return linalg.mat_scale(t, d, m.act(g))

    return GModule(t, m.level, m.labels, m.group, act_elem=act,
                   name=name or f"e^{power}*{m.name}")


def frobenius_twist(m: GModule, i: int) -> GModule:
    t = m.tower
    e = t.p ** i

    def act(g):
        gf = [[t.pow_(x, e) if x else 0 for x in row] for row in g]
        return m.act(gf)

    return GModule(t, m.level, m.labels, m.group, act_elem=act,
                   name=f"Fr^{i}({m.name})")


def transpose_dual(m: GModule) -> GModule:
    t = m.tower

    def act(g):
        gt = [[g[0][0], g[1][0]], [g[0][1], g[1][1]]]
        return m.act(linalg.inverse(t, gt))

    return GModule(t, m.level, m.labels, m.group, act_elem=act,
                   name=f"{m.name}^t")


def dual(m: GModule) -> GModule:
    t = m.tower

    def act(g):
        return linalg.transpose(linalg.inverse(t, m.act(g)))

    return GModule(t, m.level, tuple(f"{l}*" for l in m.labels), m.group,
                   act_elem=act, name=f"{m.name}*")


def tensor(m: GModule, n: GModule) -> GModule:
    if m.tower is not n.tower or m.level != n.level:
        raise ValueError("tensor factors must share field")
    t = m.tower
    labels = tuple(f"{a}(x){b}" for a in m.labels for b in n.labels)

    def act(g):
        return linalg.kron(t, m.act(g), n.act(g))

    return GModule(t, m.level, labels, m.group, act_elem=act,
                   name=f"{m.name}(x){n.name}")


def direct_sum(m: GModule, n: GModule) -> GModule:
    if m.tower is not n.tower or m.level != n.level:
        raise ValueError("summands must share field")
    t = m.tower

    def act(g):
        a, b = m.act(g), n.act(g)
        out = linalg.zeros(m.dim + n.dim, m.dim + n.dim)
        for i in range(m.dim):
            out[i][: m.dim] = a[i]
        for i in range(n.dim):
            out[m.dim + i][m.dim:] = b[i]
        return out

    return GModule(t, m.level, m.labels + n.labels, m.group, act_elem=act,
                   name=f"{m.name}(+){n.name}")


# -- generators and sampling -------------------------------------------


def fq_basis(t: FieldTower) -> list[int]:
    """An F_p-basis of F_q: powers of eps (eps generates F_q over F_p)."""
    return [t.pow_(t.eps, i) for i in range(t.n)] if t.q > 2 else [1]


def generators_for(t: FieldTower, group: str) -> list[tuple[str, Atom]]:
    gens: list[tuple[str, Atom]] = [("weyl", weyl_atom())]
    if group == "U2":
        for a in t.fq_units:
            gens.append((f"unip({t.coeffs(a)})", unip_atom(a)))
        z = t.g
        gens.append(("mu-torus(g)", diag_atom(z, t.pow_(z, -t.q))))
        return gens
    for b in fq_basis(t):
        gens.append((f"unip({t.coeffs(b)})", unip_atom(b)))
    e = t.eps
    gens.append(("diag(eps,1/eps)", diag_atom(e, t.inv(e))))
    if group == "GL2":
        gens.append(("diag(eps,1)", diag_atom(e, 1)))
    return gens


def torus_pairs(t: FieldTower, group: str) -> list[tuple[int, int]]:
    if group == "U2":
        return [(z, t.pow_(z, -t.q)) for z in t.fq2_units]
    if group == "SL2":
        return [(x, t.inv(x)) for x in t.fq_units]
    return [(x1, x2) for x1 in t.fq_units for x2 in t.fq_units]


def random_element(t: FieldTower, group: str, rng: Random) -> Mat:
    if group == "U2":
        z = t.exp[rng.randrange(t.M)]
        h = random_element(t, "SL2", rng)
        return linalg.mat_mul(t, [[z, 0], [0, t.pow_(z, -t.q)]], h)
    while True:
        g = [[t.fq_elems[rng.randrange(t.q)] for _ in range(2)] for _ in range(2)]
        d = linalg.det2(t, g)
        if d == 0:
            continue
        if group == "SL2":
            di = t.inv(d)
            g[0] = [t.mul(di, x) for x in g[0]]
        return g


# -- verification ------------------------------------------------------


class CheckResult:
    def __init__(self, ok: bool, witness: str = ""):
        self.ok = ok
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"CheckResult(ok={self.ok}, witness={self.witness!r})"


def check_representation(m: GModule, rng: Random | None = None,
                         n_random: int = 100) -> CheckResult:
    """Verify the generator assignment satisfies the group relations.

    Checks, as exact matrix identities: unipotent additivity, torus
    multiplicativity, weyl^2 = diag(-1,-1), torus-unipotent conjugation,
    and n_random random product consistencies through Bruhat words.
    Fails with the first violated identity.
    """
    t = m.tower
    rng = rng or Random(0)
    params = list(t.fq_elems)
    if len(params) > 8:
        params = [params[rng.randrange(len(params))] for _ in range(8)]
    for a in params:
        for b in params:
            lhs = linalg.mat_mul(t, m.atom_mat(unip_atom(a)), m.atom_mat(unip_atom(b)))
            s = t.add(a, b)
            rhs = m.atom_mat(unip_atom(s)) if s else linalg.identity(m.dim)
            if lhs != rhs:
                return CheckResult(False, f"u({t.coeffs(a)})u({t.coeffs(b)}) != u(sum)")
    pairs = torus_pairs(t, m.group)
    if len(pairs) > 12:
        pairs = [pairs[rng.randrange(len(pairs))] for _ in range(12)]
    for (x1, x2) in pairs:
        for (y1, y2) in pairs:
            lhs = linalg.mat_mul(t, m.atom_mat(diag_atom(x1, x2)),
                                 m.atom_mat(diag_atom(y1, y2)))
            rhs = m.atom_mat(diag_atom(t.mul(x1, y1), t.mul(x2, y2)))
            if lhs != rhs:
                return CheckResult(False, "torus multiplicativity fails "
                                   f"at {t.coeffs(x1)},{t.coeffs(y1)}")
    w = m.atom_mat(weyl_atom())
    mm = t.minus_one
    if linalg.mat_mul(t, w, w) != m.atom_mat(diag_atom(mm, mm)):
        return CheckResult(False, "weyl^2 != diag(-1,-1)")
    for (x1, x2) in pairs:
        for u in ([1] if t.q == 2 else [1, t.eps]):
            conj = linalg.mat_mul(
                t, linalg.mat_mul(t, m.atom_mat(diag_atom(x1, x2)),
                                  m.atom_mat(unip_atom(u))),
                m.atom_mat(diag_atom(t.inv(x1), t.inv(x2))))
            uprime = t.mul(u, t.div(x2, x1))
            rhs = m.atom_mat(unip_atom(uprime)) if uprime else linalg.identity(m.dim)
            if conj != rhs:
                return CheckResult(False, "torus-unipotent conjugation fails "
                                   f"at x1={t.coeffs(x1)}, u={t.coeffs(u)}")
    for i in range(n_random):
        g = random_element(t, m.group, rng)
        h = random_element(t, m.group, rng)
        gh = linalg.mat_mul(t, g, h)
        if linalg.mat_mul(t, m.act(g), m.act(h)) != m.act(gh):
            return CheckResult(False, f"product consistency fails at sample {i}")
    return CheckResult(True)


def intertwiner_space(m: GModule, n: GModule, group: str) -> list[Mat]:
    """Basis of Hom_group(m, n) = {T : T rho_m(g) = rho_n(g) T}."""
    if m.tower is not n.tower:
        raise ValueError("modules over different towers")
    t = m.tower
    dm, dn = m.dim, n.dim
    rows: list[Vec] = []
    for _, atom in generators_for(t, group):
        a = m.atom_mat(atom)
        b = n.atom_mat(atom)
        # (T a - b T)[i][j] = 0: unknowns T[i][k] flattened as i*dm + k
        for i in range(dn):
            for j in range(dm):
                row = [0] * (dn * dm)
                for k in range(dm):
                    row[i * dm + k] = t.add(row[i * dm + k], a[k][j])
                for k in range(dn):
                    row[k * dm + j] = t.sub(row[k * dm + j], b[i][k])
                rows.append(row)
    basis = linalg.nullspace(t, rows)
    return [[v[i * dm:(i + 1) * dm] for i in range(dn)] for v in basis]


def check_intertwiner(m: GModule, n: GModule, T: Mat, elems: list[Mat]) -> bool:
    t = m.tower
    for g in elems:
        if linalg.mat_mul(t, T, m.act(g)) != linalg.mat_mul(t, n.act(g), T):
            return False
    return True


def hom_elements(t: FieldTower, basis: list[Mat], scalars) -> "itertools.chain":
    """All nonzero combinations up to scalar: first nonzero coefficient 1."""
    d = len(basis)
    tail = [s for s in scalars]

    def combos():
        for lead in range(d):
            for rest in itertools.product(tail, repeat=d - 1 - lead):
                coeffs = [0] * lead + [1] + list(rest)
                yield coeffs

    def materialize(coeffs):
        rows = len(basis[0])
        cols = len(basis[0][0])
        out = linalg.zeros(rows, cols)
        for c, bm in zip(coeffs, basis):
            if c:
                for i in range(rows):
                    row = bm[i]
                    oi = out[i]
                    for j in range(cols):
                        if row[j]:
                            oi[j] = t.add(oi[j], t.mul(c, row[j]))
        return out

    return (materialize(c) for c in combos())


def projective_count(nscalars: int, d: int) -> int:
    return sum(nscalars ** (d - 1 - lead) for lead in range(d))


def max_rank_in_hom(m: GModule, n: GModule, group: str,
                    bound: int = 10 ** 6) -> int:
    """Maximum rank over the nonzero elements of Hom_group(m, n)."""
    t = m.tower
    basis = intertwiner_space(m, n, group)
    if not basis:
        return 0
    scalars = m.scalars()
    if projective_count(len(scalars), len(basis)) > bound:
        raise ValueError("hom-space enumeration bound exceeded")
    best = 0
    for T in hom_elements(t, basis, scalars):
        r = linalg.rank(t, T)
        if r > best:
            best = r
            if best == min(m.dim, n.dim):
                break
    return best


def find_invertible_intertwiner(m: GModule, n: GModule, group: str,
                                bound: int = 10 ** 6) -> Mat | None:
    """An invertible element of Hom_group(m, n), if one exists."""
    if m.dim != n.dim:
        return None
    t = m.tower
    basis = intertwiner_space(m, n, group)
    if not basis:
        return None
    scalars = m.scalars()
    if projective_count(len(scalars), len(basis)) > bound:
        raise ValueError("hom-space enumeration bound exceeded")
    for T in hom_elements(t, basis, scalars):
        if linalg.inverse(t, T) is not None:
            return T
    return None


# -- subquotients -------------------------------------------------------


def coords_in_echelon(t: FieldTower, echelon: list[Vec], v: Vec) -> Vec | None:
    coeffs = []
    v = list(v)
    for b in echelon:
        lead = next(i for i, x in enumerate(b) if x)
        c = v[lead]
        coeffs.append(c)
        if c:
            v = [t.sub(x, t.mul(c, y)) for x, y in zip(v, b)]
    return coeffs if not any(v) else None


def subquotient(m: GModule, span: list[Vec]):
    """Split m along an invariant subspace.

    Returns (submodule, quotient, projection).  The submodule basis is
    the column-reduced echelon basis of span; the quotient basis is the
    complementary set of original basis labels (non-pivot positions).
    Raises ValueError naming the violating generator if span is not
    invariant.
    """
    t = m.tower
    ech = linalg.column_echelon(t, span)
    gens = generators_for(t, m.group)
    for name, atom in gens:
        a = m.atom_mat(atom)
        for b in ech:
            if not linalg.in_span(t, ech, linalg.mat_vec(t, a, b)):
                raise ValueError(f"span not invariant under {name}")
    pivots = [next(i for i, x in enumerate(b) if x) for b in ech]
    free = [i for i in range(m.dim) if i not in set(pivots)]

    sub_labels = tuple(f"s{i}" for i in range(len(ech)))
    quot_labels = tuple(m.labels[i] for i in free)

    def act_sub(atom):
        a = m.atom_mat(atom)
        cols = [coords_in_echelon(t, ech, linalg.mat_vec(t, a, b)) for b in ech]
        return linalg.from_columns(cols)

    def act_quot(atom):
        a = m.atom_mat(atom)
        cols = []
        for i in free:
            v = linalg.reduce_mod_span(t, ech, [a[r][i] for r in range(m.dim)])
            cols.append([v[j] for j in free])
        return linalg.from_columns(cols)

    sub = GModule(t, m.level, sub_labels, m.group, act_atom=act_sub,
                  name=f"sub({m.name})")
    quot = GModule(t, m.level, quot_labels, m.group, act_atom=act_quot,
                   name=f"quot({m.name})")
    # projection sends a vector to the free coordinates of its class
    proj = linalg.from_columns(
        [[linalg.reduce_mod_span(t, ech, _unit(m.dim, i))[j] for j in free]
         for i in range(m.dim)])
    return sub, quot, proj


def _unit(n: int, i: int) -> Vec:
    v = [0] * n
    v[i] = 1
    return v


def quotient_with_reps(m: GModule, span: list[Vec], reps: list[Vec],
                       labels=None, name: str = ""):
    """Quotient of m by span, on a fixed set of representative vectors.

    reps + span must be a basis of m.  Returns (quotient, projection)
    where projection expresses a vector's class in the representative
    basis.
    """
    t = m.tower
    ech = linalg.column_echelon(t, span)
    gens = generators_for(t, m.group)
    for gname, atom in gens:
        a = m.atom_mat(atom)
        for b in ech:
            if not linalg.in_span(t, ech, linalg.mat_vec(t, a, b)):
                raise ValueError(f"span not invariant under {gname}")
    basis_cols = [list(r) for r in reps] + [list(b) for b in ech]
    bmat = linalg.from_columns(basis_cols)
    binv = linalg.inverse(t, bmat)
    if binv is None:
        raise ValueError("representatives do not complement the subspace")
    nreps = len(reps)
    proj = binv[:nreps]

    def act_quot(atom):
        a = m.atom_mat(atom)
        cols = [linalg.mat_vec(t, proj, linalg.mat_vec(t, a, list(r))) for r in reps]
        return linalg.from_columns(cols)

    quot = GModule(t, m.level, labels or tuple(f"r{i}" for i in range(nreps)),
                   m.group, act_atom=act_quot, name=name or f"quot({m.name})")
    return quot, proj


# -- section solving -----------------------------------------------------


def is_equivariant(t: FieldTower, src: GModule, dst: GModule, T: Mat,
                   group: str) -> tuple[bool, str]:
    for name, atom in generators_for(t, group):
        lhs = linalg.mat_mul(t, T, src.atom_mat(atom))
        rhs = linalg.mat_mul(t, dst.atom_mat(atom), T)
        if lhs != rhs:
            return False, name
    return True, ""


class SectionResult:
    def __init__(self, exists: bool, section: Mat | None, detail: str):
        self.exists = exists
        self.section = section
        self.detail = detail

    def __repr__(self):
        return f"SectionResult(exists={self.exists}, detail={self.detail!r})"


def section_exists(pi: Mat, m: GModule, quot: GModule, group: str) -> SectionResult:
    """Solve for an equivariant s: quot -> m with pi s = id, exactly.

    pi must be an equivariant surjection m -> quot (checked).  Returns a
    witness section or a certificate of emptiness (the affine system is
    inconsistent).
    """
    t = m.tower
    ok, gen = is_equivariant(t, m, quot, pi, group)
    if not ok:
        raise ValueError(f"pi is not equivariant (generator {gen})")
    if linalg.rank(t, pi) != quot.dim:
        raise ValueError("pi is not surjective")
    dm, dq = m.dim, quot.dim
    rows: list[Vec] = []
    rhs: list[int] = []
    # pi s = id
    for i in range(dq):
        for j in range(dq):
            row = [0] * (dm * dq)
            for k in range(dm):
                row[k * dq + j] = pi[i][k]
            rows.append(row)
            rhs.append(1 if i == j else 0)
    # s rho_quot(g) = rho_m(g) s on generators
    for _, atom in generators_for(t, group):
        a = quot.atom_mat(atom)
        b = m.atom_mat(atom)
        for i in range(dm):
            for j in range(dq):
                row = [0] * (dm * dq)
                for k in range(dq):
                    row[i * dq + k] = t.add(row[i * dq + k], a[k][j])
                for k in range(dm):
                    row[k * dq + j] = t.sub(row[k * dq + j], b[i][k])
                rows.append(row)
                rhs.append(0)
    sol = linalg.solve(t, rows, rhs)
    if sol is None:
        return SectionResult(False, None, "affine system inconsistent")
    s = [sol[i * dq:(i + 1) * dq] for i in range(dm)]
    return SectionResult(True, s, "section found")
