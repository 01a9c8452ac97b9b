"""The explicit polynomial maps between symmetric powers.

Multiplication by the Dickson invariant X^q Y - X Y^q, the derivation
D f = X^q df/dX + Y^q df/dY, evaluation at the rational points of the
projective line, the averaging map onto V_{q-1}, and the weight-lowering
surjections off V_{k+q-1}/D(V_k) -- together with the kernels, images
and small identities each one is checked against.

Homogeneous polynomials of degree d are coefficient vectors of length
d+1 indexed by descending X-degree (index i holds X^(d-i) Y^i).
"""

from __future__ import annotations

import math

from .fields import FieldTower
from . import linalg, modules
from .linalg import Mat, Vec
from .modules import GModule


def binom_mod(t: FieldTower, n: int, k: int) -> int:
    """Exact integer binomial reduced into the prime field."""
    if k < 0 or n < 0 or k > n:
        return 0
    return t.from_int(math.comb(n, k))


class PolyMap:
    """A linear map between modules, stored as an exact matrix."""

    def __init__(self, name: str, source: GModule, target: GModule, mat: Mat):
        if len(mat) != target.dim or (mat and len(mat[0]) != source.dim):
            raise ValueError(f"{name}: matrix shape does not match modules")
        self.name = name
        self.source = source
        self.target = target
        self.mat = mat

    @property
    def tower(self) -> FieldTower:
        return self.source.tower

    def rank(self) -> int:
        return linalg.rank(self.tower, self.mat)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def image_columns(self) -> list[Vec]:
        return linalg.columns(self.mat)

    def kernel(self) -> list[Vec]:
        return linalg.nullspace(self.tower, self.mat)

    def apply(self, v: Vec) -> Vec:
        return linalg.mat_vec(self.tower, self.mat, v)

    def check_equivariant(self, group: str) -> tuple[bool, str]:
        t = self.tower
        for name, atom in modules.generators_for(t, group):
            lhs = linalg.mat_mul(t, self.mat, self.source.atom_mat(atom))
            rhs = linalg.mat_mul(t, self.target.atom_mat(atom), self.mat)
            if lhs != rhs:
                return False, name
        return True, ""

    def __repr__(self):
        return (f"PolyMap({self.name}: {self.source.name}[{self.source.dim}] -> "
                f"{self.target.name}[{self.target.dim}])")


# -- basic polynomial data ----------------------------------------------


def theta_poly(t: FieldTower) -> Vec:
    """X^q Y - X Y^q as a degree-(q+1) coefficient vector."""
    v = [0] * (t.q + 2)
    v[1] = 1
    v[t.q] = t.minus_one
    return v


def mult_matrix(t: FieldTower, f: Vec, src_deg: int) -> Mat:
    """Matrix of multiplication by the fixed homogeneous polynomial f."""
    f_deg = len(f) - 1
    rows = src_deg + f_deg + 1
    out = linalg.zeros(rows, src_deg + 1)
    for i in range(src_deg + 1):
        for j, c in enumerate(f):
            if c:
                out[i + j][i] = c
    return out


def serre_D_matrix(t: FieldTower, k: int) -> Mat:
    """D(X^a Y^b) = a X^(a+q-1) Y^b + b X^a Y^(b+q-1), entries mod p."""
    q = t.q
    out = linalg.zeros(k + q, k + 1)
    for i in range(k + 1):
        alpha, beta = k - i, i
        ca = t.from_int(alpha)
        cb = t.from_int(beta)
        if ca:
            out[i][i] = ca
        if cb:
            out[i + q - 1][i] = t.add(out[i + q - 1][i], cb)
    return out


# -- the named maps ------------------------------------------------------


def serre_D(t: FieldTower, k: int, level: str = "q") -> PolyMap:
    if k < 0:
        raise ValueError("k must be >= 0")
    src = modules.sym_power_module(t, k, level)
    dst = modules.sym_power_module(t, k + t.q - 1, level)
    return PolyMap(f"D_{k}", src, dst, serre_D_matrix(t, k))


def theta_map(t: FieldTower, k: int) -> PolyMap:
    """Multiplication by theta: e (x) V_{k-(q+1)} -> V_k, for k > q."""
    if k <= t.q:
        raise ValueError("theta requires k > q")
    src = modules.det_twist(modules.sym_power_module(t, k - t.q - 1), 1)
    dst = modules.sym_power_module(t, k)
    return PolyMap(f"theta_{k}", src, dst,
                   mult_matrix(t, theta_poly(t), k - t.q - 1))


def theta_bar_map(t: FieldTower, k: int, level: str = "q",
                  det_power: int = 0) -> PolyMap:
    """Multiplication by theta: V_{k-2} -> V_{k+q-1}, for 2 <= k <= p-1."""
    if not 2 <= k <= t.p - 1:
        raise ValueError("theta-bar requires 2 <= k <= p-1")
    src = modules.sym_power_module(t, k - 2, level)
    dst = modules.sym_power_module(t, k + t.q - 1, level)
    if det_power:
        src = modules.det_twist(src, det_power)
        dst = modules.det_twist(dst, det_power)
    return PolyMap(f"thetabar_{k}", src, dst,
                   mult_matrix(t, theta_poly(t), k - 2))


def ker_D_graded(t: FieldTower, m: int, max_degree: int = 60) -> tuple[int, int]:
    """(brute-force nullity of D on degree m, closed-form monomial count).

    The closed form counts X^(pa) Y^(pb) theta^c with pa + pb + c(q+1) = m
    and 0 <= c <= p-1 (theta^p already lies in F[X^p, Y^p]).
    """
    if m > max_degree:
        raise ValueError(f"degree {m} exceeds bound {max_degree}")
    mat = serre_D_matrix(t, m)
    dim = (m + 1) - linalg.rank(t, mat)
    count = 0
    for c in range(min(t.p - 1, m // (t.q + 1)) + 1):
        rem = m - c * (t.q + 1)
        if rem >= 0 and rem % t.p == 0:
            count += rem // t.p + 1
    return dim, count


def p1_points(t: FieldTower) -> list[tuple[int, int]]:
    """P^1(F_q) in the fixed order [1:0], then [a:1] in field order."""
    return [(1, 0)] + [(a, 1) for a in t.fq_elems]


def p1_canonical(t: FieldTower, v: tuple[int, int]) -> tuple[tuple[int, int], int]:
    """Canonical representative of the line through v, and the scalar
    lam with v = lam * rep."""
    x, y = v
    if y:
        return (t.div(x, y), 1), y
    return (1, 0), x


def proj_line_module(t: FieldTower, k: int = 0, twisted: bool = False,
                     level: str = "q") -> GModule:
    """Functions on P^1(F_q) as a module.

    twisted=False: the usual action (g.f)(P) = f(g^-1 P) on plain
    functions.  twisted=True: homogeneous degree-k functions with the
    transposed action (g.F)(v) = F(g^t v); this is the target of the
    evaluation map from V_k.
    """
    pts = p1_points(t)
    index = {pt: i for i, pt in enumerate(pts)}
    labels = tuple(f"[{t.coeffs(a)}:{t.coeffs(b)}]" for a, b in pts)

    def act(g):
        out = linalg.zeros(len(pts), len(pts))
        if twisted:
            gt = [[g[0][0], g[1][0]], [g[0][1], g[1][1]]]
            gti = linalg.inverse(t, gt)
            for j, pt in enumerate(pts):
                w = linalg.mat_vec(t, gti, list(pt))
                rep, _ = p1_canonical(t, (w[0], w[1]))
                img = linalg.mat_vec(t, gt, list(rep))
                # g^t rep = mu * pt; value of delta_pt there is mu^k
                mu = t.div(img[0], pt[0]) if pt[0] else t.div(img[1], pt[1])
                out[index[rep]][j] = t.pow_(mu, k) if k else 1
        else:
            for j, pt in enumerate(pts):
                w = linalg.mat_vec(t, g, list(pt))
                rep, _ = p1_canonical(t, (w[0], w[1]))
                out[index[rep]][j] = 1
        return out

    name = f"I_{k}^t" if twisted else "F[P1]"
    return GModule(t, level, labels, "GL2", act_elem=act, name=name)


def tau_map(t: FieldTower, k: int) -> PolyMap:
    """Evaluation of degree-k polynomials at the points of P^1(F_q)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    src = modules.sym_power_module(t, k)
    dst = proj_line_module(t, k, twisted=True)

    def ev(base, e):
        return 1 if e == 0 else (0 if base == 0 else t.pow_(base, e))

    mat = [[t.mul(ev(a, k - i), ev(b, i)) for i in range(k + 1)]
           for (a, b) in p1_points(t)]
    return PolyMap(f"tau_{k}", src, dst, mat)


def t_O_polynomial(t: FieldTower, k: int) -> Vec:
    """X^(k-(q-1)) prod_{a != 0} (X - a Y); evaluation is the delta at [1:0]."""
    if k <= t.q:
        raise ValueError("T_O requires k > q")
    prod = [1]
    for a in t.fq_units:
        prod = modules.poly_conv(t, prod, [1, t.neg(a)])
    lead = k - (t.q - 1)
    out = [0] * (k + 1)
    for j, c in enumerate(prod):
        out[j] = c  # multiplying by X^lead shifts nothing in this indexing
    return out


def vartheta_map(t: FieldTower) -> PolyMap:
    """f -> sum_P f(P) (aX + bY)^(q-1): functions on P^1 onto V_{q-1}."""
    src = proj_line_module(t, 0, twisted=False)
    dst = modules.sym_power_module(t, t.q - 1)
    cols = []
    for (a, b) in p1_points(t):
        line = [a, b]
        pw = [1]
        for _ in range(t.q - 1):
            pw = modules.poly_conv(t, pw, line)
        cols.append(pw)
    return PolyMap("vartheta", src, dst, linalg.from_columns(cols))


# -- the quotient V_{k+q-1}/D(V_k) ---------------------------------------


def D_image_basis(t: FieldTower, k: int) -> list[Vec]:
    """The listed basis of D(V_k): j X^(j+q-1) Y^(k-j) + (k-j) X^j Y^(k-j+q-1)."""
    if not 1 <= k <= t.p - 1:
        raise ValueError("requires 1 <= k <= p-1")
    q = t.q
    out = []
    for j in range(k + 1):
        v = [0] * (k + q)
        cj = t.from_int(j)
        ckj = t.from_int(k - j)
        if cj:
            v[k - j] = cj  # X^(j+q-1) Y^(k-j) has Y-degree k-j
        if ckj:
            v[k - j + q - 1] = t.add(v[k - j + q - 1], ckj)
        out.append(v)
    return out


def dvk_quotient_reps(t: FieldTower, k: int) -> tuple[list[Vec], list[str]]:
    """Fixed representatives of V_{k+q-1}/D(V_k): the monomials
    X^r Y^(k+q-1-r), k <= r <= q-1, then X^s Y^(k-2-s) theta, 0 <= s <= k-2."""
    q = t.q
    deg = k + q - 1
    reps: list[Vec] = []
    labels: list[str] = []
    for r in range(k, q):
        v = [0] * (deg + 1)
        v[deg - r] = 1
        reps.append(v)
        labels.append(f"X^{r}Y^{deg - r}")
    th = theta_poly(t)
    for s in range(k - 1):
        mono = [0] * (k - 1)
        mono[k - 2 - s] = 1
        reps.append(modules.poly_conv(t, mono, th))
        labels.append(f"X^{s}Y^{k - 2 - s}*theta")
    return reps, labels


def dvk_quotient(t: FieldTower, k: int, level: str = "q",
                 group: str | None = None, det_power: int = 0):
    """V_{k+q-1}/D(V_k) on the fixed monomial/theta representatives.

    Returns (quotient GModule, projection matrix, ambient GModule).
    """
    if not 2 <= k <= t.p - 1:
        raise ValueError("requires 2 <= k <= p-1")
    ambient = modules.sym_power_module(t, k + t.q - 1, level, group)
    if det_power:
        ambient = modules.det_twist(ambient, det_power)
    reps, labels = dvk_quotient_reps(t, k)
    sub = D_image_basis(t, k)
    quot, proj = modules.quotient_with_reps(
        ambient, sub, reps, labels=labels,
        name=f"V_{k + t.q - 1}/D(V_{k})" + (f"@e^{det_power}" if det_power else ""))
    return quot, proj, ambient


class OmegaResult:
    """Either the verified surjection omega_s or the impossibility witness."""

    def __init__(self, exists: bool, poly_map: PolyMap | None = None,
                 certificate: dict | None = None):
        self.exists = exists
        self.map = poly_map
        self.certificate = certificate

    def __repr__(self):
        if self.exists:
            return f"OmegaResult({self.map!r})"
        return f"OmegaResult(impossible, {self.certificate})"


def omega_map(t: FieldTower, k: int, s: int) -> OmegaResult:
    """The weight-lowering surjection off V_{k+q-1}/D(V_k) when q = p.

    For q = p: returns the verified equivariant surjection with kernel
    exactly the theta image; for q > p returns the certificate that the
    required unit coefficient binom(q-1-k, p-k) vanishes mod p.
    """
    if not 2 <= k <= t.p - 1:
        raise ValueError("requires 2 <= k <= p-1")
    if s == 0:
        raise ValueError("s must be nonzero")
    q, p = t.q, t.p
    if q != p:
        c = math.comb(q - 1 - k, p - k)
        cert = {
            "q": q, "p": p, "k": k,
            "binom": f"C({q - 1 - k},{p - k})",
            "binom_mod_p": c % p,
            "reason": "required coefficient is 0 mod p, so no surjection "
                      "with kernel exactly the theta image exists",
        }
        if c % p != 0:
            raise RuntimeError("certificate failed: coefficient is a unit")
        return OmegaResult(False, certificate=cert)

    quot, proj, _ = dvk_quotient(t, k, level="q", group="GL2")
    target = modules.det_twist(modules.sym_power_module(t, q - 1 - k), k)
    mat = linalg.zeros(q - k, q - 1)
    for idx, r in enumerate(range(k, q)):
        c = t.mul(s, t.div(binom_mod(t, q - 1 - k, r - k), binom_mod(t, q - 1, r)))
        mat[q - 1 - r][idx] = c
    pm = PolyMap(f"omega_{k},s", quot, target, mat)
    ok, gen = pm.check_equivariant("GL2")
    if not ok:
        raise RuntimeError(f"omega failed equivariance at {gen}")
    if pm.rank() != q - k:
        raise RuntimeError("omega is not surjective")
    # kernel exactly the theta image: dimensions match and image is killed
    tb = theta_bar_map(t, k)
    ker = pm.kernel()
    if len(ker) != k - 1:
        raise RuntimeError("omega kernel has wrong dimension")
    for col in linalg.columns(tb.mat):
        cls = linalg.mat_vec(t, proj, col)
        if any(pm.apply(cls)):
            raise RuntimeError("omega does not kill the theta image")
    return OmegaResult(True, poly_map=pm)


# -- small identities ----------------------------------------------------


def identity_checks(t: FieldTower) -> dict:
    """X^(q-1) + sum_a (aX+Y)^(q-1) = 0, and the power-sum identities."""
    q = t.q
    total = [0] * q
    total[0] = 1  # X^(q-1)
    for a in t.fq_elems:
        pw = [1]
        for _ in range(q - 1):
            pw = modules.poly_conv(t, pw, [a, 1])
        total = [t.add(x, y) for x, y in zip(total, pw)]
    vanishing = not any(total)

    power_sums_ok = True
    for j in range(1, 2 * (q - 1) + 1):
        s = 0
        for a in t.fq_units:
            s = t.add(s, t.pow_(a, j))
        expect = t.minus_one if j % (q - 1) == 0 else 0
        if s != expect:
            power_sums_ok = False
            break

    binom_sign_ok = all(
        binom_mod(t, q - 1, i) == (1 if i % 2 == 0 else t.minus_one)
        for i in range(q))
    return {
        "vanishing_identity": vanishing,
        "power_sums": power_sums_ok,
        "binom_alternating": binom_sign_ok,
    }
