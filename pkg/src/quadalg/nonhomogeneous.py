"""Nonhomogeneous quadratic algebras T(E)/(P) with P = {x + ψ₁(x) + ψ₀(x)1 : x ∈ R}.

Relations are always stored in this form: for a Lie bracket the relation
x⊗y − y⊗x − [x,y] gives ψ₁(x⊗y − y⊗x) = −[x,y].  The relation basis is the
canonical echelon basis of the quadratic part R, and ψ₁, ψ₀ are recorded on it.

Elements of F²(T(E)) use the coordinates [E⊗E block | E block | constant].
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConditionAFailed,
    ConditionIFailed,
    InvariantViolation,
    MalformedStructureConstants,
    VerificationFailed,
)
from .linalg import LinearMap, Matrix, Subspace, add_scaled, intersect, rref_vectors
from .quadratic import (
    DEFAULT_CUTOFF,
    QuadraticPresentation,
    graded_model,
    koszul_dual,
    koszul_homology,
    top_degree,
)
from .tensorspace import embed_factor, flat_index, ideal_component, letters_of


def _sparse(vec):
    return tuple(sorted((k, Fraction(v)) for k, v in vec.items() if v))


@dataclass(frozen=True)
class NhPresentation:
    quad: QuadraticPresentation
    psi1: tuple  # per relation basis vector: sparse E-vector as ((gen, coef), ...)
    psi0: tuple  # per relation basis vector: Fraction

    def __post_init__(self):
        if len(self.psi1) != self.quad.R.dim or len(self.psi0) != self.quad.R.dim:
            raise ValueError("ψ₁ and ψ₀ need one value per relation basis vector")

    @property
    def dim_e(self):
        return self.quad.dim_e

    @property
    def labels(self):
        return self.quad.labels

    @property
    def R(self):
        return self.quad.R

    @property
    def is_quadratic_linear(self):
        return not any(self.psi0)

    @property
    def is_homogeneous(self):
        return self.is_quadratic_linear and not any(self.psi1)

    def relation_basis(self):
        return self.quad.R.vectors()

    def psi1_of(self, x):
        """ψ₁ on any element of R (given in E⊗E coordinates)."""
        out = {}
        for c, img in zip(self.R.coordinates(x), self.psi1):
            if c:
                add_scaled(out, dict(img), c)
        return out

    def psi0_of(self, x):
        return sum((c * v for c, v in zip(self.R.coordinates(x), self.psi0)), Fraction(0))

    def psi1_matrix(self):
        return LinearMap(self.R.dim, self.dim_e, [dict(v) for v in self.psi1]).matrix()

    def psi0_matrix(self):
        return Matrix(1, self.R.dim, [list(self.psi0)])

    def relations(self):
        """Generators of P in F² coordinates, one per relation basis vector."""
        d2 = self.dim_e ** 2
        out = []
        for r, l1, c in zip(self.relation_basis(), self.psi1, self.psi0):
            v = dict(r)
            for g, x in l1:
                v[d2 + g] = x
            if c:
                v[d2 + self.dim_e] = c
            out.append(v)
        return out

    def p_subspace(self):
        return Subspace.span(f2_dim(self.dim_e), self.relations())


def f2_dim(d):
    return d * d + d + 1


def from_general_subspace(P, dim_e, labels=None):
    """Read (R, ψ₁, ψ₀) off a subspace P ⊂ F²(T(E)).

    Raises ConditionIFailed when P ∩ F¹(T(E)) ≠ 0.
    """
    labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim_e))
    d2 = dim_e * dim_e
    if P.ambient_dim != f2_dim(dim_e):
        raise ValueError("P must live in F²(T(E)) coordinates")
    rows = P.vectors()
    for r in rows:
        if min(r) >= d2:
            raise ConditionIFailed("P meets F¹(T(E)) nontrivially", witness=r)
    quad_rows, psi1, psi0 = [], [], []
    for r in rows:
        quad_rows.append(tuple((k, v) for k, v in sorted(r.items()) if k < d2))
        psi1.append(tuple((k - d2, v) for k, v in sorted(r.items()) if d2 <= k < d2 + dim_e))
        psi0.append(r.get(d2 + dim_e, Fraction(0)))
    # quadratic parts of an echelon basis with quadratic pivots are themselves echelon
    R = Subspace(d2, tuple(quad_rows))
    return NhPresentation(QuadraticPresentation(dim_e, labels, R), tuple(psi1), tuple(psi0))


def from_relations(labels, relations):
    """Build from relations ``{letters: coef}`` where letters has length 0, 1 or 2."""
    labels = tuple(labels)
    d = len(labels)
    vecs = []
    for rel in relations:
        v = {}
        for letters, c in rel.items():
            if not c:
                continue
            letters = tuple(letters)
            if len(letters) == 2:
                k = letters[0] * d + letters[1]
            elif len(letters) == 1:
                k = d * d + letters[0]
            elif len(letters) == 0:
                k = d * d + d
            else:
                raise ValueError("relations must have degree at most 2")
            v[k] = v.get(k, 0) + Fraction(c)
        vecs.append({k: x for k, x in v.items() if x})
    return from_general_subspace(Subspace.span(f2_dim(d), vecs), d, labels)


def homogeneous(q):
    z = tuple(() for _ in range(q.R.dim))
    return NhPresentation(q, z, tuple(Fraction(0) for _ in range(q.R.dim)))


# ----------------------------------------------------------------- constructors

def from_lie(constants, labels=None):
    """Enveloping algebra of a bracket with [e_i, e_j] = Σ_k constants[i][j][k] e_k."""
    d = len(constants)
    if any(len(row) != d or any(len(v) != d for v in row) for row in constants):
        raise MalformedStructureConstants("constants must have shape d×d×d")
    c = [[[Fraction(x) for x in constants[i][j]] for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            if any(a != -b for a, b in zip(c[i][j], c[j][i])):
                raise MalformedStructureConstants(f"bracket not antisymmetric at ({i}, {j})")
    labels = labels or [f"e{i}" for i in range(d)]
    rels = []
    for i in range(d):
        for j in range(i + 1, d):
            rel = {(i, j): 1, (j, i): -1}
            for k, x in enumerate(c[i][j]):
                if x:
                    rel[(k,)] = -x
            rels.append(rel)
    return from_relations(labels, rels)


def from_assoc(table, labels=None):
    """T(E)/(x⊗y − xy) for a product e_i e_j = Σ_k table[i][j][k] e_k."""
    d = len(table)
    labels = labels or [f"e{i}" for i in range(d)]
    rels = []
    for i in range(d):
        if len(table[i]) != d:
            raise MalformedStructureConstants("table must have shape d×d×d")
        for j in range(d):
            if len(table[i][j]) != d:
                raise MalformedStructureConstants("table must have shape d×d×d")
            rel = {(i, j): 1}
            for k, x in enumerate(table[i][j]):
                if x:
                    rel[(k,)] = -Fraction(x)
            rels.append(rel)
    return from_relations(labels, rels)


def clifford(g, theta=None, labels=None):
    """T(E)/(x⊗y + y⊗x − θ(x)y − θ(y)x − 2g(x,y)1) for symmetric g."""
    d = len(g)
    g = [[Fraction(x) for x in row] for row in g]
    for i in range(d):
        if len(g[i]) != d or any(g[i][j] != g[j][i] for j in range(d)):
            raise MalformedStructureConstants("g must be a symmetric square matrix")
    theta = [Fraction(x) for x in (theta or [0] * d)]
    labels = labels or [f"e{i}" for i in range(d)]
    rels = []
    for i in range(d):
        for j in range(i, d):
            rel = {}
            rel[(i, j)] = rel.get((i, j), 0) + 1
            rel[(j, i)] = rel.get((j, i), 0) + 1
            if theta[i]:
                rel[(j,)] = rel.get((j,), 0) - theta[i]
            if theta[j]:
                rel[(i,)] = rel.get((i,), 0) - theta[j]
            if g[i][j]:
                rel[()] = -2 * g[i][j]
            rels.append(rel)
    return from_relations(labels, rels)


# ----------------------------------------------------------------- conditions

def w3_space(nh):
    """W₃ = (R⊗E) ∩ (E⊗R)."""
    d = nh.dim_e
    return intersect(embed_factor(nh.R, 0, 1, d), embed_factor(nh.R, 1, 0, d))


def psi1_tensor_id(nh, w, side):
    """(ψ₁⊗I)(w) for side="left" (w ∈ R⊗E) or (I⊗ψ₁)(w) for side="right" (w ∈ E⊗R)."""
    d = nh.dim_e
    out = {}
    for k, part in _split(w, d, side).items():
        for g, v in nh.psi1_of(part).items():
            key = g * d + k if side == "left" else k * d + g
            out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


def psi0_tensor_id(nh, w, side):
    d = nh.dim_e
    out = {}
    for k, part in _split(w, d, side).items():
        c = nh.psi0_of(part)
        if c:
            out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def _split(w, d, side):
    parts = {}
    if side == "left":
        for idx, v in w.items():
            head, k = divmod(idx, d)
            parts.setdefault(k, {})[head] = v
    else:
        d2 = d * d
        for idx, v in w.items():
            k, tail = divmod(idx, d2)
            parts.setdefault(k, {})[tail] = v
    return parts


def phi_map(nh, w):
    """(ψ₁⊗I − I⊗ψ₁)(w) for w in W₃."""
    return add_scaled(psi1_tensor_id(nh, w, "left"), psi1_tensor_id(nh, w, "right"), -1)


@dataclass
class PbwReport:
    cond_a: object
    cond_b: object
    cond_c: object
    w3_dim: int
    witnesses: dict = field(default_factory=dict)
    koszul23: dict = field(default_factory=dict)
    verdict: str = ""
    cutoff: object = None
    note: str = ""

    @property
    def conditions_hold(self):
        return bool(self.cond_a and self.cond_b and self.cond_c)


def check_conditions(nh):
    """Evaluate the three conditions equivalent to (P·E + E·P) ∩ F² ⊂ P on a W₃ basis.

    (b) and (c) are only evaluable when (a) holds; otherwise they are None.
    """
    W3 = w3_space(nh)
    rep = PbwReport(True, True, True, W3.dim)
    images = []
    for w in W3.vectors():
        phi = phi_map(nh, w)
        images.append((w, phi))
        if not nh.R.contains(phi):
            rep.cond_a = False
            rep.witnesses.setdefault("a", {"w3_element": w, "image": phi})
    if not rep.cond_a:
        rep.cond_b = rep.cond_c = None
        rep.verdict = "FailedConditions"
        return rep
    for w, phi in images:
        val = add_scaled(nh.psi1_of(phi),
                         add_scaled(psi0_tensor_id(nh, w, "left"), psi0_tensor_id(nh, w, "right"), -1),
                         -1)
        if val:
            rep.cond_b = False
            rep.witnesses.setdefault("b", {"w3_element": w, "value": val})
        c = nh.psi0_of(phi)
        if c:
            rep.cond_c = False
            rep.witnesses.setdefault("c", {"w3_element": w, "value": c})
    rep.verdict = "" if rep.conditions_hold else "FailedConditions"
    return rep


def certify_pbw(nh, cutoff=DEFAULT_CUTOFF):
    """PBW certificate: the conditions plus H₂ = H₃ = 0 of K(quadratic part) through ``cutoff``."""
    if cutoff < 3:
        raise ValueError("cutoff must be at least 3")
    rep = check_conditions(nh)
    rep.cutoff = cutoff
    if not rep.conditions_hold:
        rep.verdict = "FailedConditions"
        return rep
    k = koszul_homology(nh.quad, cutoff)
    for m in range(cutoff + 1):
        rep.koszul23[m] = (k.homology.get((2, m), 0), k.homology.get((3, m), 0))
    if any(h2 or h3 for h2, h3 in rep.koszul23.values()):
        rep.verdict = "Inconclusive"
        rep.note = "degree-2,3 Koszul homology does not vanish through the cutoff"
    else:
        rep.verdict = "CertifiedPBW"
        rep.note = f"degree-2,3 acyclicity checked through internal degree {cutoff} only"
    return rep


# ----------------------------------------------------------------- filtered dims

def gr_dims_direct(nh, n_max, margin=2):
    """Heuristic cross-check of PBW: dims of gr(𝔄) from truncated ideal spans.

    For each M in n_max..n_max+margin the span J_M of u·p·w (p ∈ P, deg u + deg w + 2 ≤ M)
    is reduced inside F^M(T(E)) with columns ordered by decreasing degree, so the
    echelon rows with pivot in degree ≤ n span J_M ∩ F^n.  Returns the gr dims for
    the largest M and whether they stabilized over the margin.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    d = nh.dim_e
    rels = [(tuple(sorted(r.items())), l, c) for r, l, c in zip(nh.relation_basis(), nh.psi1, nh.psi0)]
    history = []
    for M in range(n_max, n_max + margin + 1):
        offset = {}
        pos = 0
        for deg in range(M, -1, -1):
            offset[deg] = pos
            pos += d ** deg
        total = pos
        vecs = []
        for r_len in range(M - 1):
            for s_len in range(M - 1 - r_len):
                deg = r_len + s_len + 2
                lr, ls = d ** r_len, d ** s_len
                for quad, lin, const in rels:
                    for u in range(lr):
                        for w in range(ls):
                            v = {}
                            for idx, x in quad:
                                v[offset[deg] + (u * d * d + idx) * ls + w] = x
                            for g, x in lin:
                                v[offset[deg - 1] + (u * d + g) * ls + w] = x
                            if const:
                                v[offset[deg - 2] + u * ls + w] = const
                            vecs.append(v)
        ech = rref_vectors(vecs, total)
        pivots = [row[0][0] for row in ech]
        f_dims = []
        for n in range(n_max + 1):
            in_fn = sum(1 for p in pivots if p >= offset[n])
            f_dims.append(sum(d ** j for j in range(n + 1)) - in_fn)
        gr = [f_dims[0]] + [f_dims[n] - f_dims[n - 1] for n in range(1, n_max + 1)]
        history.append(gr)
    stabilized = all(h == history[-1] for h in history)
    return history[-1], stabilized


# ----------------------------------------------------------------- curved dual

@dataclass
class CurvedDGA:
    """Dual curved differential quadratic algebra (A!, d, F).

    ``lift[k]`` is the tensor lift of ψ₁ᵗ(θ^k) in E*⊗E*; ``d[n]`` is the
    differential A!_n -> A!_{n+1} on normal bases; ``F`` is a class in A!_2.
    """

    source: NhPresentation
    model: object
    lift: list
    F: dict
    F_lift: dict
    d: dict
    top: object

    @property
    def labels(self):
        return self.model.presentation.labels

    def apply(self, cls, n):
        return self.d[n].apply(cls)

    def commutator_with_F(self, cls, n):
        B = self.model
        return add_scaled(B.multiply(self.F, 2, cls, n), B.multiply(cls, n, self.F, 2), -1)

    def differential_on_generators(self):
        return [self.model.format(self.apply({k: Fraction(1)}, 1), 2) for k in range(self.model.dims[1])]


def _derivation_image(flat, n, lift, d):
    """D(θ^{a_1}⊗…⊗θ^{a_n}) = Σ_i (−1)^i θ^{a_1..a_i} ⊗ L(θ^{a_{i+1}}) ⊗ θ^{…}."""
    letters = letters_of(flat, d, n)
    out = {}
    for i, a in enumerate(letters):
        sign = -1 if i % 2 else 1
        head = flat_index(letters[:i], d)
        tail = flat_index(letters[i + 1:], d)
        right = d ** (n - 1 - i)
        for idx, v in lift[a].items():
            key = (head * d * d + idx) * right + tail
            nv = out.get(key, 0) + sign * v
            if nv:
                out[key] = nv
            else:
                out.pop(key)
    return out


def curved_dual(nh, cutoff=DEFAULT_CUTOFF):
    """Build (A!, d, F) from ψ₁ᵗ and ψ₀ᵗ.

    The lift of ψ₁ᵗ(θ) puts the value θ(ψ₁(r_i)) on the pivot monomial of the
    relation basis vector r_i (the minimal-support solution); F is lifted the
    same way from ψ₀.  The extension to tensors is checked to preserve the
    ideal of A! before d is induced on normal forms.
    """
    cond = check_conditions(nh)
    if not cond.cond_a:
        raise ConditionAFailed("(ψ₁⊗I − I⊗ψ₁)(W₃) is not contained in R",
                               witness=cond.witnesses["a"]["w3_element"])
    d = nh.dim_e
    dual = koszul_dual(nh.quad)
    B = graded_model(dual, cutoff)
    try:
        top = top_degree(B)
    except Exception:
        top = None
    limit = min(cutoff, top + 1) if top is not None else cutoff
    pivots = nh.R.pivots
    lift = []
    for k in range(d):
        v = {}
        for p, img in zip(pivots, nh.psi1):
            x = dict(img).get(k)
            if x:
                v[p] = x
        lift.append(v)
    F_lift = {p: c for p, c in zip(pivots, nh.psi0) if c}
    F = B.project(F_lift, 2) if limit >= 2 else {}
    dual_R = dual.R
    for n in range(2, limit):
        for row in ideal_component(dual_R, n, d).rows:
            img = {}
            for idx, v in row:
                add_scaled(img, _derivation_image(idx, n, lift, d), v)
            if B.project(img, n + 1):
                raise InvariantViolation(f"derivation does not preserve the ideal in degree {n}")
    dmaps = {}
    for n in range(0, limit):
        cols = []
        for idx in B.normal[n]:
            cols.append(B.project(_derivation_image(idx, n, lift, d), n + 1) if n else {})
        dmaps[n] = LinearMap(B.dims[n], B.dims[n + 1], cols)
    return CurvedDGA(nh, B, lift, F, F_lift, dmaps, top)


@dataclass
class CdgaReport:
    ok: bool
    leibniz_ok: bool
    curvature_ok: bool
    bianchi_ok: bool
    max_degree: int
    failures: list


def verify_cdga(c, cutoff=DEFAULT_CUTOFF, strict=True):
    """Check Leibniz, d² = [F, ·] and dF = 0 exactly in degrees within reach.

    With ``strict`` the first failure raises VerificationFailed carrying
    (degree, basis element, residual); otherwise failures are collected.
    """
    if cutoff < 3:
        raise ValueError("cutoff must be at least 3")
    B = c.model
    limit = min(cutoff, B.cutoff, max(c.d) + 1)
    failures = []

    def fail(kind, degree, element, residual):
        if strict:
            raise VerificationFailed(kind, degree=degree, element=element, residual=residual)
        failures.append({"check": kind, "degree": degree, "element": element, "residual": residual})

    leib = True
    for p in range(1, limit):
        for q in range(1, limit - p):
            for x in B.basis(p):
                dx = c.apply(x, p)
                for y in B.basis(q):
                    lhs = c.apply(B.multiply(x, p, y, q), p + q)
                    rhs = add_scaled(B.multiply(dx, p + 1, y, q),
                                     B.multiply(x, p, c.apply(y, q), q + 1), (-1) ** p)
                    res = add_scaled(dict(lhs), rhs, -1)
                    if res:
                        leib = False
                        fail("Leibniz", p + q, (x, y), res)
    curv = True
    for n in range(1, limit - 1):
        for a in B.basis(n):
            dd = c.apply(c.apply(a, n), n + 1)
            res = add_scaled(dict(dd), c.commutator_with_F(a, n), -1)
            if res:
                curv = False
                fail("d^2 != [F, .]", n, a, res)
    bianchi = True
    if limit >= 3:
        dF = c.apply(c.F, 2)
        if dF:
            bianchi = False
            fail("dF != 0", 2, c.F, dF)
    return CdgaReport(leib and curv and bianchi, leib, curv, bianchi, limit, failures)


def symmetric_form_element(model, g):
    """The element of A!_2 taking the value g(x, y) on x⊗y + y⊗x, for symmetric g."""
    d = len(g)
    return model.project({a * d + b: Fraction(g[a][b]) / 2 for a in range(d) for b in range(d)
                          if g[a][b]}, 2)


def tensor_class(model, terms):
    """Class of Σ coef · (letters) in the model; ``terms`` maps letter tuples to coefficients."""
    d = model.presentation.dim_e
    out = {}
    n = None
    for letters, cf in terms.items():
        n = len(letters)
        add_scaled(out, model.monomial_class(flat_index(letters, d), n), Fraction(cf))
    return out


# ----------------------------------------------------------------- morphisms

def check_morphism(src, dst, alpha):
    """True iff α maps R into R' and intertwines ψ₁ and ψ₀: T(α)(P) ⊂ P'."""
    a = alpha.entries if isinstance(alpha, Matrix) else alpha
    ds, dd = src.dim_e, dst.dim_e
    cols = [{i: Fraction(a[i][j]) for i in range(dd) if a[i][j]} for j in range(ds)]
    for r, lin, const in zip(src.relation_basis(), src.psi1, src.psi0):
        y = {}
        for idx, v in r.items():
            i, j = divmod(idx, ds)
            for p, x in cols[i].items():
                for q, z in cols[j].items():
                    key = p * dd + q
                    nv = y.get(key, 0) + v * x * z
                    if nv:
                        y[key] = nv
                    else:
                        y.pop(key)
        if not dst.R.contains(y):
            return False
        img = {}
        for g, v in lin:
            add_scaled(img, cols[g], v)
        if dst.psi1_of(y) != img:
            return False
        if dst.psi0_of(y) != const:
            return False
    return True
