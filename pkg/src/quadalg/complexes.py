"""Representations and generalized Chevalley–Eilenberg complexes (V⊗A!, δ_π + d).

A representation assigns a square matrix π(e_k) to every generator.  Left
modules act on column vectors, right modules on row vectors; both are
validated by the same matrix identity Σ c_ij π_i π_j + π(ψ₁(r)) = 0 over the
relation basis.

For every representation two complexes are built independently: the cochain
complex on V⊗A!_n (normal-monomial bases, v-index major) and the chain
complex on V*⊗A!*_n with A!*_n realized inside E^{⊗n}.  Their (co)homology
dimensions must agree.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CurvatureNonzero, NotFiniteDimensional, NotQuadraticLinear, RepresentationInvalid
from .linalg import LinearMap, Matrix, add_scaled
from .nonhomogeneous import curved_dual
from .quadratic import DEFAULT_CUTOFF, top_degree
from .tensorspace import dual_component


@dataclass(frozen=True)
class Representation:
    dim_v: int
    matrices: tuple
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        mats = tuple(m if isinstance(m, Matrix) else Matrix.from_rows(m) for m in self.matrices)
        for m in mats:
            if m.rows != self.dim_v or m.cols != self.dim_v:
                raise RepresentationInvalid(f"expected {self.dim_v}x{self.dim_v} matrices")
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def trivial(cls, n_gens, dim_v=1, side="left"):
        return cls(dim_v, tuple(Matrix.zeros(dim_v, dim_v) for _ in range(n_gens)), side)

    @classmethod
    def adjoint(cls, constants):
        """ad(e_k) with (ad e_k)_{ij} = c^i_{kj}."""
        d = len(constants)
        mats = [[[Fraction(constants[k][j][i]) for j in range(d)] for i in range(d)] for k in range(d)]
        return cls(d, tuple(Matrix.from_rows(m) for m in mats))


def representation_defect(nh, rep, rel_index):
    """Σ c_ij π_i π_j + π(ψ₁(r)) for the given relation basis vector."""
    d = nh.dim_e
    n = rep.dim_v
    r = nh.relation_basis()[rel_index]
    acc = [[Fraction(0)] * n for _ in range(n)]

    def add(mat, c):
        for i in range(n):
            row = mat.entries[i]
            for j in range(n):
                if row[j]:
                    acc[i][j] += c * row[j]

    for idx, c in r.items():
        a, b = divmod(idx, d)
        add(rep.matrices[a] @ rep.matrices[b], c)
    for g, c in nh.psi1[rel_index]:
        add(rep.matrices[g], c)
    return Matrix.from_rows(acc)


def validate_representation(nh, rep):
    """Return (ok, witness); the witness is the first violated relation basis vector."""
    if not nh.is_quadratic_linear:
        raise NotQuadraticLinear("representations require ψ₀ = 0")
    if len(rep.matrices) != nh.dim_e:
        raise RepresentationInvalid(f"expected {nh.dim_e} matrices, got {len(rep.matrices)}")
    for i in range(nh.R.dim):
        if not representation_defect(nh, rep, i).is_zero():
            return False, nh.relation_basis()[i]
    return True, None


@dataclass
class CEComplex:
    dga: object
    rep: Representation
    degrees: int
    dims: list
    maps: dict
    chain_dims: list
    chain_maps: dict
    truncated: bool
    direction: str
    square_zero: bool = True
    module_map_ok: bool = True
    notes: list = field(default_factory=list)


def _delta_image(rep, model, v, mono_cls, n):
    """δ_π(v⊗ω) as a sparse vector over V⊗A!_{n+1} (index v·dim + monomial)."""
    dim_next = model.dims[n + 1]
    out = {}
    for k, mat in enumerate(rep.matrices):
        col = {i: mat.entries[i][v] for i in range(rep.dim_v) if mat.entries[i][v]}
        if not col:
            continue
        prod = model.multiply(model.generator(k), 1, mono_cls, n)
        for i, x in col.items():
            for j, y in prod.items():
                add_scaled(out, {i * dim_next + j: Fraction(1)}, x * y)
    return out


def _cochain_maps(c, rep, limit):
    B = c.model
    maps = {}
    for n in range(limit):
        cols = []
        for v in range(rep.dim_v):
            for m in range(B.dims[n]):
                mono = {m: Fraction(1)}
                img = _delta_image(rep, B, v, mono, n)
                dn = B.dims[n + 1]
                for j, y in c.apply(mono, n).items():
                    add_scaled(img, {v * dn + j: Fraction(1)}, y)
                cols.append(img)
        maps[n] = LinearMap(rep.dim_v * B.dims[n], rep.dim_v * B.dims[n + 1], cols)
    return maps


def _chain_maps(nh, rep, limit):
    """d*(w⊗x) = Σ_k (w·π_k)⊗x_k + w⊗Σ_i (−1)^i (I^i⊗ψ₁⊗I)(x) on A!*_{n+1} → A!*_n."""
    d = nh.dim_e
    spaces = [dual_component(nh.R, n, d) for n in range(limit + 1)]
    maps = {}
    for n in range(limit):
        src, dst = spaces[n + 1], spaces[n]
        cols = []
        for w in range(rep.dim_v):
            for x in src.vectors():
                out = {}
                # δ*: split off the first tensor factor
                parts = {}
                for idx, val in x.items():
                    k, rest = divmod(idx, d ** n)
                    parts.setdefault(k, {})[rest] = val
                for k, rest in parts.items():
                    row = rep.matrices[k].entries[w]
                    coords = dst.coordinates(rest)
                    for u in range(rep.dim_v):
                        if row[u]:
                            for j, cf in enumerate(coords):
                                if cf:
                                    add_scaled(out, {u * dst.dim + j: Fraction(1)}, row[u] * cf)
                # internal part
                inner = {}
                for i in range(n):
                    sign = -1 if i % 2 else 1
                    right = d ** (n - 1 - i)
                    slices = {}
                    for idx, val in x.items():
                        head, mid = divmod(idx, d ** (n - i + 1))
                        pair, tail = divmod(mid, right)
                        slices.setdefault((head, tail), {})[pair] = val
                    for (head, tail), vec in slices.items():
                        for g, val in nh.psi1_of(vec).items():
                            add_scaled(inner, {(head * d + g) * right + tail: Fraction(1)}, sign * val)
                if inner:
                    for j, cf in enumerate(dst.coordinates(inner)):
                        if cf:
                            add_scaled(out, {w * dst.dim + j: Fraction(1)}, cf)
                cols.append(out)
        maps[n] = LinearMap(rep.dim_v * src.dim, rep.dim_v * dst.dim, cols)
    return [s.dim for s in spaces], maps


def ce_complex(nh, rep, cutoff=DEFAULT_CUTOFF):
    ok, witness = validate_representation(nh, rep)
    if not ok:
        raise RepresentationInvalid("representation identity fails on a relation", witness=witness)
    c = curved_dual(nh, cutoff)
    if c.F:
        raise CurvatureNonzero("the dual has nonzero curvature")
    B = c.model
    try:
        D = top_degree(B)
        truncated = False
    except NotFiniteDimensional:
        D = cutoff - 1
        truncated = True
    maps = _cochain_maps(c, rep, D)
    dims = [rep.dim_v * B.dims[n] for n in range(D + 1)]
    chain_dims, chain_maps = _chain_maps(nh, rep, D)
    chain_dims = [rep.dim_v * x for x in chain_dims]
    cx = CEComplex(c, rep, D, dims, maps, chain_dims, chain_maps, truncated,
                   "cochain" if rep.side == "left" else "chain")
    if truncated:
        cx.notes.append(f"dual is infinite or longer than the cutoff; truncated at degree {D}")
    for n in range(D - 1):
        if not maps[n + 1].compose(maps[n]).is_zero():
            cx.square_zero = False
    for n in range(1, D):
        if not chain_maps[n - 1].compose(chain_maps[n]).is_zero():
            cx.square_zero = False
    cx.module_map_ok = _delta_is_module_map(c, rep, D)
    return cx


def _delta_is_module_map(c, rep, D):
    """δ_π(v⊗ω)·η = δ_π(v⊗ωη) on basis pairs."""
    B = c.model
    for p in range(D):
        for q in range(1, D - p):
            for v in range(rep.dim_v):
                for om in B.basis(p):
                    img = _delta_image(rep, B, v, om, p)
                    dn = B.dims[p + 1]
                    for eta in B.basis(q):
                        lhs = {}
                        for idx, x in img.items():
                            u, j = divmod(idx, dn)
                            for k, y in B.multiply({j: Fraction(1)}, p + 1, eta, q).items():
                                add_scaled(lhs, {u * B.dims[p + q + 1] + k: Fraction(1)}, x * y)
                        rhs = _delta_image(rep, B, v, B.multiply(om, p, eta, q), p + q)
                        if lhs != rhs:
                            return False
    return True


def _rank(m):
    return m.rank()


def cohomology_dims(cx):
    """dim H^n of (V⊗A!, d_π) for n = 0..degrees (the last entry only if not truncated)."""
    top = cx.degrees if not cx.truncated else cx.degrees - 1
    out = []
    for n in range(top + 1):
        r_out = _rank(cx.maps[n]) if n in cx.maps else 0
        r_in = _rank(cx.maps[n - 1]) if n >= 1 else 0
        out.append(cx.dims[n] - r_out - r_in)
    return out


def chain_homology_dims(cx):
    top = cx.degrees if not cx.truncated else cx.degrees - 1
    out = []
    for n in range(top + 1):
        r_out = _rank(cx.chain_maps[n - 1]) if n >= 1 else 0
        r_in = _rank(cx.chain_maps[n]) if n in cx.chain_maps else 0
        out.append(cx.chain_dims[n] - r_out - r_in)
    return out


def euler_ok(cx, coh=None):
    if cx.truncated:
        return None
    coh = coh if coh is not None else cohomology_dims(cx)
    lhs = sum((-1) ** n * h for n, h in enumerate(coh))
    rhs = sum((-1) ** n * x for n, x in enumerate(cx.dims))
    return lhs == rhs
