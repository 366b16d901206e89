"""Homogeneous quadratic algebras A = T(E)/(R).

Covers Koszul duals, normal-form graded models with multiplication, the Koszul
complex K(A) and the complex L(A), Frobenius data with the Nakayama
automorphism, and the Poincaré series product identity.  Every claim about
"all degrees" is only checked up to an explicit internal-degree cutoff.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import AmbientMismatch, DegreeOverflow, NotFiniteDimensional, VerificationFailed
from .linalg import LinearMap, Matrix, Subspace, add_scaled, annihilator, inverse, rank_vectors
from .scalars import format_scalar
from .tensorspace import dual_component, flat_index, ideal_component, letters_of

DEFAULT_CUTOFF = 6


def dual_label(label):
    return label[:-1] if label.endswith("*") else label + "*"


@dataclass(frozen=True)
class QuadraticPresentation:
    dim_e: int
    labels: tuple
    R: Subspace

    def __post_init__(self):
        if self.dim_e < 1:
            raise AmbientMismatch("at least one generator is required")
        if len(self.labels) != self.dim_e:
            raise AmbientMismatch("one label per generator expected")
        if self.R.ambient_dim != self.dim_e ** 2:
            raise AmbientMismatch("relations must live in E⊗E")

    @classmethod
    def from_relations(cls, labels, relations):
        """Build from relations given as ``{(i, j): coefficient}`` dictionaries."""
        labels = tuple(labels)
        d = len(labels)
        vecs = [{i * d + j: Fraction(c) for (i, j), c in rel.items() if c} for rel in relations]
        return cls(d, labels, Subspace.span(d * d, vecs))

    def pair_index(self, i, j):
        return i * self.dim_e + j


def koszul_dual(q):
    """A! = A(E*, R⊥) with dual labels."""
    return QuadraticPresentation(q.dim_e, tuple(dual_label(x) for x in q.labels),
                                 annihilator(q.R))


class GradedModel:
    """Normal-form model of A up to degree ``cutoff``.

    The normal monomials of degree n are the non-pivot columns of the reduced
    echelon basis of the ideal component (R)_n; a class in degree n is a sparse
    vector over the normal monomials of that degree.
    """

    def __init__(self, q, cutoff):
        self.presentation = q
        self.cutoff = cutoff
        d = q.dim_e
        self.normal = []
        self._position = []
        self._reduction = []
        for n in range(cutoff + 1):
            ideal = ideal_component(q.R, n, d)
            pivots = set(ideal.pivots)
            normal = [m for m in range(d ** n) if m not in pivots]
            pos = {m: i for i, m in enumerate(normal)}
            red = {}
            for row in ideal.rows:
                p = row[0][0]
                red[p] = {pos[k]: -v for k, v in row[1:]}
            self.normal.append(normal)
            self._position.append(pos)
            self._reduction.append(red)
        self.dims = [len(x) for x in self.normal]

    def _check(self, n):
        if n > self.cutoff:
            raise DegreeOverflow(f"degree {n} exceeds the model cutoff {self.cutoff}")

    def monomial_class(self, flat, n):
        self._check(n)
        i = self._position[n].get(flat)
        if i is not None:
            return {i: Fraction(1)}
        return dict(self._reduction[n][flat])

    def project(self, vec, n):
        """Class of a tensor of E^{⊗n} (sparse vector over flat indices)."""
        self._check(n)
        out = {}
        pos = self._position[n]
        red = self._reduction[n]
        for m, c in vec.items():
            i = pos.get(m)
            if i is not None:
                add_scaled(out, {i: Fraction(1)}, c)
            else:
                add_scaled(out, red[m], c)
        return out

    def lift(self, cls, n):
        """Tensor representative supported on normal monomials."""
        return {self.normal[n][i]: c for i, c in cls.items()}

    def word(self, letters):
        return self.monomial_class(flat_index(letters, self.presentation.dim_e), len(letters))

    def unit(self):
        return {0: Fraction(1)}

    def generator(self, i):
        return self.monomial_class(i, 1)

    def multiply(self, a, p, b, q):
        """Product of a class of degree p with a class of degree q."""
        if p + q > self.cutoff:
            raise DegreeOverflow(f"product degree {p + q} exceeds cutoff {self.cutoff}")
        shift = self.presentation.dim_e ** q
        out = {}
        for i, x in a.items():
            mi = self.normal[p][i] * shift
            for j, y in b.items():
                add_scaled(out, self.monomial_class(mi + self.normal[q][j], p + q), x * y)
        return out

    def basis(self, n):
        return [{i: Fraction(1)} for i in range(self.dims[n])]

    def format(self, cls, n, labels=None):
        labels = labels or self.presentation.labels
        return format_element(cls, [letters_of(m, self.presentation.dim_e, n)
                                    for m in self.normal[n]], labels)


def format_element(cls, words, labels):
    if not cls:
        return "0"
    parts = []
    for i in sorted(cls):
        c = cls[i]
        w = ".".join(labels[x] for x in words[i]) or "1"
        if c == 1:
            term = w
        elif c == -1:
            term = "-" + w
        else:
            term = f"{format_scalar(c)}*{w}" if w != "1" else format_scalar(c)
        parts.append(term)
    return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=64)
def graded_model(q, cutoff):
    return GradedModel(q, cutoff)


def growth_heuristic(dims):
    """Label a dimension sequence as polynomial-like or exponential-like.

    A heuristic only: finite sequences cannot decide growth.
    """
    if any(x == 0 for x in dims[1:]):
        return "polynomial-like"
    vals = list(dims[1:])
    diff = vals
    while len(diff) >= 3:
        diff = [b - a for a, b in zip(diff, diff[1:])]
        if len(diff) >= 2 and all(x == 0 for x in diff):
            return "polynomial-like"
    ratios = [Fraction(b, a) for a, b in zip(vals, vals[1:])]
    if len(ratios) >= 2 and all(r2 < r1 for r1, r2 in zip(ratios, ratios[1:])):
        return "polynomial-like"
    return "exponential-like"


def graded_dims(q, cutoff):
    """Return ``(dims, growth_label)`` for degrees 0..cutoff."""
    dims = list(graded_model(q, cutoff).dims)
    return dims, growth_heuristic(dims)


# ----------------------------------------------------------------- complexes

@dataclass
class ComplexReport:
    """Dimensions, ranks and homology of a bigraded complex.

    Entries are keyed by ``(n, m)``: homological degree and the slice grading
    (internal degree for K(A), shift grading for L(A)).
    """

    name: str
    cutoff: int
    dims: dict = field(default_factory=dict)
    rank_in: dict = field(default_factory=dict)
    rank_out: dict = field(default_factory=dict)
    homology: dict = field(default_factory=dict)
    square_zero: bool = True
    euler_ok: bool = True

    def nonzero_homology(self, n_min=0):
        return {k: v for k, v in sorted(self.homology.items()) if v and k[0] >= n_min}

    def acyclic_from(self, n_min=1):
        return not self.nonzero_homology(n_min)

    def rows(self):
        return [{"n": n, "m": m, "dim": self.dims[(n, m)], "rank_in": self.rank_in[(n, m)],
                 "rank_out": self.rank_out[(n, m)], "homology": self.homology[(n, m)]}
                for (n, m) in sorted(self.homology)]


def _vec_coordinates(space, vec):
    """Coordinates of vec in the stored basis of ``space``; raises on non-membership."""
    if space.residual(vec):
        raise VerificationFailed("image left the target subspace", element=vec)
    return [(j, vec[p]) for j, p in enumerate(space.pivots) if vec.get(p)]


def koszul_complex(q, cutoff):
    """Boundary maps of K(A): A_{m-n} ⊗ A!*_n -> A_{m-n+1} ⊗ A!*_{n-1}.

    Returns ``(dims, maps)`` with ``maps[(n, m)]`` the boundary out of (n, m).
    Basis of A_k ⊗ A!*_n is ordered (normal monomial major, A!*_n basis minor).
    """
    A = graded_model(q, cutoff)
    d = q.dim_e
    W = [dual_component(q.R, n, d) for n in range(cutoff + 1)]
    Wvec = [w.vectors() for w in W]
    dims = {}
    maps = {}
    for m in range(cutoff + 1):
        for n in range(m + 1):
            dims[(n, m)] = A.dims[m - n] * W[n].dim
        for n in range(1, m + 1):
            k = m - n
            target = W[n - 1]
            tdim = target.dim
            rest_size = d ** (n - 1)
            cols = []
            for i in range(A.dims[k]):
                a_flat = A.normal[k][i]
                for w in Wvec[n]:
                    acc = {}
                    for t, c in w.items():
                        x0, rest = divmod(t, rest_size)
                        for ni, cv in A.monomial_class(a_flat * d + x0, k + 1).items():
                            part = acc.setdefault(ni, {})
                            nv = part.get(rest, 0) + c * cv
                            if nv:
                                part[rest] = nv
                            else:
                                part.pop(rest)
                    col = {}
                    for ni, part in acc.items():
                        for j, v in _vec_coordinates(target, part):
                            col[ni * tdim + j] = v
                    cols.append(col)
            maps[(n, m)] = LinearMap(dims[(n, m)], dims[(n - 1, m)], cols)
    return dims, maps


def _homology_report(name, cutoff, dims, maps, positions):
    rep = ComplexReport(name, cutoff)
    ranks = {k: f.rank() for k, f in maps.items()}
    for (n, m), f in maps.items():
        nxt = maps.get((n - 1, m))
        if nxt is not None and not nxt.compose(f).is_zero():
            rep.square_zero = False
    for key in positions:
        n, m = key
        r_out = ranks.get((n, m), 0)
        r_in = ranks.get((n + 1, m), 0)
        rep.dims[key] = dims[key]
        rep.rank_in[key] = r_in
        rep.rank_out[key] = r_out
        rep.homology[key] = dims[key] - r_in - r_out
        if r_in + r_out > dims[key]:
            rep.square_zero = False
    return rep


def koszul_homology(q, cutoff=DEFAULT_CUTOFF):
    """Homology of K(A) for every internal degree m <= cutoff."""
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    dims, maps = koszul_complex(q, cutoff)
    positions = sorted(dims, key=lambda k: (k[1], k[0]))
    rep = _homology_report("K(A)", cutoff, dims, maps, positions)
    for m in range(cutoff + 1):
        chi_c = sum((-1) ** n * dims[(n, m)] for n in range(m + 1))
        chi_h = sum((-1) ** n * rep.homology[(n, m)] for n in range(m + 1))
        if chi_c != chi_h:
            rep.euler_ok = False
    W = [dual_component(q.R, n, q.dim_e).dim for n in range(cutoff + 1)]
    rep.global_dimension_shape = max(n for n, w in enumerate(W) if w)
    return rep


def is_koszul(q, cutoff=DEFAULT_CUTOFF):
    return koszul_homology(q, cutoff).acyclic_from(1)


# ----------------------------------------------------------------- Gorenstein

@dataclass
class GorensteinReport:
    verdict: str  # "Gorenstein", "NotGorenstein" or "Inconclusive"
    cutoff: int
    top_degree: object
    koszul: bool
    reasons: list
    cohomology: dict
    complete_slices: list
    square_zero: bool

    @property
    def is_gorenstein(self):
        return self.verdict == "Gorenstein"


def _rank_one_square(q):
    """A nonzero v with v⊗v in R, searched among e_i and e_i ± e_j; or None.

    Such a v gives a surjection A! -> Q[t], so A! is infinite-dimensional.
    """
    d = q.dim_e
    cands = [{i: 1} for i in range(d)]
    cands += [{i: 1, j: s} for i in range(d) for j in range(i + 1, d) for s in (1, -1)]
    for v in cands:
        vv = {a * d + b: Fraction(x * y) for a, x in v.items() for b, y in v.items()}
        if q.R.contains(vv):
            return v
    return None


def l_complex(q, a_cutoff, dual_model, top):
    """Maps of L(A): A!_n ⊗ A_k -> A!_{n+1} ⊗ A_{k+1}, left multiplication by Σ θ^l ⊗ e_l.

    Keys are ``(n, s)`` with shift grading s = k - n.  ``top`` bounds the
    dual degrees used.
    """
    A = graded_model(q, a_cutoff)
    B = dual_model
    d = q.dim_e
    dims = {}
    for n in range(top + 1):
        for k in range(a_cutoff + 1):
            dims[(n, k - n)] = B.dims[n] * A.dims[k]
    maps = {}
    for (n, s), dim in dims.items():
        k = s + n
        if (n + 1, s) not in dims:
            continue
        cod_a = A.dims[k + 1]
        cols = []
        for i in range(B.dims[n]):
            alpha = {i: Fraction(1)}
            for j in range(A.dims[k]):
                a = {j: Fraction(1)}
                col = {}
                for ell in range(d):
                    left = B.multiply(B.generator(ell), 1, alpha, n)
                    right = A.multiply(A.generator(ell), 1, a, k)
                    for i2, x in left.items():
                        for j2, y in right.items():
                            key = i2 * cod_a + j2
                            nv = col.get(key, 0) + x * y
                            if nv:
                                col[key] = nv
                            else:
                                col.pop(key)
                cols.append(col)
        maps[(n, s)] = LinearMap(dim, dims[(n + 1, s)], cols)
    return dims, maps


def gorenstein_check(q, cutoff=DEFAULT_CUTOFF):
    """Koszul-Gorenstein test of A up to ``cutoff``.

    Cohomology of L(A) is computed at every (n, s) whose neighbours are known.
    The verdict is NotGorenstein only on a definite obstruction: nonzero Koszul
    homology, certified infinite global dimension, or L-cohomology that cannot
    be one-dimensional and concentrated in the top degree.
    """
    reasons = []
    k_rep = koszul_homology(q, max(cutoff, 2))
    koszul = k_rep.acyclic_from(1)
    if not koszul:
        reasons.append(f"Koszul homology nonzero at (n, m) = {next(iter(k_rep.nonzero_homology(1)))}")
    dual = koszul_dual(q)
    B = graded_model(dual, cutoff)
    zero_at = next((n for n in range(1, cutoff + 1) if B.dims[n] == 0), None)
    top = zero_at - 1 if zero_at is not None else None
    if top is None:
        v = _rank_one_square(q)
        if v is not None:
            reasons.append("infinite global dimension: v⊗v lies in R for v = "
                           + " + ".join(f"{format_scalar(c)}*{q.labels[i]}" for i, c in v.items()))
    ntop = top if top is not None else cutoff
    dims, maps = l_complex(q, cutoff, B, ntop)

    coh = {}
    any_bad = False
    for (n, s), dim in sorted(dims.items()):
        if (n, s) in maps:
            r_out = maps[(n, s)].rank()
        elif top is not None and n == top:
            r_out = 0
        else:
            continue
        r_in = maps[(n - 1, s)].rank() if (n - 1, s) in maps else 0
        coh[(n, s)] = dim - r_in - r_out
    square_zero = all(maps[(n + 1, s)].compose(f).is_zero()
                      for (n, s), f in maps.items() if (n + 1, s) in maps)
    total = sum(coh.values())
    nonzero = {k: v for k, v in coh.items() if v}
    degrees = {n for n, _ in nonzero}
    if total > 1 or len(degrees) > 1 or (top is not None and degrees - {top}):
        any_bad = True
        reasons.append(f"L(A) cohomology not concentrated in one dimension: {nonzero}")
    complete = []
    if top is not None:
        complete = [s for s in range(-top, cutoff - top + 1)
                    if all((n, s) in coh for n in range(max(0, -s), top + 1))]
    if not koszul or any_bad or reasons:
        verdict = "NotGorenstein"
    elif top is not None and complete and total == 1 and degrees == {top}:
        verdict = "Gorenstein"
    else:
        verdict = "Inconclusive"
        reasons.append("dual does not terminate below the cutoff" if top is None
                       else "no complete slice of L(A) within the cutoff")
    return GorensteinReport(verdict, cutoff, top, koszul, reasons, coh, complete, square_zero)


# ----------------------------------------------------------------- Frobenius

@dataclass
class FrobeniusData:
    top_degree: int
    is_frobenius: bool
    pairing: dict
    nakayama: dict
    reason: str = ""

    def sigma_on_generators(self):
        return self.nakayama.get(1)


def top_degree(g):
    for n in range(1, g.cutoff + 1):
        if g.dims[n] == 0:
            return n - 1
    raise NotFiniteDimensional(
        f"dimensions do not vanish up to degree {g.cutoff}; raise the cutoff")


def frobenius_check(g):
    """Frobenius test via the top-degree pairing, with the Nakayama automorphism.

    The pairing of A_n with A_{D-n} is (x, y) -> coefficient of xy in A_D.
    The Nakayama automorphism satisfies xy = σ(y)x; on A_m it is computed as
    (B_m^T)^{-1} B_{D-m} and then checked to be multiplicative.
    """
    D = top_degree(g)
    if g.dims[D] != 1:
        return FrobeniusData(D, False, {}, {}, f"dim A_D = {g.dims[D]} != 1")
    pairing = {}
    for n in range(D + 1):
        grid = []
        for x in g.basis(n):
            grid.append([g.multiply(x, n, y, D - n).get(0, Fraction(0)) for y in g.basis(D - n)])
        pairing[n] = Matrix(g.dims[n], g.dims[D - n], grid)
    for n in range(D + 1):
        if pairing[n].rows != pairing[n].cols or rank_vectors(pairing[n].row_vectors(), pairing[n].cols) < pairing[n].rows:
            return FrobeniusData(D, False, pairing, {}, f"pairing degenerate in degree {n}")
    sigma = {}
    for m in range(D + 1):
        inv = inverse(pairing[m].transpose())
        sigma[m] = inv @ pairing[D - m]
    data = FrobeniusData(D, True, pairing, sigma)
    _verify_nakayama(g, data)
    return data


def apply_matrix(mat, cls):
    out = {}
    for j, c in cls.items():
        for i in range(mat.rows):
            x = mat.entries[i][j]
            if x:
                nv = out.get(i, 0) + x * c
                if nv:
                    out[i] = nv
                else:
                    out.pop(i)
    return out


def _verify_nakayama(g, data):
    D = data.top_degree
    sigma = data.nakayama
    for n in range(D + 1):
        for x in g.basis(n):
            for y in g.basis(D - n):
                lhs = g.multiply(x, n, y, D - n)
                rhs = g.multiply(apply_matrix(sigma[D - n], y), D - n, x, n)
                if lhs != rhs:
                    raise VerificationFailed("xy != σ(y)x", degree=n, element=(x, y),
                                             residual=add_scaled(dict(lhs), rhs, -1))
    for p in range(D + 1):
        for q in range(D + 1 - p):
            for x in g.basis(p):
                for y in g.basis(q):
                    lhs = apply_matrix(sigma[p + q], g.multiply(x, p, y, q))
                    rhs = g.multiply(apply_matrix(sigma[p], x), p, apply_matrix(sigma[q], y), q)
                    if lhs != rhs:
                        raise VerificationFailed("σ is not multiplicative", degree=p + q,
                                                 element=(x, y))


def pairing_is_associative(g, data):
    """B(xy, z) = B(x, yz) on all normal-basis triples, B the top-degree pairing."""
    D = data.top_degree
    for p in range(D + 1):
        for q in range(D + 1 - p):
            r = D - p - q
            for x in g.basis(p):
                for y in g.basis(q):
                    xy = g.multiply(x, p, y, q)
                    for z in g.basis(r):
                        if g.multiply(xy, p + q, z, r) != g.multiply(x, p, g.multiply(y, q, z, r), q + r):
                            return False
    return True


def poincare_product_check(q, cutoff=DEFAULT_CUTOFF):
    """Coefficients of t^1..t^cutoff in P_A(t) P_{A!}(-t); all zero iff the identity holds."""
    a = graded_model(q, cutoff).dims
    b = graded_model(koszul_dual(q), cutoff).dims
    return [sum(a[m - n] * (-1) ** n * b[n] for n in range(m + 1)) for m in range(1, cutoff + 1)]
