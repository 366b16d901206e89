"""Index bookkeeping for tensor powers of E and embedded subspaces.

A monomial e_{i_1} ⊗ ... ⊗ e_{i_n} of E^{⊗n} has flat index equal to the
mixed-radix value of its letters in base dim E (first letter most significant),
so flat order is lexicographic order on letter sequences.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import AmbientMismatch
from .linalg import Subspace, annihilator, kernel_vectors, subspace_sum


@dataclass(frozen=True)
class TensorIndex:
    dim_e: int
    degree: int
    letters: tuple

    def __post_init__(self):
        if len(self.letters) != self.degree:
            raise ValueError("letters must have length equal to the degree")
        if any(not 0 <= x < self.dim_e for x in self.letters):
            raise ValueError("letter outside [0, dim_e)")

    @property
    def flat(self):
        return flat_index(self.letters, self.dim_e)

    @classmethod
    def from_flat(cls, flat, dim_e, degree):
        return cls(dim_e, degree, letters_of(flat, dim_e, degree))


def flat_index(letters, dim_e):
    i = 0
    for x in letters:
        i = i * dim_e + x
    return i


def letters_of(flat, dim_e, degree):
    out = [0] * degree
    for k in range(degree - 1, -1, -1):
        flat, out[k] = divmod(flat, dim_e)
    return tuple(out)


def embed_vector(vec, left, right, u, w):
    """u ⊗ vec ⊗ w for monomials u (of size ``left``) and w; sizes are d^k counts."""
    base = u * left
    return {(base + i) * right + w: v for i, v in vec.items()}


def embed_factor(s, r, t, dim_e):
    """E^{⊗r} ⊗ s ⊗ E^{⊗t} for a subspace s of E^{⊗k}."""
    k = _degree_of(s.ambient_dim, dim_e)
    inner = s.ambient_dim
    dl, dr = dim_e ** r, dim_e ** t
    rows = []
    # The embedded spanning set is already reduced; only the order changes.
    for u in range(dl):
        for row in s.rows:
            for w in range(dr):
                rows.append(tuple(((u * inner + i) * dr + w, v) for i, v in row))
    rows.sort(key=lambda row: row[0][0])
    return Subspace(dim_e ** (r + k + t), tuple(rows))


def _degree_of(ambient, dim_e):
    k, n = 0, 1
    while n < ambient:
        n *= dim_e
        k += 1
    if n != ambient:
        raise AmbientMismatch(f"{ambient} is not a power of {dim_e}")
    return k


def slices_last_two(vec, dim_e):
    """Split a vector of E^{⊗n} as sum over u of e_u ⊗ vec_u with vec_u in E⊗E."""
    d2 = dim_e * dim_e
    out = {}
    for i, v in vec.items():
        u, rest = divmod(i, d2)
        out.setdefault(u, {})[rest] = v
    return out


def _dim_of(R, dim_e):
    if dim_e is not None:
        return dim_e
    d = 1
    while d * d < R.ambient_dim:
        d += 1
    if d * d != R.ambient_dim:
        raise AmbientMismatch("relation space must live in E⊗E")
    return d


def dual_component(R, n, dim_e=None):
    """Intersection of E^{⊗r} ⊗ R ⊗ E^{⊗s} over r+s+2 = n (the space A!*_n).

    Built degree by degree as the elements of A!*_{n-1} ⊗ E whose last two
    tensor factors lie in R.
    """
    return _dual_component(R, n, _dim_of(R, dim_e))


@lru_cache(maxsize=None)
def _dual_component(R, n, dim_e):
    if n == 0:
        return Subspace.full(1)
    if n == 1:
        return Subspace.full(dim_e)
    if n == 2:
        return R
    prev = _dual_component(R, n - 1, dim_e)
    cand = embed_factor(prev, 0, 1, dim_e).vectors()
    if not cand:
        return Subspace.zero(dim_e ** n)
    ann_r = annihilator(R).vectors()
    # constraint rows indexed by (u, j): <ann_j, slice_u(candidate)> = 0
    images = []
    for c in cand:
        sl = slices_last_two(c, dim_e)
        img = {}
        for u, part in sl.items():
            for j, a in enumerate(ann_r):
                val = sum((a[k] * v for k, v in part.items() if k in a), Fraction(0))
                if val:
                    img[u * len(ann_r) + j] = val
        images.append(img)
    # kernel of the map coefficients -> constraint values
    nconstr = dim_e ** (n - 2) * len(ann_r)
    rows = [{} for _ in range(nconstr)]
    for k, img in enumerate(images):
        for i, v in img.items():
            rows[i][k] = v
    coeffs = kernel_vectors([r for r in rows if r], len(cand))
    vecs = []
    for cvec in coeffs:
        acc = {}
        for k, v in cvec.items():
            for i, x in cand[k].items():
                nv = acc.get(i, 0) + v * x
                if nv:
                    acc[i] = nv
                else:
                    acc.pop(i, None)
        vecs.append(acc)
    return Subspace.span(dim_e ** n, vecs)


def ideal_component(R, n, dim_e=None):
    """Degree-n part of the two-sided ideal (R): sum of E^{⊗r} ⊗ R ⊗ E^{⊗s}, r+s+2 = n."""
    return _ideal_component(R, n, _dim_of(R, dim_e))


@lru_cache(maxsize=None)
def _ideal_component(R, n, dim_e):
    if n < 2:
        return Subspace.zero(dim_e ** n)
    if n == 2:
        return R
    prev = _ideal_component(R, n - 1, dim_e)
    return subspace_sum(embed_factor(prev, 0, 1, dim_e), embed_factor(R, n - 2, 0, dim_e))
