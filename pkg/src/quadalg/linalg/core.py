"""Exact linear algebra: matrices, canonical subspaces and linear maps.

Vectors are sparse: ``dict[int, Fraction]`` with no zero values.  A
:class:`Subspace` stores its reduced row echelon basis, so two subspaces are
equal as sets exactly when their stored bases are identical.
"""

from fractions import Fraction
from math import lcm

from ..errors import AmbientMismatch
from ..scalars import to_scalar
from ._kernel import rank_int, rref_int


def _int_row(vec):
    den = 1
    for v in vec.values():
        if v.denominator != 1:
            den = lcm(den, v.denominator)
    if den == 1:
        return {k: int(v) for k, v in vec.items() if v}
    return {k: int(v * den) for k, v in vec.items() if v}


def _canonical(piv_rows):
    out = []
    for p, row in piv_rows:
        lead = row[p]
        out.append(tuple((k, Fraction(row[k], lead)) for k in sorted(row)))
    return tuple(out)


def rref_vectors(vectors, ncols):
    """Canonical reduced echelon basis (tuple of sorted (col, value) rows)."""
    return _canonical(rref_int([_int_row(v) for v in vectors if v], ncols))


def rank_vectors(vectors, ncols):
    return rank_int([_int_row(v) for v in vectors if v], ncols)


def add_scaled(acc, vec, c=1):
    """acc += c * vec, in place."""
    if not c:
        return acc
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def scale(vec, c):
    if not c:
        return {}
    return {k: c * v for k, v in vec.items()}


def clean(vec):
    return {k: Fraction(v) for k, v in vec.items() if v}


class Matrix:
    """Dense row-major matrix of Scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(tuple(to_scalar(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entries do not match the declared shape")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, data, cols=None):
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_sparse_rows(cls, vectors, cols):
        grid = [[0] * cols for _ in vectors]
        for i, v in enumerate(vectors):
            for k, x in v.items():
                grid[i][k] = x
        return cls(len(grid), cols, grid)

    def row_vectors(self):
        return [{j: x for j, x in enumerate(r) if x} for r in self.entries]

    def column_vectors(self):
        return [{i: self.entries[i][j] for i in range(self.rows) if self.entries[i][j]}
                for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self):
        return Matrix(self.cols, self.rows, list(zip(*self.entries)) if self.rows else
                      [[] for _ in range(self.cols)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise AmbientMismatch("inner dimensions differ")
        cols = other.column_vectors()
        grid = []
        for r in self.entries:
            grid.append([sum((r[k] * v for k, v in c.items()), Fraction(0)) for c in cols])
        return Matrix(self.rows, other.cols, grid)

    def is_zero(self):
        return all(x == 0 for r in self.entries for x in r)

    def tolist(self):
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def rref(m):
    """Reduced row echelon form of ``m``: returns ``(R, pivots, rank)``.

    ``R`` keeps only the nonzero rows.
    """
    rows = rref_vectors(m.row_vectors(), m.cols)
    pivots = tuple(r[0][0] for r in rows)
    return Matrix.from_sparse_rows([dict(r) for r in rows], m.cols), pivots, len(rows)


class Subspace:
    """Linear subspace of Q^n held in canonical reduced row echelon form."""

    __slots__ = ("ambient_dim", "rows", "_hash")

    def __init__(self, ambient_dim, rows=()):
        # ``rows`` must already be canonical; use ``Subspace.span`` otherwise.
        self.ambient_dim = ambient_dim
        self.rows = tuple(rows)
        self._hash = None

    @classmethod
    def span(cls, ambient_dim, vectors):
        vectors = [v for v in vectors if v]
        for v in vectors:
            if max(v) >= ambient_dim or min(v) < 0:
                raise AmbientMismatch("vector index outside the ambient space")
        return cls(ambient_dim, rref_vectors(vectors, ambient_dim))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def full(cls, n):
        return cls(n, tuple(((i, Fraction(1)),) for i in range(n)))

    @classmethod
    def from_matrix(cls, m):
        return cls.span(m.cols, m.row_vectors())

    @property
    def dim(self):
        return len(self.rows)

    @property
    def pivots(self):
        return tuple(r[0][0] for r in self.rows)

    @property
    def basis(self):
        return Matrix.from_sparse_rows(self.vectors(), self.ambient_dim)

    def vectors(self):
        return [dict(r) for r in self.rows]

    def residual(self, vec):
        """vec minus its component along the basis; zero iff vec lies in self."""
        out = dict(vec)
        for r in self.rows:
            c = out.get(r[0][0])
            if c:
                for k, v in r:
                    nv = out.get(k, 0) - c * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def contains(self, vec):
        return not self.residual(vec)

    def __contains__(self, vec):
        return self.contains(vec)

    def coordinates(self, vec):
        """Coefficients of ``vec`` in the stored basis; raises if vec is outside."""
        if self.residual(vec):
            raise ValueError("vector is not in the subspace")
        return [Fraction(vec.get(p, 0)) for p in self.pivots]

    def is_subspace_of(self, other):
        _check(self, other)
        return all(other.contains(v) for v in self.vectors())

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.rows))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def kernel_vectors(rows, ncols):
    """Basis of {v : <row, v> = 0 for every row}, as sparse vectors."""
    ech = rref_vectors(rows, ncols)
    pivots = set()
    by_col = {}
    for r in ech:
        p = r[0][0]
        pivots.add(p)
        for k, v in r[1:]:
            by_col.setdefault(k, []).append((p, v))
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, v in by_col.get(f, ()):
            vec[p] = -v
        out.append(vec)
    return out


def kernel_basis(m):
    """Kernel {v : m v = 0} as a Subspace of Q^cols."""
    return Subspace.span(m.cols, kernel_vectors(m.row_vectors(), m.cols))


def annihilator(s):
    """Annihilator under the standard dual basis pairing."""
    return Subspace.span(s.ambient_dim, kernel_vectors(s.vectors(), s.ambient_dim))


def subspace_sum(a, b):
    _check(a, b)
    if not a.rows:
        return b
    if not b.rows:
        return a
    return Subspace.span(a.ambient_dim, a.vectors() + b.vectors())


def intersect(a, b):
    """Meet of two subspaces, as the common kernel of both annihilators."""
    _check(a, b)
    n = a.ambient_dim
    constraints = annihilator(a).vectors() + annihilator(b).vectors()
    return Subspace.span(n, kernel_vectors(constraints, n))


def intersect_all(spaces):
    spaces = list(spaces)
    n = spaces[0].ambient_dim
    constraints = []
    for s in spaces:
        _check(s, spaces[0])
        constraints.extend(annihilator(s).vectors())
    return Subspace.span(n, kernel_vectors(constraints, n))


class LinearMap:
    """Linear map Q^dom -> Q^cod stored as the images of the basis vectors."""

    __slots__ = ("dom", "cod", "columns")

    def __init__(self, dom, cod, columns):
        if len(columns) != dom:
            raise AmbientMismatch("one image per domain basis vector expected")
        self.dom = dom
        self.cod = cod
        self.columns = [clean(c) for c in columns]

    @classmethod
    def zero(cls, dom, cod):
        return cls(dom, cod, [{} for _ in range(dom)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_matrix(cls, m):
        return cls(m.cols, m.rows, m.column_vectors())

    def apply(self, vec):
        out = {}
        for k, v in vec.items():
            add_scaled(out, self.columns[k], v)
        return out

    def compose(self, inner):
        """self after inner."""
        if inner.cod != self.dom:
            raise AmbientMismatch("cannot compose: dimensions differ")
        return LinearMap(inner.dom, self.cod, [self.apply(c) for c in inner.columns])

    def __add__(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise AmbientMismatch("shapes differ")
        return LinearMap(self.dom, self.cod,
                         [add_scaled(dict(a), b) for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise AmbientMismatch("shapes differ")
        return LinearMap(self.dom, self.cod,
                         [add_scaled(dict(a), b, -1) for a, b in zip(self.columns, other.columns)])

    def transpose(self):
        rows = [{} for _ in range(self.cod)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                rows[i][j] = v
        return LinearMap(self.cod, self.dom, rows)

    def rank(self):
        if self.dom == 0 or self.cod == 0:
            return 0
        return rank_vectors(self.columns, self.cod)

    def is_zero(self):
        return not any(self.columns)

    def matrix(self):
        grid = [[Fraction(0)] * self.dom for _ in range(self.cod)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                grid[i][j] = v
        return Matrix(self.cod, self.dom, grid)

    def __eq__(self, other):
        return (isinstance(other, LinearMap) and self.dom == other.dom
                and self.cod == other.cod and self.columns == other.columns)

    def __repr__(self):
        return f"LinearMap({self.dom} -> {self.cod})"


def inverse(m):
    """Inverse of a square Matrix, or None when it is singular."""
    n = m.rows
    if m.cols != n:
        raise AmbientMismatch("only square matrices have inverses")
    aug = []
    for i, r in enumerate(m.entries):
        v = {j: x for j, x in enumerate(r) if x}
        v[n + i] = Fraction(1)
        aug.append(v)
    ech = rref_vectors(aug, 2 * n)
    if len(ech) < n or any(r[0][0] != i for i, r in enumerate(ech[:n])):
        return None
    grid = [[Fraction(0)] * n for _ in range(n)]
    for i, r in enumerate(ech[:n]):
        for k, v in r:
            if k >= n:
                grid[i][k - n] = v
    return Matrix(n, n, grid)
