"""Standard example presentations used by tests, benchmarks and ``corpus/*.quad``."""

from fractions import Fraction
from itertools import combinations

from .nonhomogeneous import from_assoc, from_lie, from_relations, homogeneous
from .quadratic import QuadraticPresentation


def _labels(d, stem="x"):
    return tuple(f"{stem}{i}" for i in range(d))


def symmetric(d, labels=None):
    """S(E): relations x_i x_j − x_j x_i."""
    rels = [{(i, j): 1, (j, i): -1} for i, j in combinations(range(d), 2)]
    return QuadraticPresentation.from_relations(labels or _labels(d), rels)


def exterior(d, labels=None):
    rels = [{(i, i): 1} for i in range(d)]
    rels += [{(i, j): 1, (j, i): 1} for i, j in combinations(range(d), 2)]
    return QuadraticPresentation.from_relations(labels or _labels(d), rels)


def trivial(d, labels=None):
    """E ⊕ 𝕂1: every product of generators vanishes (R = E⊗E)."""
    rels = [{(i, j): 1} for i in range(d) for j in range(d)]
    return QuadraticPresentation.from_relations(labels or _labels(d), rels)


def tensor(d, labels=None):
    return QuadraticPresentation.from_relations(labels or _labels(d), [])


def _check_q(q):
    q = [[Fraction(x) for x in row] for row in q]
    D = len(q)
    for a in range(D):
        if len(q[a]) != D or q[a][a] != 1:
            raise ValueError("q must be square with unit diagonal")
        for b in range(D):
            if q[a][b] * q[b][a] != 1:
                raise ValueError("q must satisfy q[a][b] q[b][a] = 1")
    return q


def q_polynomial(q, labels=None):
    """X^a X^b − q^{ab} X^b X^a for a < b."""
    q = _check_q(q)
    D = len(q)
    rels = [{(a, b): 1, (b, a): -q[a][b]} for a, b in combinations(range(D), 2)]
    return QuadraticPresentation.from_relations(labels or _labels(D, "X"), rels)


def q_exterior(q, labels=None):
    """ω_a ω_b + q^{ba} ω_b ω_a for all a, b (so ω_a² = 0)."""
    q = _check_q(q)
    D = len(q)
    rels = [{(a, a): 1} for a in range(D)]
    rels += [{(a, b): 1, (b, a): q[b][a]} for a, b in combinations(range(D), 2)]
    return QuadraticPresentation.from_relations(labels or _labels(D, "w"), rels)


def q_nakayama_expected(q):
    """σ(ω_a) = (−1)^{D−1} ∏_{b≠a} q^{ab} ω_a, as the diagonal list."""
    q = _check_q(q)
    D = len(q)
    out = []
    for a in range(D):
        c = Fraction((-1) ** (D - 1))
        for b in range(D):
            if b != a:
                c *= q[a][b]
        out.append(c)
    return out


TWISTED_LABELS = ("n0", "n1", "n2")


def _twisted_rels(nu, linear):
    nu = Fraction(nu)
    if not nu:
        raise ValueError("nu must be nonzero")
    n2 = nu * nu
    rels = [
        {(2, 0): nu, (0, 2): -1 / nu},
        {(1, 0): n2, (0, 1): -1 / n2},
        {(2, 1): n2, (1, 2): -1 / n2},
    ]
    if linear:
        rels[0][(1,)] = -1
        rels[1][(0,)] = -(1 + n2)
        rels[2][(2,)] = -(1 + n2)
    return rels


def twisted_su2_quadratic(nu=2):
    rels = [{k: v for k, v in r.items()} for r in _twisted_rels(nu, False)]
    return QuadraticPresentation.from_relations(TWISTED_LABELS, rels)


def twisted_su2(nu=2):
    """Quantum tangent space presentation of the twisted SU(2) differential calculus."""
    return from_relations(TWISTED_LABELS, _twisted_rels(nu, True))


def _bracket(d, entries):
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (i, j), vec in entries.items():
        for k, v in vec.items():
            c[i][j][k] = v
            c[j][i][k] = -v
    return c


def sl2_constants():
    # h, e, f:  [h,e] = 2e, [h,f] = −2f, [e,f] = h
    return _bracket(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


def sl2():
    return from_lie(sl2_constants(), ["h", "e", "f"])


def heisenberg_constants():
    return _bracket(3, {(0, 1): {2: 1}})


def heisenberg():
    return from_lie(heisenberg_constants(), ["x", "y", "z"])


def abelian(d=3):
    return from_lie([[[0] * d for _ in range(d)] for _ in range(d)], list(_labels(d, "e")))


def non_jacobi_constants():
    # [e0,e1] = e0, [e1,e2] = e1, [e2,e0] = 0
    return _bracket(3, {(0, 1): {0: 1}, (1, 2): {1: 1}})


def non_jacobi():
    return from_lie(non_jacobi_constants())


def idempotent():
    """One-dimensional algebra a·a = a."""
    return from_assoc([[[1]]], ["a"])


def matrix_units_table():
    # E_ij E_kl = δ_jk E_il, basis order E11, E12, E21, E22
    idx = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if j == k:
                table[a][b][idx.index((i, l))] = 1
    return table


def matrix_units():
    return from_assoc(matrix_units_table(), ["E11", "E12", "E21", "E22"])


def nonassoc_table():
    # a·a = b, a·b = a, everything else 0
    t = [[[0, 0] for _ in range(2)] for _ in range(2)]
    t[0][0] = [0, 1]
    t[0][1] = [1, 0]
    return t


def nonassoc():
    return from_assoc(nonassoc_table(), ["a", "b"])


def homogeneous_corpus():
    """Named homogeneous presentations exercised by the duality checks."""
    return {
        "symmetric3": symmetric(3),
        "exterior3": exterior(3),
        "trivial2": trivial(2),
        "tensor2": tensor(2),
        "qpoly2": q_polynomial([[1, 3], [Fraction(1, 3), 1]]),
        "qpoly3": q_polynomial([[1, 2, Fraction(1, 5)], [Fraction(1, 2), 1, 7], [5, Fraction(1, 7), 1]]),
        "qexterior3": q_exterior([[1, 2, Fraction(1, 5)], [Fraction(1, 2), 1, 7], [5, Fraction(1, 7), 1]]),
        "twisted_su2": twisted_su2_quadratic(2),
    }


def nonhomogeneous_corpus():
    return {
        "twisted_su2": twisted_su2(2),
        "sl2": sl2(),
        "heisenberg": heisenberg(),
        "abelian3": abelian(3),
        "non_jacobi": non_jacobi(),
        "idempotent": idempotent(),
        "matrix_units": matrix_units(),
        "nonassoc": nonassoc(),
        "symmetric3": homogeneous(symmetric(3)),
    }
