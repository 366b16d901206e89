"""Sparse fraction-free elimination over the integers (pure Python kernel).

Rows are ``dict[int, int]`` mapping column index to a nonzero integer.  Results
are primitive integer rows with a positive pivot entry, which is a canonical
representative of the reduced row echelon form over the rationals.
"""

from math import gcd


def _primitive(r):
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            break
    c0 = min(r)
    if r[c0] < 0:
        g = -g
    if g != 1:
        r = {k: v // g for k, v in r.items()}
    return r


def _combine(r, p, c):
    """Return a primitive multiple of ``p[c]*r - r[c]*p`` (column c cleared)."""
    a = r[c]
    b = p[c]
    g = gcd(a, b)
    ma = b // g
    mb = a // g
    if ma < 0:
        ma, mb = -ma, -mb
    if ma != 1:
        out = {k: v * ma for k, v in r.items()}
    else:
        out = dict(r)
    for k, v in p.items():
        nv = out.get(k, 0) - mb * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def rref_int(rows, ncols=None):
    """Reduced row echelon form of the span of ``rows``.

    Returns a list of ``(pivot, row)`` sorted by pivot column.
    """
    piv = {}
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        if not r:
            continue
        for c in [c for c in r if c in piv]:
            if c in r:
                r = _combine(r, piv[c], c)
                if not r:
                    break
        if not r:
            continue
        r = _primitive(r)
        c0 = min(r)
        for pc, p in list(piv.items()):
            if c0 in p:
                q = _combine(p, r, c0)
                piv[pc] = _primitive(q)
        piv[c0] = r
    return sorted(piv.items())


def rank_int(rows, ncols=None):
    """Rank of the span of ``rows`` (forward elimination only)."""
    piv = {}
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                piv[c] = _primitive(r)
                break
            r = _combine(r, p, c)
    return len(piv)
