"""Independent dimension oracle: truncated-degree Gaussian elimination.

Computes dim_k of R^rank / N for the localization at the origin by row
reduction over all monomials of total degree < D, increasing D until the
count stabilizes.  Shares no code with the standard-basis machinery it is
used to check: plain dense elimination over Fraction (or F_p ints).
"""

from fractions import Fraction
from itertools import product


def monomials_below(nvars, cap):
    """All exponent tuples of total degree < cap, a fixed deterministic order."""
    out = []
    for total in range(cap):
        for combo in product(range(total + 1), repeat=nvars):
            if sum(combo) == total:
                out.append(combo)
    return out


def _row_reduce(rows, p):
    """In-place elimination; returns the rank."""
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p) if p else Fraction(1) / rows[rank][col]
        rows[rank] = [(v * inv) % p if p else v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                if p:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
                else:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _valuation(terms):
    return min(sum(m) for (_, m), _c in terms)


def quotient_dim_at_cap(gens, nvars, rank, cap, p=0):
    """dim of (free module of rank) / (gens + all terms of degree >= cap)."""
    monos = monomials_below(nvars, cap)
    index = {}
    for comp in range(rank):
        for m in monos:
            index[(comp, m)] = len(index)
    rows = []
    for g in gens:
        if not g:
            continue
        val = _valuation(g)
        for shift_deg in range(cap - val):
            for shift in monomials_below(nvars, shift_deg + 1):
                if sum(shift) != shift_deg:
                    continue
                row = [0] * len(index)
                nonzero = False
                for (comp, m), c in g:
                    key = tuple(a + b for a, b in zip(m, shift))
                    if sum(key) < cap:
                        row[index[(comp, key)]] = c % p if p else c
                        if c:
                            nonzero = True
                if nonzero:
                    rows.append(row)
    rank_rows = _row_reduce(rows, p) if rows else 0
    return len(index) - rank_rows


def local_dimension(gens, nvars, rank=1, p=0, max_cap=24, window=3):
    """Stabilized local quotient dimension, or None if no plateau is found.

    ``gens``: list of term lists [((component, exponents), coeff), ...].
    """
    history = []
    for cap in range(1, max_cap + 1):
        d = quotient_dim_at_cap(gens, nvars, rank, cap, p)
        history.append(d)
        if len(history) >= window and len(set(history[-window:])) == 1:
            return history[-1]
    return None


def poly_terms(poly, component=0):
    """Adapter: versalkit Poly -> oracle term list (data only, no logic reuse)."""
    return [((component, m), c) for m, c in poly.terms.items()]


def vec_terms(vec):
    out = []
    for comp, poly in enumerate(vec.comps):
        out.extend(poly_terms(poly, comp))
    return out
