"""Pure-Python term-dict kernel.

Polynomials are dicts mapping exponent tuples to nonzero coefficients
(Fraction for characteristic 0, int in [0,p) for F_p; the modulus p is
threaded through every call, p == 0 meaning the rationals).  The compiled
twin in ``_speedups.pyx`` implements the same contract.
"""

BACKEND = "python"


def add_terms(a, b, p):
    """a + b."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    if p:
        for m, c in b.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            elif m in out:
                del out[m]
    else:
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
    return out


def sub_terms(a, b, p):
    """a - b."""
    out = dict(a)
    if p:
        for m, c in b.items():
            v = (out.get(m, 0) - c) % p
            if v:
                out[m] = v
            elif m in out:
                del out[m]
    else:
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
    return out


def neg_terms(a, p):
    if p:
        return {m: (-c) % p for m, c in a.items()}
    return {m: -c for m, c in a.items()}


def scale_terms(a, c, p):
    """c * a for a scalar c."""
    if p:
        c %= p
        if c == 0:
            return {}
        if c == 1:
            return dict(a)
        return {m: (c * v) % p for m, v in a.items()}
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    return {m: c * v for m, v in a.items()}


def mul_terms(a, b, p):
    """a * b."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    if p:
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
    else:
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = out.get(m)
                if v is None:
                    v = c1 * c2
                    if v:
                        out[m] = v
                else:
                    v = v + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        del out[m]
    return out


def axpy_terms(a, c, shift, b, p):
    """a - c * x^shift * b, the inner reduction step."""
    out = dict(a)
    if p:
        for m, v in b.items():
            key = tuple(x + y for x, y in zip(m, shift))
            w = (out.get(key, 0) - c * v) % p
            if w:
                out[key] = w
            elif key in out:
                del out[key]
    else:
        for m, v in b.items():
            key = tuple(x + y for x, y in zip(m, shift))
            w = out.get(key)
            if w is None:
                w = -c * v
                if w:
                    out[key] = w
            else:
                w = w - c * v
                if w:
                    out[key] = w
                else:
                    del out[key]
    return out


def _greater(e, f, code):
    """e > f under order code 0 degrevlex / 1 lex / 2 negdegrevlex."""
    if code == 1:
        return e > f
    de = sum(e)
    df = sum(f)
    if code == 0:
        if de != df:
            return de > df
    else:
        if de != df:
            return de < df
    # graded revlex tie break: last nonzero entry of e - f is negative
    for i in range(len(e) - 1, -1, -1):
        d = e[i] - f[i]
        if d:
            return d < 0
    return False


def lead_term(terms, code):
    """(monomial, coeff) of the largest term, or None for the zero dict."""
    best = None
    for m in terms:
        if best is None or _greater(m, best, code):
            best = m
    if best is None:
        return None
    return best, terms[best]
