# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled term-dict kernel; contract mirrors _kernel_py exactly."""

BACKEND = "cython"


def add_terms(dict a, dict b, long p):
    cdef dict out
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    cdef object m, c, v
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


def sub_terms(dict a, dict b, long p):
    cdef dict out = dict(a)
    cdef object m, c, v
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


def neg_terms(dict a, long p):
    cdef dict out = {}
    cdef object m, c
    if p:
        for m, c in a.items():
            out[m] = (-c) % p
    else:
        for m, c in a.items():
            out[m] = -c
    return out


def scale_terms(dict a, object c, long p):
    cdef dict out = {}
    cdef object m, v
    if p:
        c = c % p
        if c == 0:
            return out
        if c == 1:
            return dict(a)
        for m, v in a.items():
            out[m] = (c * v) % p
    else:
        if c == 0:
            return out
        if c == 1:
            return dict(a)
        for m, v in a.items():
            out[m] = c * v
    return out


cdef inline tuple _madd(tuple m1, tuple m2):
    cdef Py_ssize_t n = len(m1)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <object>m1[i] + <object>m2[i]
    return tuple(out)


def mul_terms(dict a, dict b, long p):
    cdef dict out = {}
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    cdef object m1, c1, m2, c2, v
    cdef tuple m
    if p:
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _madd(<tuple>m1, <tuple>m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
    else:
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _madd(<tuple>m1, <tuple>m2)
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


def axpy_terms(dict a, object c, tuple shift, dict b, long p):
    """a - c * x^shift * b."""
    cdef dict out = dict(a)
    cdef object m, v, w
    cdef tuple key
    if p:
        for m, v in b.items():
            key = _madd(<tuple>m, shift)
            w = (out.get(key, 0) - c * v) % p
            if w:
                out[key] = w
            elif key in out:
                del out[key]
    else:
        for m, v in b.items():
            key = _madd(<tuple>m, shift)
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


cdef inline long _tdeg(tuple e):
    cdef long s = 0
    cdef Py_ssize_t i
    for i in range(len(e)):
        s += <long>e[i]
    return s


cdef bint _greater(tuple e, tuple f, int code):
    cdef long de, df, d
    cdef Py_ssize_t i
    if code == 1:
        return e > f
    de = _tdeg(e)
    df = _tdeg(f)
    if code == 0:
        if de != df:
            return de > df
    else:
        if de != df:
            return de < df
    for i in range(len(e) - 1, -1, -1):
        d = <long>e[i] - <long>f[i]
        if d:
            return d < 0
    return False


def lead_term(dict terms, int code):
    cdef tuple best = None
    cdef object m
    for m in terms:
        if best is None or _greater(<tuple>m, best, code):
            best = <tuple>m
    if best is None:
        return None
    return best, terms[best]
