# cython: language_level=3
"""Compiled term-dict kernels; drop-in replacement for toricpatch._pure.

Coefficients stay arbitrary Python numbers (Fraction or int) so results are
bit-identical to the fallback; the win comes from doing the tuple arithmetic
and dict merging in C loops.
"""

from cpython.tuple cimport PyTuple_GET_ITEM, PyTuple_GET_SIZE, PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF

cdef inline tuple _tuple_add(tuple ea, tuple eb):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(ea)
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object s
    for i in range(n):
        s = (<object>PyTuple_GET_ITEM(ea, i)) + (<object>PyTuple_GET_ITEM(eb, i))
        Py_INCREF(s)
        PyTuple_SET_ITEM(out, i, s)
    return out


def terms_add(dict a, dict b):
    cdef dict out = dict(a)
    cdef object exp, c, s
    for exp, c in b.items():
        s = out.get(exp)
        if s is None:
            out[exp] = c
        else:
            s = s + c
            if s:
                out[exp] = s
            else:
                del out[exp]
    return out


def terms_sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef object exp, c, s
    for exp, c in b.items():
        s = out.get(exp)
        if s is None:
            out[exp] = -c
        else:
            s = s - c
            if s:
                out[exp] = s
            else:
                del out[exp]
    return out


def terms_neg(dict a):
    cdef dict out = {}
    cdef object exp, c
    for exp, c in a.items():
        out[exp] = -c
    return out


def terms_scale(dict a, c):
    cdef dict out = {}
    cdef object exp, coef
    if not c:
        return out
    for exp, coef in a.items():
        out[exp] = coef * c
    return out


def terms_mul(dict a, dict b):
    cdef dict out = {}
    cdef object ea, ca, eb, cb, s, prod
    cdef tuple e
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _tuple_add(<tuple>ea, <tuple>eb)
            prod = ca * cb
            s = out.get(e)
            if s is None:
                out[e] = prod
            else:
                s = s + prod
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def terms_submul(dict a, dict b, tuple exp, coeff):
    """a - coeff * x^exp * b, the fused hot op of division loops."""
    cdef dict out = dict(a)
    cdef object eb, cb, s, prod
    cdef tuple e
    for eb, cb in b.items():
        e = _tuple_add(exp, <tuple>eb)
        prod = coeff * cb
        s = out.get(e)
        if s is None:
            out[e] = -prod
        else:
            s = s - prod
            if s:
                out[e] = s
            else:
                del out[e]
    return out
