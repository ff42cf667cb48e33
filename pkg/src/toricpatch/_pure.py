"""Pure-Python term-dict kernels (fallback backend).

A term dict maps an exponent tuple (one int per variable, negatives allowed
for Laurent terms) to a nonzero coefficient (Fraction or int).  These
functions are the inner loops of all polynomial arithmetic in the package;
``toricpatch._speedups`` is a compiled drop-in replacement with identical
semantics.  All functions return fresh dicts and never mutate their inputs.
"""


def terms_add(a, b):
    out = dict(a)
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


def terms_sub(a, b):
    out = dict(a)
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


def terms_neg(a):
    return {exp: -c for exp, c in a.items()}


def terms_scale(a, c):
    if not c:
        return {}
    return {exp: coef * c for exp, coef in a.items()}


def terms_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(i + j for i, j in zip(ea, eb))
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


def terms_submul(a, b, exp, coeff):
    """a - coeff * x^exp * b, the fused hot op of division loops."""
    out = dict(a)
    for eb, cb in b.items():
        e = tuple(i + j for i, j in zip(exp, eb))
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
