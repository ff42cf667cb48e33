"""Exact division, multivariate gcd, resultants, and squarefree parts.

The gcd treats one variable as main and runs a primitive polynomial
remainder sequence (pseudo-remainders with content extraction); the
resultant runs the subresultant PRS with the classical g/h scaling so all
divisions are exact.  Both require ordinary (non-Laurent) inputs; callers
normalize Laurent polynomials first.  gcd output is monic in graded-lex
order so test fixtures are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from toricpatch.poly import Poly, grlex_key


class NotDivisibleError(ArithmeticError):
    pass


def _require_ordinary(*polys: Poly):
    for p in polys:
        if p.is_laurent():
            raise ValueError("operation requires ordinary (non-Laurent) polynomials")


def try_exact_divide(f: Poly, g: Poly) -> Optional[Poly]:
    """Quotient f/g when g divides f exactly, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.nvars != g.nvars:
        raise ValueError("arity mismatch")
    if f.is_zero():
        return f
    if f.is_laurent() or g.is_laurent():
        f_ord, f_shift = f.laurent_normalize()
        g_ord, g_shift = g.laurent_normalize()
        q = try_exact_divide(f_ord, g_ord)
        if q is None:
            return None
        shift = tuple(a - b for a, b in zip(f_shift, g_shift))
        return q.mul_term(1, shift)
    g_exp, g_coeff = g.leading()
    quotient_terms = {}
    rem = f
    while not rem.is_zero():
        r_exp, r_coeff = rem.leading()
        exp = tuple(a - b for a, b in zip(r_exp, g_exp))
        if any(e < 0 for e in exp):
            return None
        c = r_coeff / g_coeff
        quotient_terms[exp] = c
        rem = rem.submul(g, c, exp)
    return Poly(quotient_terms, f.nvars, _trusted=True)


def exact_divide(f: Poly, g: Poly) -> Poly:
    q = try_exact_divide(f, g)
    if q is None:
        raise NotDivisibleError(f"({g}) does not divide ({f})")
    return q


def divides(g: Poly, f: Poly) -> bool:
    return try_exact_divide(f, g) is not None


# -- univariate views ------------------------------------------------------


def coeffs_in(f: Poly, var: int) -> list:
    """Coefficients of f as a polynomial in one variable (index = power).

    Each coefficient is a Poly of the same arity with zero exponent in var.
    """
    d = f.degree_in(var)
    if d < 0:
        return []
    buckets = [dict() for _ in range(d + 1)]
    for exp, c in f.items():
        e = exp[var]
        new = list(exp)
        new[var] = 0
        buckets[e][tuple(new)] = c
    return [Poly(b, f.nvars, _trusted=True) for b in buckets]


def lead_coeff_in(f: Poly, var: int) -> Poly:
    d = f.degree_in(var)
    terms = {}
    for exp, c in f.items():
        if exp[var] == d:
            new = list(exp)
            new[var] = 0
            terms[tuple(new)] = c
    return Poly(terms, f.nvars, _trusted=True)


def pseudo_rem(f: Poly, g: Poly, var: int) -> Poly:
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f = q*g + rem."""
    df, dg = f.degree_in(var), g.degree_in(var)
    if dg < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if df < dg:
        return f
    lc_g = lead_coeff_in(g, var)
    steps = df - dg + 1
    rem = f
    while not rem.is_zero():
        dr = rem.degree_in(var)
        if dr < dg:
            break
        lc_r = lead_coeff_in(rem, var)
        shift = [0] * f.nvars
        shift[var] = dr - dg
        # rem = lc_g * rem - lc_r * x^(dr-dg) * g
        rem = lc_g * rem - g.mul_term(1, shift) * lc_r
        steps -= 1
    if steps > 0:
        rem = rem * lc_g**steps
    return rem


# -- gcd -------------------------------------------------------------------


def _monic(f: Poly) -> Poly:
    return f.monic() if not f.is_zero() else f


def _choose_main_var(f: Poly, g: Poly) -> Optional[int]:
    """Variable present in both, minimizing the smaller degree; else None."""
    best = None
    for var in range(f.nvars):
        df, dg = f.degree_in(var), g.degree_in(var)
        if df > 0 and dg > 0:
            key = (min(df, dg), max(df, dg), var)
            if best is None or key < best:
                best = key
    return best[2] if best is not None else None


def content_primitive(f: Poly, var: int):
    """(content, primitive part) of f viewed in the main variable var."""
    coeffs = [c for c in coeffs_in(f, var) if not c.is_zero()]
    if not coeffs:
        return Poly.zero(f.nvars), Poly.zero(f.nvars)
    content = coeffs[0]
    for c in coeffs[1:]:
        content = gcd_poly(content, c)
        if content.is_constant():
            break
    content = _monic(content)
    return content, exact_divide(f, content)


def gcd_poly(f: Poly, g: Poly) -> Poly:
    """Monic gcd via primitive pseudo-remainder sequences."""
    _require_ordinary(f, g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    if f.is_constant() or g.is_constant():
        return Poly.constant(1, f.nvars)
    var = _choose_main_var(f, g)
    if var is None:
        # No shared variable: gcd divides the content of each w.r.t. any of
        # its own variables, which is coefficient-wise.
        for v in range(f.nvars):
            if f.degree_in(v) > 0:
                c, _ = content_primitive(f, v)
                return gcd_poly(c, g)
        raise AssertionError("unreachable: non-constant poly with no variables")
    cf, pf = content_primitive(f, var)
    cg, pg = content_primitive(g, var)
    c = gcd_poly(cf, cg)
    if pf.degree_in(var) < pg.degree_in(var):
        pf, pg = pg, pf
    while not pg.is_zero():
        r = pseudo_rem(pf, pg, var)
        if not r.is_zero():
            _, r = content_primitive(r, var)
        pf, pg = pg, r
    return _monic(c * content_primitive(pf, var)[1])


def gcd_many(polys: Iterable[Poly]) -> Poly:
    result = None
    for p in polys:
        if p.is_zero():
            continue
        result = _monic(p) if result is None else gcd_poly(result, p)
        if result.is_constant():
            return result
    if result is None:
        raise ValueError("gcd of an all-zero collection is undefined")
    return result


# -- resultant -------------------------------------------------------------


def resultant(f: Poly, g: Poly, var: int) -> Poly:
    """Sylvester resultant of f and g with respect to one variable.

    Computed by the subresultant PRS (all divisions exact).  Convention for
    degree-0 input in the eliminated variable: that input raised to the
    degree of the other; 1 when both have degree 0.
    """
    _require_ordinary(f, g)
    if f.is_zero() or g.is_zero():
        return Poly.zero(f.nvars)
    m, n = f.degree_in(var), g.degree_in(var)
    if m == 0 and n == 0:
        return Poly.constant(1, f.nvars)
    if n == 0:
        return g**m
    if m == 0:
        return f**n
    sign = 1
    if m < n:
        f, g = g, f
        m, n = n, m
        if (m * n) % 2 == 1:
            sign = -sign
    a, A = content_primitive(f, var)
    b, B = content_primitive(g, var)
    scale = a**n * b**m
    gg = Poly.constant(1, f.nvars)
    hh = Poly.constant(1, f.nvars)
    while True:
        dA, dB = A.degree_in(var), B.degree_in(var)
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            sign = -sign
        R = pseudo_rem(A, B, var)
        A = B
        B = exact_divide(R, gg * hh**delta) if not R.is_zero() else R
        if B.is_zero():
            return Poly.zero(f.nvars)
        gg = lead_coeff_in(A, var)
        if delta > 0:
            hh = exact_divide(gg**delta, hh ** (delta - 1))
        if B.degree_in(var) == 0:
            break
    dA = A.degree_in(var)
    # B is now a nonzero constant in var and dA >= 1
    final = exact_divide(B**dA, hh ** (dA - 1))
    result = scale * final
    return result if sign > 0 else -result


# -- squarefree ------------------------------------------------------------


def squarefree_part(f: Poly) -> Poly:
    """f divided by gcd(f, all partials); keeps the leading coefficient of f."""
    _require_ordinary(f)
    if f.is_zero():
        raise ValueError("squarefree part of zero is undefined")
    if f.is_constant():
        return f
    g = f
    for var in range(f.nvars):
        if f.degree_in(var) > 0:
            g = gcd_poly(g, f.partial(var))
            if g.is_constant():
                return f
    return exact_divide(f, g)


def distinct_root_count(binary_form: Poly) -> int:
    """Number of distinct projective roots of a nonzero form in two variables."""
    sf = squarefree_part(binary_form)
    return sf.degree()
