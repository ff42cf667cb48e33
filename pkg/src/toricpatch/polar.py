"""Toric polar linear systems of plane forms.

For a form F the system is spanned by the toric derivatives x F_x, y F_y,
z F_z.  Removing their gcd G (the product of repeated prime factors) leaves
the reduced system, whose three generators sum to deg(F) * (F / G) by the
Euler relation.  This module also decides whether an irreducible factor is
contracted by the associated map, normalizes contracted binomials, and
counts singular points off the coordinate lines.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from toricpatch import linalg
from toricpatch.birational import RationalPlaneMap, count_common_zeros
from toricpatch.euclid import (
    divides,
    exact_divide,
    gcd_many,
    gcd_poly,
    resultant,
    squarefree_part,
)
from toricpatch.poly import Poly


def toric_derivatives(f: Poly) -> Tuple[Poly, Poly, Poly]:
    return tuple(Poly.variable(i, 3) * f.partial(i) for i in range(3))


@dataclass(frozen=True)
class ToricPolarSystem:
    source: Poly
    degree: int
    components: Tuple[Poly, Poly, Poly]
    removed_factor: Poly
    reduced: Tuple[Poly, Poly, Poly]

    def map(self) -> RationalPlaneMap:
        return RationalPlaneMap.make(self.reduced)


def toric_polar_system(f: Poly) -> ToricPolarSystem:
    """Build the toric polar system of a nonzero form coprime to xyz.

    Laurent input is normalized by a monomial first (which does not change
    the system projectively).
    """
    if f.nvars != 3:
        raise ValueError("expected a polynomial in x, y, z")
    if f.is_zero():
        raise ValueError("zero polynomial has no toric polar system")
    f, _ = f.laurent_normalize()
    if not f.is_form():
        raise ValueError("input must be homogeneous")
    degree = f.degree()
    comps = toric_derivatives(f)
    nonzero = [c for c in comps if not c.is_zero()]
    removed = gcd_many(nonzero)
    if removed.is_constant():
        removed = Poly.constant(1, 3)
        reduced = comps
    else:
        reduced = tuple(
            c if c.is_zero() else exact_divide(c, removed) for c in comps
        )
    system = ToricPolarSystem(f, degree, comps, removed, reduced)
    _check_system(system)
    return system


def _check_system(system: ToricPolarSystem):
    f = system.source
    total = system.components[0] + system.components[1] + system.components[2]
    if total != f * f.degree():
        raise AssertionError("Euler relation failed")
    reduced_total = system.reduced[0] + system.reduced[1] + system.reduced[2]
    if reduced_total != exact_divide(f, system.removed_factor) * f.degree():
        raise AssertionError("reduced Euler relation failed")


# -- contraction -------------------------------------------------------------


@dataclass(frozen=True)
class ContractionVerdict:
    contracted: bool
    image_point: Optional[tuple]


def _form_exponents(nvars: int, degree: int) -> List[tuple]:
    out: List[tuple] = []

    def rec(at, remaining, prefix):
        if at == nvars - 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(at + 1, remaining - e, prefix + (e,))

    rec(0, degree, ())
    return out


def contraction_test(g: Poly, components: Sequence[Poly]) -> ContractionVerdict:
    """Decide whether the map with the given components contracts {g = 0}.

    Solves one joint linear system for an image point (l:m:n) and cofactors
    p, q, r with  m*A - l*B = p g,  n*B - m*C = q g,  n*A - l*C = r g.
    """
    a, b, c = components
    if all(comp.is_zero() or divides(g, comp) for comp in components):
        raise ValueError("all components vanish on the curve: degenerate input")
    deg_map = max(comp.degree() for comp in components)
    deg_g = g.degree()
    deg_cof = deg_map - deg_g
    cof_exps = _form_exponents(3, deg_cof) if deg_cof >= 0 else []
    ncof = len(cof_exps)
    # unknown vector: (l, m, n, p coeffs, q coeffs, r coeffs)
    nunk = 3 + 3 * ncof
    eq_exps = sorted(_form_exponents(3, deg_map))
    index = {e: i for i, e in enumerate(eq_exps)}
    rows = []

    def add_equations(lhs_pairs, cof_block):
        # lhs_pairs: [(unknown index, poly)], minus g * cofactor block
        block = [[Fraction(0)] * nunk for _ in eq_exps]
        for unk, poly in lhs_pairs:
            for exp, coeff in poly.items():
                block[index[exp]][unk] += coeff
        for j, ce in enumerate(cof_exps):
            col = 3 + cof_block * ncof + j
            for exp, coeff in g.items():
                tot = tuple(x + y for x, y in zip(exp, ce))
                block[index[tot]][col] -= coeff
        rows.extend(block)

    add_equations([(1, a), (0, -b)], 0)  # m*A - l*B = p g
    add_equations([(2, b), (1, -c)], 1)  # n*B - m*C = q g
    add_equations([(2, a), (0, -c)], 2)  # n*A - l*C = r g
    basis = linalg.nullspace(rows, nunk)
    for vec in basis:
        point = tuple(vec[:3])
        if any(point):
            return ContractionVerdict(True, point)
    return ContractionVerdict(False, None)


@dataclass(frozen=True)
class BinomialNormalForm:
    """Permuted shape x^a + alpha * y^b z^(a-b) of a contracted binomial."""

    a: int
    b: int
    alpha: Fraction
    permutation: Tuple[int, int, int]  # position i holds the original index
    coprime: bool


def binomial_contracted_normal_form(g: Poly) -> Optional[BinomialNormalForm]:
    """Normal form of an irreducible form with dependent toric derivatives.

    Returns None when the toric derivatives are linearly independent (the
    factor is not contracted).  Pure coordinate-plus-coordinate binomials
    like x + z are reported verbatim with b = 0.
    """
    if g.nvars != 3 or not g.is_form():
        raise ValueError("expected a form in x, y, z")
    derivs = toric_derivatives(g)
    exps = sorted({e for d in derivs for e, _ in d.items()})
    index = {e: i for i, e in enumerate(exps)}
    rows = []
    for d in derivs:
        row = [Fraction(0)] * len(exps)
        for e, coeff in d.items():
            row[index[e]] = coeff
        rows.append(row)
    if linalg.rank(rows) == 3:
        return None
    terms = g.sorted_terms()
    if len(terms) != 2:
        raise ValueError(
            "dependent toric derivatives but not a binomial: input is reducible "
            "or divisible by a coordinate"
        )
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        for first, second in (terms, terms[::-1]):
            e1 = tuple(first[0][p] for p in perm)
            e2 = tuple(second[0][p] for p in perm)
            if e1[1] == 0 and e1[2] == 0 and e2[0] == 0:
                a = e1[0]
                b = e2[1]
                alpha = second[1] / first[1]
                return BinomialNormalForm(a, b, alpha, perm, math.gcd(a, b) == 1)
    raise ValueError("binomial has no pure coordinate power: divisible by a coordinate")


# -- singular points off the coordinate lines --------------------------------


@dataclass(frozen=True)
class SingularCountReport:
    count: int
    rational_points: Tuple[tuple, ...]


def _rational_roots(p: Poly, var: int = 0) -> List[Fraction]:
    """All rational roots of a polynomial univariate in the given variable."""
    if p.degree_in(var) <= 0:
        return []
    denom = 1
    for _, c in p.items():
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = {exp[var]: int(c * denom) for exp, c in p.items()}
    roots: List[Fraction] = []
    if 0 not in ints:
        roots.append(Fraction(0))
        low = min(ints)
        ints = {e - low: v for e, v in ints.items()}
    deg = max(ints)
    a0, an = ints[0], ints[deg]

    def divisors(n):
        n = abs(n)
        out = set()
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.add(i)
                out.add(n // i)
            i += 1
        return sorted(out)

    for num in divisors(a0):
        for den in divisors(an):
            for sign in (1, -1):
                cand = Fraction(sign * num, den)
                if cand not in roots and sum(v * cand**e for e, v in ints.items()) == 0:
                    roots.append(cand)
    return sorted(roots)


def _singular_points_on_line(s: Poly, line: int) -> int:
    """Distinct singular points of {s = 0} on one coordinate line."""
    restricted = [p.set_var(line, 0) for p in (s, s.partial(0), s.partial(1), s.partial(2))]
    nonzero = [p for p in restricted if not p.is_zero()]
    if not nonzero:
        raise ValueError("curve contains a coordinate line; input not coprime to xyz")
    g = gcd_many(nonzero)
    if g.is_constant():
        return 0
    return squarefree_part(g).degree()


def _corner_singular(s: Poly, corner: tuple) -> bool:
    return all(s.partial(i).evaluate(corner) == 0 for i in range(3))


def _rational_singular_points(s: Poly) -> List[tuple]:
    """Rational singular points with all coordinates nonzero (z = 1 chart).

    Best-effort reporting: the count itself comes from the elimination
    machinery; this walks rational roots of an x-eliminant.
    """
    chart = s.set_var(2, 1)
    ax = s.partial(0).set_var(2, 1)
    ay = s.partial(1).set_var(2, 1)
    eliminant = Poly.zero(3)
    for pair in ((ax, ay), (chart, ax), (chart, ay)):
        if pair[0].degree_in(1) >= 0 and pair[1].degree_in(1) >= 0:
            r = resultant(pair[0], pair[1], 1)
            if not r.is_zero():
                eliminant = r
                break
    if eliminant.is_zero() or eliminant.is_constant():
        return []
    points = []
    for x0 in _rational_roots(squarefree_part(eliminant)):
        if x0 == 0:
            continue
        candidates: set = set()
        for poly in (ax.set_var(0, x0), ay.set_var(0, x0), chart.set_var(0, x0)):
            if not poly.is_zero() and poly.degree_in(1) > 0:
                candidates.update(_rational_roots(poly, var=1))
                break
        for y0 in candidates:
            if y0 == 0:
                continue
            p = (x0, y0, Fraction(1))
            if s.evaluate(p) == 0 and all(s.partial(i).evaluate(p) == 0 for i in range(3)):
                points.append(p)
    return points


def off_axis_singular_count(f: Poly, seed: int = 0) -> SingularCountReport:
    """Singular points of the squarefree curve of f away from xyz = 0.

    The total singular count uses the seeded elimination machinery; points
    on the coordinate lines are counted exactly line by line and subtracted.
    Rational off-axis singular points are reported explicitly.
    """
    if f.nvars != 3:
        raise ValueError("expected a form in x, y, z")
    f, _ = f.laurent_normalize()
    if not f.is_form():
        raise ValueError("input must be homogeneous")
    s = squarefree_part(f)
    if s.degree() <= 1:
        return SingularCountReport(0, ())
    partials = [s.partial(i) for i in range(3)]
    rng = random.Random(f"singular:{seed}")
    total = count_common_zeros(partials, rng)
    on_axes = sum(_singular_points_on_line(s, line) for line in range(3))
    corners = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    on_axes -= sum(1 for corner in corners if _corner_singular(s, corner))
    count = total - on_axes
    return SingularCountReport(count, tuple(_rational_singular_points(s)))
