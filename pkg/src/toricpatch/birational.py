"""Birationality of rational plane maps by exact fiber counting.

A map is given by three coprime forms of equal degree.  The generic fiber
cardinality is computed exactly per trial: shear coordinates by a seeded
random integer matrix, intersect the two fiber equations by a Sylvester
resultant in the z=1 chart, count distinct roots by squarefree degree, and
subtract the number of distinct base points.  Detectors (nontrivial gcd,
vanishing leading coefficients, Bezout-degree deficits, disagreement between
independent shears) trigger a re-shear, so a returned count is exact for the
chosen generic data; only the choice of generic target/shear is randomized.
"""

from __future__ import annotations

import enum
import json
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from toricpatch import linalg
from toricpatch.euclid import gcd_many, gcd_poly, resultant, squarefree_part
from toricpatch.poly import MonomialMatrix, Poly

BIRATIONAL = "birational"
NOT_BIRATIONAL = "not-birational"
DEGENERATE = "degenerate"


class InvalidSourceError(ValueError):
    """Source point lies in the base locus of the map."""


class DegenerateFiberError(RuntimeError):
    """Fiber equations share a positive-dimensional component."""


class FiberCountError(RuntimeError):
    """No generic shear found within the retry budget."""


class _Retry(Exception):
    pass


class TransformValidity(enum.Enum):
    VALID = "valid"
    NOT_PROJECTIVE = "not-projective"
    NOT_INVERTIBLE = "not-invertible"


def validate_monomial_transform(matrix: MonomialMatrix) -> TransformValidity:
    """Check that exponent columns define an invertible map of the plane.

    Projectivity needs equal column degrees; invertibility needs the
    differences alpha-gamma, beta-gamma to be a basis of the rank-2 lattice
    of sum-zero integer vectors (unit determinant in the basis (1,-1,0),
    (0,1,-1)).
    """
    degs = matrix.column_degrees()
    if not (degs[0] == degs[1] == degs[2]):
        return TransformValidity.NOT_PROJECTIVE
    alpha, beta, gamma = matrix.columns()
    u = tuple(a - g for a, g in zip(alpha, gamma))
    v = tuple(b - g for b, g in zip(beta, gamma))
    # coordinates in the sum-zero basis (1,-1,0), (0,1,-1)
    det = u[0] * (-v[2]) - (-u[2]) * v[0]
    if abs(det) != 1:
        return TransformValidity.NOT_INVERTIBLE
    return TransformValidity.VALID


@dataclass(frozen=True)
class RationalPlaneMap:
    """Three coprime equal-degree forms defining a rational self-map of the plane."""

    components: Tuple[Poly, Poly, Poly]
    degree: int

    @classmethod
    def make(cls, components: Sequence[Poly]) -> "RationalPlaneMap":
        comps = tuple(components)
        if len(comps) != 3 or any(c.nvars != 3 for c in comps):
            raise ValueError("need three polynomials in x, y, z")
        nonzero = [c for c in comps if not c.is_zero()]
        if not nonzero:
            raise ValueError("all components are zero")
        degrees = {c.degree() for c in nonzero}
        if len(degrees) != 1 or not all(c.is_form() for c in nonzero):
            raise ValueError("components must be forms of one common degree")
        common = gcd_many(nonzero)
        if not common.is_constant():
            from toricpatch.euclid import exact_divide

            comps = tuple(
                c if c.is_zero() else exact_divide(c, common) for c in comps
            )
        degree = next(c.degree() for c in comps if not c.is_zero())
        return cls(comps, degree)

    def apply(self, point: Sequence) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    def jacobian_det(self) -> Poly:
        rows = [[c.partial(v) for v in range(3)] for c in self.components]
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def base_point_check(map_: RationalPlaneMap, point: Sequence) -> bool:
    """True when every component vanishes at the (projective) point."""
    if not any(Fraction(v) for v in point):
        raise ValueError("projective point needs a nonzero coordinate")
    return all(c.evaluate(point) == 0 for c in map_.components)


# -- shears and chart resultants --------------------------------------------


def _random_shear(rng: random.Random):
    while True:
        m = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        if linalg.int_det3(m) != 0:
            return m


def compose_linear(f: Poly, matrix) -> Poly:
    subs = [
        Poly({(1, 0, 0): Fraction(row[0]), (0, 1, 0): Fraction(row[1]), (0, 0, 1): Fraction(row[2])}, 3)
        for row in matrix
    ]
    return f.compose(subs)


def _sf_xcoords(a: Poly, b: Poly) -> Poly:
    """Squarefree x-coordinate polynomial of the common zeros of forms a, b.

    Raises _Retry unless the shear was generic: both forms need a nonzero
    pure y-power term and the chart resultant must reach the full Bezout
    degree (no intersections at chart infinity, no leading-coefficient
    collapse).
    """
    da, db = a.degree(), b.degree()
    if a.coeff((0, da, 0)) == 0 or b.coeff((0, db, 0)) == 0:
        raise _Retry
    ra = a.set_var(2, 1)
    rb = b.set_var(2, 1)
    res = resultant(ra, rb, 1)
    if res.is_zero():
        raise _Retry
    if res.degree_in(0) != da * db:
        raise _Retry
    return squarefree_part(res)


def _random_combos(forms: Sequence[Poly], rng: random.Random) -> list:
    k = len(forms)
    while True:
        m = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(k)]
        if linalg.det(m) != 0:
            break
    out = []
    for row in m:
        combo = Poly.zero(3)
        for c, f in zip(row, forms):
            if c:
                combo = combo + f * c
        out.append(combo)
    return out


def _count_once(forms: Sequence[Poly], rng: random.Random) -> int:
    shear = _random_shear(rng)
    sheared = [compose_linear(f, shear) for f in forms]
    combos = _random_combos(sheared, rng)
    if any(c.is_zero() for c in combos):
        raise _Retry
    anchor = combos[-1]
    xpoly = None
    for f in combos[:-1]:
        if not gcd_poly(f, anchor).is_constant():
            raise _Retry
        sf = _sf_xcoords(f, anchor)
        xpoly = sf if xpoly is None else gcd_poly(xpoly, sf)
        if xpoly.is_constant():
            return 0
    return xpoly.degree_in(0)


def count_common_zeros(forms: Sequence[Poly], rng: random.Random, attempts: int = 40) -> int:
    """Number of distinct projective common zeros of equal-degree forms.

    The zero set must be finite.  Two independent generic draws must agree
    before a count is returned.
    """
    forms = [f for f in forms if not f.is_zero()]
    if len(forms) < 2:
        raise ValueError("need at least two nonzero forms")
    pending = None
    for _ in range(attempts):
        try:
            count = _count_once(forms, rng)
        except _Retry:
            continue
        if pending is None:
            pending = count
        elif pending == count:
            return count
        else:
            pending = count
    raise FiberCountError("no generic shear found while counting common zeros")


# -- fiber counting ----------------------------------------------------------


def fiber_count(
    map_: RationalPlaneMap,
    source: Sequence,
    seed: int = 0,
    rng: Optional[random.Random] = None,
    base_count: Optional[int] = None,
) -> int:
    """Cardinality of the fiber of the map through a non-base source point.

    Counts distinct points p outside the base locus with map(p) = map(source).
    """
    comps = map_.components
    target = [Fraction(c.evaluate(source)) for c in comps]
    if not any(target):
        raise InvalidSourceError(f"source {tuple(source)} lies in the base locus")
    if rng is None:
        rng = random.Random(f"fiber:{seed}")
    anchor = max(range(3), key=lambda i: (abs(target[i]), -i))
    others = [i for i in range(3) if i != anchor]
    g1 = comps[others[0]] * target[anchor] - comps[anchor] * target[others[0]]
    g2 = comps[others[1]] * target[anchor] - comps[anchor] * target[others[1]]
    if g1.is_zero() or g2.is_zero():
        raise DegenerateFiberError("proportional components: fibers are positive-dimensional")
    # A linear shear never changes coprimality, so test the pair once.
    if not gcd_poly(g1, g2).is_constant():
        raise DegenerateFiberError("fiber equations share a component")
    if base_count is None:
        base_count = count_common_zeros(comps, rng)
    pending = None
    for _ in range(40):
        shear = _random_shear(rng)
        h1 = compose_linear(g1, shear)
        h2 = compose_linear(g2, shear)
        try:
            sf = _sf_xcoords(h1, h2)
        except _Retry:
            continue
        count = sf.degree_in(0) - base_count
        if count < 0:
            continue
        if pending is None:
            pending = count
        elif pending == count:
            return count
        else:
            pending = count
    raise FiberCountError("no generic shear found while counting a fiber")


@dataclass(frozen=True)
class FiberTrial:
    source: tuple
    count: int

    def to_dict(self) -> dict:
        return {"source": [str(v) for v in self.source], "fiber": self.count}


@dataclass(frozen=True)
class FiberCountReport:
    verdict: str
    degree_estimate: Optional[int]
    trials: Tuple[FiberTrial, ...]
    seed: int

    @property
    def is_birational(self) -> bool:
        return self.verdict == BIRATIONAL

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "degree_estimate": self.degree_estimate,
            "seed": self.seed,
            "trials": [t.to_dict() for t in self.trials],
        }

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        if self.degree_estimate is not None:
            lines.append(f"degree-estimate: {self.degree_estimate}")
        lines.append(f"seed: {self.seed}")
        lines.append(f"trials: {len(self.trials)}")
        for i, t in enumerate(self.trials):
            coords = ":".join(str(v) for v in t.source)
            lines.append(f"trial {i}: source [{coords}] fiber {t.count}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _pick_source(map_: RationalPlaneMap, jac: Poly, rng: random.Random):
    for _ in range(400):
        p = tuple(Fraction(rng.randint(-1000, 1000)) for _ in range(3))
        if not any(p):
            continue
        values = map_.apply(p)
        if any(v == 0 for v in values):
            continue
        if jac.evaluate(p) == 0:
            continue
        return p
    raise FiberCountError("could not find a generic source point")


def is_birational(map_: RationalPlaneMap, trials: int = 5, seed: int = 0) -> FiberCountReport:
    """Monte-Carlo birationality verdict with exact per-trial fiber counts."""
    if trials < 1:
        raise ValueError("need at least one trial")
    jac = map_.jacobian_det()
    if jac.is_zero():
        return FiberCountReport(NOT_BIRATIONAL, 0, (), seed)
    base_rng = random.Random(f"{seed}:base")
    base_count = count_common_zeros(map_.components, base_rng)
    records = []
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        source = _pick_source(map_, jac, rng)
        try:
            count = fiber_count(map_, source, rng=rng, base_count=base_count)
        except DegenerateFiberError:
            return FiberCountReport(DEGENERATE, None, tuple(records), seed)
        records.append(FiberTrial(source, count))
    counts = [t.count for t in records]
    if all(c == 1 for c in counts):
        return FiberCountReport(BIRATIONAL, 1, tuple(records), seed)
    tally = Counter(counts)
    best = max(tally.items(), key=lambda kv: (kv[1], -kv[0]))
    return FiberCountReport(NOT_BIRATIONAL, best[0], tuple(records), seed)
