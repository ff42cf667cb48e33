"""Exact sparse Laurent polynomials over the rationals.

A polynomial is a dict mapping exponent tuples to nonzero Fraction
coefficients, wrapped in the immutable :class:`Poly` value type:

    x^2*y - 1/3  (3 variables)  ->  {(2, 1, 0): Fraction(1), (0, 0, 0): Fraction(-1, 3)}

Exponents may be negative (Laurent terms).  The zero polynomial has an empty
term dict.  Canonical term order for printing and leading-term queries is
graded lexicographic, highest first, with variable 0 strongest.

Variable naming follows the arity: 3 variables are (x, y, z), 2 are (s, t).
The text grammar round-trips exactly: terms joined by +/-, a term is an
optional rational (p or p/q) and variable powers (x, y^3, z^-1) joined by
optional '*'; parenthesized subexpressions with integer powers are accepted
on input, e.g. ``(x+z)^2*(y+z)^3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from toricpatch import _kernels

Exponent = tuple  # tuple[int, ...], one entry per variable

_VAR_NAMES = {
    1: ("t",),
    2: ("s", "t"),
    3: ("x", "y", "z"),
    4: ("x", "y", "z", "t"),
    5: ("x", "y", "z", "s", "t"),
}


def var_names(nvars: int) -> tuple:
    try:
        return _VAR_NAMES[nvars]
    except KeyError:
        return tuple(f"v{i}" for i in range(nvars))


def grlex_key(exp: Exponent):
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, Fraction], nvars: int, _trusted=False):
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for exp, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has arity {len(exp)}, expected {nvars}")
                clean[exp] = clean.get(exp, Fraction(0)) + c
            self._terms = {e: c for e, c in clean.items() if c}
        self.nvars = nvars
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls({}, nvars, _trusted=True)

    @classmethod
    def constant(cls, value, nvars: int) -> "Poly":
        c = Fraction(value)
        if not c:
            return cls.zero(nvars)
        return cls({(0,) * nvars: c}, nvars, _trusted=True)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Poly":
        exp = [0] * nvars
        exp[index] = 1
        return cls({tuple(exp): Fraction(1)}, nvars, _trusted=True)

    @classmethod
    def term(cls, coeff, exp: Sequence[int]) -> "Poly":
        c = Fraction(coeff)
        exp = tuple(int(e) for e in exp)
        if not c:
            return cls.zero(len(exp))
        return cls({exp: c}, len(exp), _trusted=True)

    # -- basic queries -----------------------------------------------------

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def min_total_degree(self) -> int:
        if not self._terms:
            return -1
        return min(sum(e) for e in self._terms)

    def is_form(self) -> bool:
        """True when nonzero and all terms share one total degree."""
        if not self._terms:
            return False
        degrees = {sum(e) for e in self._terms}
        return len(degrees) == 1

    def is_laurent(self) -> bool:
        return any(e < 0 for exp in self._terms for e in exp)

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        if not self._terms:
            return Fraction(0)
        return next(iter(self._terms.values()))

    def degree_in(self, var: int) -> int:
        """Max exponent of one variable; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(exp[var] for exp in self._terms)

    def min_degree_in(self, var: int) -> int:
        if not self._terms:
            return 0
        return min(exp[var] for exp in self._terms)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    def leading_coeff(self) -> Fraction:
        return self.leading()[1]

    def monic(self) -> "Poly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self._terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return self / lc

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(_kernels.active.terms_add(self._terms, other._terms), self.nvars, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(_kernels.active.terms_sub(self._terms, other._terms), self.nvars, _trusted=True)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Poly(_kernels.active.terms_neg(self._terms), self.nvars, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(_kernels.active.terms_scale(self._terms, Fraction(other)), self.nvars, _trusted=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(_kernels.active.terms_mul(self._terms, other._terms), self.nvars, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero scalar")
            return Poly(
                _kernels.active.terms_scale(self._terms, Fraction(1) / c), self.nvars, _trusted=True
            )
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def mul_term(self, coeff, exp: Sequence[int]) -> "Poly":
        """Multiply by coeff * x^exp in one pass."""
        c = Fraction(coeff)
        if not c:
            return Poly.zero(self.nvars)
        exp = tuple(int(e) for e in exp)
        terms = {tuple(a + b for a, b in zip(e, exp)): cc * c for e, cc in self._terms.items()}
        return Poly(terms, self.nvars, _trusted=True)

    def submul(self, other: "Poly", coeff, exp: Sequence[int]) -> "Poly":
        """self - coeff * x^exp * other (fused, used by division loops)."""
        return Poly(
            _kernels.active.terms_submul(self._terms, other._terms, tuple(exp), Fraction(coeff)),
            self.nvars,
            _trusted=True,
        )

    # -- calculus and substitution ----------------------------------------

    def partial(self, var: int) -> "Poly":
        """Formal partial derivative; Laurent exponent rule applies."""
        terms = {}
        for exp, c in self._terms.items():
            e = exp[var]
            if e == 0:
                continue
            new = list(exp)
            new[var] = e - 1
            key = tuple(new)
            acc = terms.get(key, Fraction(0)) + c * e
            if acc:
                terms[key] = acc
            elif key in terms:
                del terms[key]
        return Poly(terms, self.nvars, _trusted=True)

    def evaluate(self, values: Sequence):
        """Evaluate at a point; values may be Fractions, ints, or floats.

        Negative exponents require the corresponding value to be nonzero.
        """
        total = None
        for exp, c in self._terms.items():
            acc = None
            for v, e in zip(values, exp):
                if e == 0:
                    continue
                p = v**e if e > 0 else 1 / (v ** (-e))
                acc = p if acc is None else acc * p
            term = c if acc is None else c * acc
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def compose(self, subs: Sequence["Poly"]) -> "Poly":
        """Substitute a polynomial for each variable (ordinary exponents only)."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        if self.is_laurent():
            raise ValueError("cannot compose with negative exponents")
        nvars_out = subs[0].nvars
        for s in subs:
            if s.nvars != nvars_out:
                raise ValueError("substitutions must share arity")
        powers = [{0: Poly.constant(1, nvars_out)} for _ in range(self.nvars)]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * subs[i]
            return cache[e]

        result = Poly.zero(nvars_out)
        for exp, c in self.sorted_terms():
            term = Poly.constant(c, nvars_out)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def substitute_monomial(self, matrix: "MonomialMatrix") -> "Poly":
        """Monomial substitution x^a -> t^(M a); coefficients unchanged."""
        if self.nvars != 3:
            raise ValueError("monomial substitution is defined for 3 variables")
        terms = {}
        for exp, c in self._terms.items():
            key = matrix.apply(exp)
            acc = terms.get(key, Fraction(0)) + c
            if acc:
                terms[key] = acc
            elif key in terms:
                del terms[key]
        return Poly(terms, 3, _trusted=True)

    def laurent_normalize(self):
        """Write self = m * f' with f' ordinary and coprime to every variable.

        Returns (f', m) where m is the exponent tuple of the monomial.
        """
        if not self._terms:
            raise ValueError("cannot normalize the zero polynomial")
        shift = tuple(min(exp[i] for exp in self._terms) for i in range(self.nvars))
        if all(e == 0 for e in shift):
            return self, shift
        terms = {tuple(a - b for a, b in zip(exp, shift)): c for exp, c in self._terms.items()}
        return Poly(terms, self.nvars, _trusted=True), shift

    def relabel(self, nvars_out: int, positions: Sequence[int]) -> "Poly":
        """Move variable i to slot positions[i] in a fresh arity."""
        if len(positions) != self.nvars:
            raise ValueError("need one position per variable")
        terms = {}
        for exp, c in self._terms.items():
            new = [0] * nvars_out
            for i, e in enumerate(exp):
                if e:
                    new[positions[i]] = e
            terms[tuple(new)] = c
        return Poly(terms, nvars_out, _trusted=True)

    def set_var(self, var: int, value) -> "Poly":
        """Substitute a rational constant for one variable (exponent kept at 0)."""
        value = Fraction(value)
        terms = {}
        for exp, c in self._terms.items():
            e = exp[var]
            if e < 0:
                raise ValueError("cannot substitute into a negative exponent")
            if e:
                c = c * value**e
                if not c:
                    continue
                new = list(exp)
                new[var] = 0
                exp = tuple(new)
            acc = terms.get(exp, Fraction(0)) + c
            if acc:
                terms[exp] = acc
            elif exp in terms:
                del terms[exp]
        return Poly(terms, self.nvars, _trusted=True)

    # -- comparisons and formatting ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return self.format()

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = var_names(self.nvars)
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str, names: str | Sequence[str] = "xyz") -> "Poly":
        return _parse(text, tuple(names))


@dataclass(frozen=True)
class MonomialMatrix:
    """Three exponent columns defining the monomial map (x,y,z) -> (t^a, t^b, t^g)."""

    alpha: tuple
    beta: tuple
    gamma: tuple

    def __post_init__(self):
        for col in (self.alpha, self.beta, self.gamma):
            if len(col) != 3 or not all(isinstance(e, int) for e in col):
                raise ValueError("columns must be integer triples")

    @classmethod
    def identity(cls) -> "MonomialMatrix":
        return cls((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def columns(self):
        return (self.alpha, self.beta, self.gamma)

    def column_degrees(self):
        return tuple(sum(col) for col in self.columns())

    def apply(self, exp: Sequence[int]) -> tuple:
        a, b, c = exp
        return tuple(
            self.alpha[i] * a + self.beta[i] * b + self.gamma[i] * c for i in range(3)
        )


# -- text grammar ----------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class _Parser:
    def __init__(self, text: str, names: tuple):
        self.text = text
        self.names = names
        self.nvars = len(names)
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Poly:
        result = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.text[self.pos]!r}")
        return result

    def expr(self) -> Poly:
        ch = self.peek()
        sign = 1
        if ch in "+-":
            self.pos += 1
            sign = -1 if ch == "-" else 1
        result = self.product()
        if sign < 0:
            result = -result
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                result = result + self.product()
            elif ch == "-":
                self.pos += 1
                result = result - self.product()
            else:
                return result

    def product(self) -> Poly:
        result = self.power()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                result = result * self.power()
            elif ch == "(" or ch.isdigit() or ch in self.names:
                # juxtaposition, e.g. 2x or x y
                result = result * self.power()
            else:
                return result

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            n = self.integer()
            if n < 0:
                if len(base) != 1:
                    self.error("negative powers only apply to single terms")
                exp, c = next(base.items())
                return Poly({tuple(e * n for e in exp): c**n}, base.nvars, _trusted=True)
            return base**n
        return base

    def atom(self) -> Poly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            return Poly.constant(self.rational(), self.nvars)
        if ch in self.names:
            self.pos += 1
            return Poly.variable(self.names.index(ch), self.nvars)
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        save = self.pos
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            self.pos += 1
            self.skip_ws()
            digits = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos > digits:
                return Fraction(num, int(self.text[digits : self.pos]))
            self.pos = save
        return Fraction(num)


def _parse(text: str, names: tuple) -> Poly:
    return _Parser(text, names).parse()


# -- small conveniences ----------------------------------------------------


def variables(nvars: int) -> tuple:
    return tuple(Poly.variable(i, nvars) for i in range(nvars))


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    total = Poly.zero(nvars)
    for p in polys:
        total = total + p
    return total
