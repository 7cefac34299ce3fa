"""Sparse homogeneous polynomials in x, y, z over an exact coefficient field.

Monomials are exponent triples (i, j, k) meaning x^i y^j z^k, ordered
graded-lexicographically with x > y > z; that order fixes every basis
enumeration and therefore every matrix layout downstream. Polynomials are
immutable values: arithmetic always returns a new object.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import (
    DegreeMismatch,
    FieldMismatch,
    NotDivisible,
    NotHomogeneous,
    ParseError,
    ZeroDerivativeDomain,
)
from .field import ONE, ZERO, FieldTag, Scalar, format_scalar, smallest_tag

Monomial = tuple  # (i, j, k) exponents
VARIABLES = ("x", "y", "z")


@lru_cache(maxsize=None)
def graded_basis(r: int) -> tuple:
    """All monomials of total degree r in descending graded-lex order.

    Length is (r+1)(r+2)/2; the first entry is x^r, the last z^r.
    """
    if r < 0:
        raise ValueError("degree must be non-negative")
    return tuple(
        (i, j, r - i - j) for i in range(r, -1, -1) for j in range(r - i, -1, -1)
    )


@lru_cache(maxsize=None)
def _basis_index(r: int) -> dict:
    return {m: k for k, m in enumerate(graded_basis(r))}


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])


def _mono_str(m: Monomial) -> str:
    parts = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class Poly:
    """A homogeneous polynomial: fixed degree, term map monomial -> scalar.

    The zero polynomial of degree d keeps its degree but has no terms.
    """

    __slots__ = ("degree", "terms", "tag")

    def __init__(self, degree: int, terms: dict, tag: FieldTag):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for mono, coef in terms.items():
            if not coef:
                continue
            if sum(mono) != degree:
                raise NotHomogeneous(
                    f"monomial {_mono_str(mono) or '1'} has degree {sum(mono)}, expected {degree}"
                )
            if tag is FieldTag.Q and coef.b:
                raise FieldMismatch("non-rational coefficient in a Q-tagged polynomial")
            clean[mono] = coef
        self.degree = degree
        self.terms = clean
        self.tag = tag

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, degree: int, tag: FieldTag) -> "Poly":
        return cls(degree, {}, tag)

    @classmethod
    def constant(cls, value, tag: FieldTag) -> "Poly":
        c = value if isinstance(value, Scalar) else Scalar(value)
        return cls(0, {(0, 0, 0): c}, tag)

    @classmethod
    def variable(cls, index: int, tag: FieldTag) -> "Poly":
        mono = tuple(1 if k == index else 0 for k in range(3))
        return cls(1, {mono: ONE}, tag)

    @classmethod
    def from_coefficients(cls, degree: int, coeffs: Sequence[Scalar], tag: FieldTag) -> "Poly":
        basis = graded_basis(degree)
        if len(coeffs) != len(basis):
            raise ValueError("coefficient vector has the wrong length")
        return cls(degree, dict(zip(basis, coeffs)), tag)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check_tag(self, other: "Poly"):
        if self.tag is not other.tag:
            raise FieldMismatch(f"cannot mix {self.tag.value} and {other.tag.value} polynomials")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_tag(other)
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add degree {self.degree} and degree {other.degree}"
            )
        terms = dict(self.terms)
        for mono, coef in other.terms.items():
            acc = terms.get(mono)
            coef = coef if acc is None else acc + coef
            if coef:
                terms[mono] = coef
            elif acc is not None:
                del terms[mono]
        return Poly(self.degree, terms, self.tag)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.degree, {m: -c for m, c in self.terms.items()}, self.tag)

    def scale(self, scalar) -> "Poly":
        c = scalar if isinstance(scalar, Scalar) else Scalar(scalar)
        if not c:
            return Poly.zero(self.degree, self.tag)
        return Poly(self.degree, {m: c * v for m, v in self.terms.items()}, self.tag)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_tag(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                c = c1 * c2
                prev = acc.get(mono)
                c = c if prev is None else prev + c
                if c:
                    acc[mono] = c
                elif prev is not None:
                    del acc[mono]
        return Poly(self.degree + other.degree, acc, self.tag)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def partial(self, var: int) -> "Poly":
        """Partial derivative with respect to variable index 0, 1 or 2."""
        if self.degree == 0:
            raise ZeroDerivativeDomain("cannot differentiate a degree-0 polynomial")
        terms: dict = {}
        for mono, coef in self.terms.items():
            e = mono[var]
            if e == 0:
                continue
            lowered = list(mono)
            lowered[var] = e - 1
            terms[tuple(lowered)] = coef * e
        return Poly(self.degree - 1, terms, self.tag)

    # -- views ----------------------------------------------------------

    def coefficient_vector(self) -> list:
        """Coefficients against graded_basis(self.degree), zeros included."""
        return [self.terms.get(m, ZERO) for m in graded_basis(self.degree)]

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(mono, ZERO)

    def retag(self, tag: FieldTag) -> "Poly":
        return Poly(self.degree, self.terms, tag)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.tag is other.tag
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, self.tag, frozenset(self.terms.items())))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<Poly deg={self.degree} {self.tag.value}: {format_poly(self)}>"


class LinearForm:
    """A projective line a*x + b*y + c*z = 0, normalized so the first
    nonzero coefficient is 1; equal normalized forms are the same line."""

    __slots__ = ("coeffs",)

    def __init__(self, cx, cy, cz):
        coeffs = tuple(c if isinstance(c, Scalar) else Scalar(c) for c in (cx, cy, cz))
        lead = next((c for c in coeffs if c), None)
        if lead is None:
            raise ValueError("a linear form needs at least one nonzero coefficient")
        if lead != ONE:
            inv = lead.inverse()
            coeffs = tuple(c * inv for c in coeffs)
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, p: Poly) -> "LinearForm":
        if p.degree != 1 or p.is_zero():
            raise ValueError("expected a nonzero degree-1 polynomial")
        return cls(
            p.coefficient((1, 0, 0)), p.coefficient((0, 1, 0)), p.coefficient((0, 0, 1))
        )

    @classmethod
    def parse(cls, text: str) -> "LinearForm":
        p = parse_poly(text)
        if p.degree != 1 or p.is_zero():
            raise ParseError(f"expected a linear form, got degree {p.degree}")
        return cls.from_poly(p)

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        a, b, c = self.coeffs
        return a * point[0] + b * point[1] + c * point[2]

    def to_poly(self, tag: FieldTag = None) -> Poly:
        if tag is None:
            tag = smallest_tag(self.coeffs)
        return Poly(1, {(1, 0, 0): self.coeffs[0], (0, 1, 0): self.coeffs[1], (0, 0, 1): self.coeffs[2]}, tag)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return format_poly(self.to_poly())

    def __repr__(self):
        return f"LinearForm({self})"


def product_of_forms(forms: Sequence[LinearForm], tag: FieldTag = None) -> Poly:
    """Expand the product of the given (normalized) linear forms."""
    if not forms:
        raise ValueError("need at least one linear form")
    if tag is None:
        tag = FieldTag.Q if all(f.is_rational() for f in forms) else FieldTag.QW
    result = forms[0].to_poly(tag)
    for form in forms[1:]:
        result = result * form.to_poly(tag)
    return result


def divide_exact(f: Poly, form: LinearForm) -> Poly:
    """Quotient f / form when the division is exact, else NotDivisible."""
    if f.degree == 0:
        raise NotDivisible("cannot divide a degree-0 polynomial by a linear form")
    pivot = next(i for i, c in enumerate(form.coeffs) if c)  # coefficient there is 1
    tail = [(i, c) for i, c in enumerate(form.coeffs) if c and i != pivot]
    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        lead = max(rem)
        if lead[pivot] == 0:
            raise NotDivisible(f"{form} does not divide the polynomial")
        qc = rem.pop(lead)
        qm = list(lead)
        qm[pivot] -= 1
        quot[tuple(qm)] = qc
        for i, c in tail:
            mono = list(qm)
            mono[i] += 1
            mono = tuple(mono)
            prev = rem.get(mono)
            val = -qc * c if prev is None else prev - qc * c
            if val:
                rem[mono] = val
            elif prev is not None:
                del rem[mono]
    return Poly(f.degree - 1, quot, f.tag)


# ---------------------------------------------------------------------------
# Expression parser
#
# expr   := ['-'] term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' nat)?
# base   := '(' expr ')' | 'x' | 'y' | 'z' | 'w' | rational
# ---------------------------------------------------------------------------

_NUM, _VAR, _W, _OP = "num", "var", "w", "op"


def _tokenize(text: str):
    s = text.replace("−", "-")
    tokens = []
    i = 0
    n = len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((_OP, ch, i))
            i += 1
        elif ch in "xyz":
            tokens.append((_VAR, "xyz".index(ch), i))
            i += 1
        elif ch == "w":
            tokens.append((_W, None, i))
            i += 1
        elif ch.isdigit():
            value, j = _scan_number(s, i)
            tokens.append((_NUM, value, i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", position=i)
    return tokens


def _scan_number(s: str, i: int):
    j = i
    n = len(s)
    while j < n and s[j].isdigit():
        j += 1
    num = int(s[i:j])
    if j < n and s[j] == "/":
        k = j + 1
        while k < n and s[k].isdigit():
            k += 1
        if k == j + 1:
            raise ParseError("expected digits after '/'", position=j + 1)
        den = int(s[j + 1:k])
        if den == 0:
            raise ParseError("zero denominator", position=j + 1)
        return Fraction(num, den), k
    return Fraction(num), j


class _Parser:
    """Recursive-descent parser producing a (possibly inhomogeneous) term map."""

    def __init__(self, tokens, length):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self):
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", position=self.length)
        self.pos += 1
        return tok

    def _expect_op(self, symbol):
        tok = self._take()
        if tok[0] is not _OP or tok[1] != symbol:
            raise ParseError(f"expected {symbol!r}", position=tok[2])

    def parse(self):
        value = self.expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError("trailing input", position=tok[2])
        return value

    def expr(self):
        tok = self._peek()
        negate = False
        if tok is not None and tok[0] is _OP and tok[1] == "-":
            self.pos += 1
            negate = True
        value = self.term()
        if negate:
            value = _map_neg(value)
        while True:
            tok = self._peek()
            if tok is None or tok[0] is not _OP or tok[1] not in "+-":
                return value
            self.pos += 1
            rhs = self.term()
            if tok[1] == "-":
                rhs = _map_neg(rhs)
            value = _map_add(value, rhs)

    def term(self):
        value = self.factor()
        while True:
            tok = self._peek()
            if tok is None or tok[0] is not _OP or tok[1] != "*":
                return value
            self.pos += 1
            value = _map_mul(value, self.factor())

    def factor(self):
        value = self.base()
        tok = self._peek()
        if tok is not None and tok[0] is _OP and tok[1] == "^":
            self.pos += 1
            exp_tok = self._take()
            if exp_tok[0] is not _NUM or exp_tok[1].denominator != 1:
                raise ParseError("exponent must be a non-negative integer", position=exp_tok[2])
            value = _map_pow(value, int(exp_tok[1]))
        return value

    def base(self):
        tok = self._take()
        kind, payload, pos = tok
        if kind is _OP and payload == "(":
            value = self.expr()
            self._expect_op(")")
            return value
        if kind is _VAR:
            mono = tuple(1 if k == payload else 0 for k in range(3))
            return {mono: ONE}
        if kind is _W:
            return {(0, 0, 0): Scalar(0, 1)}
        if kind is _NUM:
            return {(0, 0, 0): Scalar(payload)}
        raise ParseError(f"unexpected token {payload!r}", position=pos)


def _map_neg(m):
    return {mono: -c for mono, c in m.items()}


def _map_add(m1, m2):
    out = dict(m1)
    for mono, c in m2.items():
        prev = out.get(mono)
        c = c if prev is None else prev + c
        if c:
            out[mono] = c
        elif prev is not None:
            del out[mono]
    return out


def _map_mul(m1, m2):
    out: dict = {}
    for mono1, c1 in m1.items():
        for mono2, c2 in m2.items():
            mono = _mono_mul(mono1, mono2)
            c = c1 * c2
            prev = out.get(mono)
            c = c if prev is None else prev + c
            if c:
                out[mono] = c
            elif prev is not None:
                del out[mono]
    return out


def _map_pow(m, e):
    out = {(0, 0, 0): ONE}
    for _ in range(e):
        out = _map_mul(out, m)
    return out


def parse_poly(text: str, tag: FieldTag = None) -> Poly:
    """Parse and expand an expression into a homogeneous polynomial.

    With tag=None the smallest field is inferred from the result; an
    explicit Q tag rejects any expression involving w with FieldMismatch.
    A non-homogeneous expansion raises NotHomogeneous.
    """
    terms = _Parser(_tokenize(text), len(text)).parse()
    terms = {m: c for m, c in terms.items() if c}
    if tag is None:
        tag = smallest_tag(terms.values())
    if not terms:
        return Poly.zero(0, tag)
    degrees = {sum(m) for m in terms}
    if len(degrees) > 1:
        raise NotHomogeneous(
            f"expression mixes degrees {sorted(degrees)}"
        )
    return Poly(degrees.pop(), terms, tag)


def format_poly(f: Poly) -> str:
    """Canonical text: terms in descending graded-lex order, explicit * and ^."""
    if not f.terms:
        return "0"
    pieces = []
    for mono in sorted(f.terms, reverse=True):
        coef = f.terms[mono]
        mono_s = _mono_str(mono)
        if not coef.b:
            negative = coef.a < 0
            mag = abs(coef.a)
            coef_s = "" if (mag == 1 and mono_s) else str(mag)
        elif not coef.a:
            negative = coef.b < 0
            mag = abs(coef.b)
            coef_s = "w" if mag == 1 else f"{mag}*w"
        else:
            negative = False
            coef_s = f"({format_scalar(coef)})"
        body = "*".join(p for p in (coef_s, mono_s) if p)
        pieces.append(("-" if negative else "+", body))
    sign0, body0 = pieces[0]
    out = [body0 if sign0 == "+" else "-" + body0]
    for sign, body in pieces[1:]:
        out.append(sign + body)
    return "".join(out)
