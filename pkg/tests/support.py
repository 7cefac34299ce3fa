"""Shared randomized-input generators for the test suite (seeded callers)."""

from fractions import Fraction

from nearfree import FieldTag, LinearForm, LineArrangement, Poly, Scalar
from nearfree.poly import graded_basis


def random_fraction(rng, span=9, den=9):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_rational_scalar(rng, span=9):
    return Scalar(random_fraction(rng, span))


def random_scalar(rng, span=9):
    return Scalar(random_fraction(rng, span), random_fraction(rng, span))


def random_nonzero_scalar(rng, span=9):
    while True:
        s = random_scalar(rng, span)
        if s:
            return s


def random_poly(rng, degree, tag=FieldTag.Q, density=0.6, span=5):
    terms = {}
    for mono in graded_basis(degree):
        if rng.random() < density:
            c = (
                random_rational_scalar(rng, span)
                if tag is FieldTag.Q
                else random_scalar(rng, span)
            )
            if c:
                terms[mono] = c
    return Poly(degree, terms, tag)


def random_form(rng, span=3):
    while True:
        coeffs = [rng.randint(-span, span) for _ in range(3)]
        if any(coeffs):
            return LinearForm(*coeffs)


def random_arrangement(rng, d, span=3):
    forms = []
    seen = set()
    while len(forms) < d:
        form = random_form(rng, span)
        if form not in seen:
            seen.add(form)
            forms.append(form)
    return LineArrangement(forms)


def random_invertible_matrix(rng, span=2):
    while True:
        m = [[rng.randint(-span, span) for _ in range(3)] for _ in range(3)]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det != 0:
            return m
