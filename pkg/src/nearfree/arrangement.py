"""Line arrangements in the projective plane over an exact field.

An arrangement is an ordered list of pairwise distinct normalized linear
forms. All lattice computations (intersection points, multiplicities,
Milnor number) cluster points by exact projective equality; the coefficient
fields are exact, so no tolerances are involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

from .errors import (
    DirectionThroughPoint,
    DuplicateLine,
    FieldMismatch,
    IndexOutOfRange,
    LineNotIncident,
    NonGenericDeformation,
    NotATriplePoint,
    ParseError,
    UnknownName,
)
from .field import OMEGA, ONE, ZERO, FieldTag, Scalar, parse_scalar, smallest_tag
from .poly import LinearForm, Poly, product_of_forms

Point = tuple  # 3 scalars, normalized so the first nonzero is 1


def normalize_point(p: Sequence) -> Point:
    coords = tuple(c if isinstance(c, Scalar) else Scalar(c) for c in p)
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("a projective point needs a nonzero coordinate")
    if lead != ONE:
        inv = lead.inverse()
        coords = tuple(c * inv for c in coords)
    return coords


def intersect(l1: LinearForm, l2: LinearForm) -> Point:
    """Intersection point of two distinct lines (cross product of coefficients)."""
    a1, b1, c1 = l1.coeffs
    a2, b2, c2 = l2.coeffs
    return normalize_point((b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2))


class LineArrangement:
    """d >= 1 pairwise distinct projective lines with a field tag."""

    __slots__ = ("lines", "tag")

    def __init__(self, lines: Sequence[LinearForm], tag: FieldTag = None):
        lines = tuple(lines)
        if not lines:
            raise ValueError("an arrangement needs at least one line")
        seen = set()
        for form in lines:
            if form in seen:
                raise DuplicateLine(f"duplicate line {form}")
            seen.add(form)
        rational = all(form.is_rational() for form in lines)
        if tag is None:
            tag = FieldTag.Q if rational else FieldTag.QW
        elif tag is FieldTag.Q and not rational:
            raise FieldMismatch("arrangement tagged Q contains non-rational lines")
        self.lines = lines
        self.tag = tag

    @property
    def d(self) -> int:
        return len(self.lines)

    def __eq__(self, other):
        if not isinstance(other, LineArrangement):
            return NotImplemented
        return self.lines == other.lines and self.tag is other.tag

    def __hash__(self):
        return hash((self.lines, self.tag))

    def __repr__(self):
        return f"<LineArrangement d={self.d} {self.tag.value}>"


@dataclass(frozen=True)
class SingularPoint:
    point: Point
    multiplicity: int
    incident_lines: tuple  # sorted line indices

    def __str__(self):
        coords = ":".join(str(c) for c in self.point)
        return f"({coords}) mult={self.multiplicity}"


@dataclass(frozen=True)
class WeakCombinatorics:
    """Line count d plus the multiplicity census {k: t_k, k >= 2}."""

    d: int
    counts: tuple  # sorted ((k, t_k), ...) with t_k > 0

    def __post_init__(self):
        pairs = sum(t * comb(k, 2) for k, t in self.counts)
        assert pairs == comb(self.d, 2), "pair count identity violated"

    @property
    def t2(self) -> int:
        return dict(self.counts).get(2, 0)

    @property
    def t3(self) -> int:
        return dict(self.counts).get(3, 0)

    @property
    def higher(self) -> dict:
        return {k: t for k, t in self.counts if k >= 4}

    def __str__(self):
        extra = "".join(f", t{k}={t}" for k, t in self.counts if k >= 4)
        return f"({self.d}; {self.t2}, {self.t3}{extra})"


def singular_points(arrangement: LineArrangement) -> list:
    """All intersection points, clustered exactly, in lex coordinate order."""
    clusters: dict = {}
    lines = arrangement.lines
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = intersect(lines[i], lines[j])
            bucket = clusters.setdefault(p, set())
            bucket.add(i)
            bucket.add(j)
    out = [
        SingularPoint(point=p, multiplicity=len(idx), incident_lines=tuple(sorted(idx)))
        for p, idx in clusters.items()
    ]
    out.sort(key=lambda s: tuple(c.sort_key() for c in s.point))
    return out


def weak_combinatorics(arrangement: LineArrangement) -> WeakCombinatorics:
    census: dict = {}
    for sp in singular_points(arrangement):
        census[sp.multiplicity] = census.get(sp.multiplicity, 0) + 1
    return WeakCombinatorics(d=arrangement.d, counts=tuple(sorted(census.items())))


def milnor_number(arrangement: LineArrangement) -> int:
    """Total Milnor number: sum of (multiplicity - 1)^2 over singular points.

    For line arrangements this equals the total Tjurina number, every
    singular point being quasi-homogeneous.
    """
    return sum((sp.multiplicity - 1) ** 2 for sp in singular_points(arrangement))


def defining_polynomial(arrangement: LineArrangement) -> Poly:
    return product_of_forms(arrangement.lines, arrangement.tag)


def delete_line(arrangement: LineArrangement, index: int) -> LineArrangement:
    if not 0 <= index < arrangement.d:
        raise IndexOutOfRange(f"line index {index} out of range for d={arrangement.d}")
    if arrangement.d < 2:
        raise IndexOutOfRange("cannot delete the only line")
    remaining = arrangement.lines[:index] + arrangement.lines[index + 1:]
    return LineArrangement(remaining, arrangement.tag)


def _find_singular_point(arrangement: LineArrangement, point: Sequence) -> Optional[SingularPoint]:
    p = normalize_point(point)
    for sp in singular_points(arrangement):
        if sp.point == p:
            return sp
    return None


def deform_triple_point(
    arrangement: LineArrangement,
    point: Sequence,
    line_index: int,
    direction: LinearForm,
    eps: Scalar,
) -> LineArrangement:
    """Split one triple point into three nodes by replacing one of its lines.

    The line at line_index is replaced by line + eps*direction. The result
    is accepted only if its multiplicity census is exactly (t2 + 3, t3 - 1)
    with everything else unchanged; any other outcome (including a duplicate
    line) raises NonGenericDeformation, and the caller may retry with a
    different eps or direction.
    """
    eps = eps if isinstance(eps, Scalar) else Scalar(eps)
    if not eps:
        raise ValueError("eps must be nonzero")
    if not 0 <= line_index < arrangement.d:
        raise IndexOutOfRange(f"line index {line_index} out of range for d={arrangement.d}")
    if arrangement.tag is FieldTag.Q and not (direction.is_rational() and eps.is_rational()):
        raise FieldMismatch("deformation data must stay in the arrangement's field")
    sp = _find_singular_point(arrangement, point)
    if sp is None or sp.multiplicity != 3:
        raise NotATriplePoint(f"no triple point of the arrangement at the given coordinates")
    if line_index not in sp.incident_lines:
        raise LineNotIncident(f"line {line_index} does not pass through the triple point")
    if not direction.evaluate(sp.point):
        raise DirectionThroughPoint("direction form vanishes at the triple point")
    old = arrangement.lines[line_index]
    moved_poly = old.to_poly(arrangement.tag) + direction.to_poly(arrangement.tag).scale(eps)
    if moved_poly.is_zero():
        raise NonGenericDeformation("deformed line degenerates to zero")
    moved = LinearForm.from_poly(moved_poly)
    new_lines = list(arrangement.lines)
    new_lines[line_index] = moved
    try:
        deformed = LineArrangement(new_lines, arrangement.tag)
    except DuplicateLine as exc:
        raise NonGenericDeformation(f"deformed line collides with another line: {exc}")
    before = dict(weak_combinatorics(arrangement).counts)
    after = dict(weak_combinatorics(deformed).counts)
    expected = dict(before)
    expected[2] = expected.get(2, 0) + 3
    expected[3] = expected.get(3, 0) - 1
    expected = {k: v for k, v in expected.items() if v}
    if after != expected:
        raise NonGenericDeformation(
            f"combinatorics changed from {sorted(before.items())} to {sorted(after.items())},"
            f" expected {sorted(expected.items())}"
        )
    return deformed


def tjurina_drop_check(before: LineArrangement, after: LineArrangement) -> bool:
    """True iff the deformation dropped the total Tjurina number by exactly 1."""
    return milnor_number(before) == milnor_number(after) + 1


def transform(arrangement: LineArrangement, matrix: Sequence[Sequence]) -> LineArrangement:
    """Apply the coordinate change x -> M x; lines map by row-vector action."""
    m = [[v if isinstance(v, Scalar) else Scalar(v) for v in row] for row in matrix]
    new_lines = []
    for form in arrangement.lines:
        a, b, c = form.coeffs
        new_lines.append(
            LinearForm(
                a * m[0][0] + b * m[1][0] + c * m[2][0],
                a * m[0][1] + b * m[1][1] + c * m[2][1],
                a * m[0][2] + b * m[1][2] + c * m[2][2],
            )
        )
    tag = arrangement.tag
    if tag is FieldTag.Q and any(not f.is_rational() for f in new_lines):
        tag = FieldTag.QW
    return LineArrangement(new_lines, tag)


# ---------------------------------------------------------------------------
# Named catalog
# ---------------------------------------------------------------------------

_X = LinearForm(1, 0, 0)
_Y = LinearForm(0, 1, 0)
_Z = LinearForm(0, 0, 1)


def _form(cx, cy, cz) -> LinearForm:
    return LinearForm(Scalar(cx), Scalar(cy), Scalar(cz))


def _build_a4_free():
    return LineArrangement([_X, _Y, _form(1, -1, 0), _Z])


def _build_a4_generic():
    return LineArrangement([_X, _Y, _Z, _form(1, 1, 1)])


def _build_a5_free():
    return LineArrangement([_X, _Y, _form(1, -1, 0), _Z, _form(1, 0, -1)])


def _build_a5_nearlyfree():
    # split the triple at (0:0:1); direction z is generic here with eps = 1
    return deform_triple_point(_build_a5_free(), (0, 0, 1), 2, _Z, Scalar(1))


def _build_a1_6():
    return LineArrangement(
        [_X, _Y, _Z, _form(1, -1, 0), _form(0, 1, -1), _form(1, 0, -1)]
    )


def _build_a6_deformed():
    return LineArrangement(
        [_X, _Y, _Z, _form(1, Fraction(-1, 2), 0), _form(0, 1, -1), _form(1, 0, -1)]
    )


def _build_b7_free():
    return LineArrangement(
        [
            _Z,
            _form(1, 0, -1),
            _form(1, 0, 1),
            _form(0, 1, -1),
            _form(0, 1, 1),
            _form(1, -1, 0),
            _form(1, 1, 0),
        ]
    )


def _build_b7_deformed():
    # move x - y off the triple at (1:1:-1) along x - z; the triple at
    # (1:1:1) survives because the direction vanishes there
    return deform_triple_point(
        _build_b7_free(), (1, 1, -1), 5, _form(1, 0, -1), Scalar(1)
    )


def _omega_form(cx, cy, cz) -> LinearForm:
    return LinearForm(cx, cy, cz)


def _build_dual_hesse():
    w = OMEGA
    w2 = w * w
    forms = [
        _omega_form(ONE, -ONE, ZERO),
        _omega_form(ONE, -w, ZERO),
        _omega_form(ONE, -w2, ZERO),
        _omega_form(ZERO, ONE, -ONE),
        _omega_form(ZERO, ONE, -w),
        _omega_form(ZERO, ONE, -w2),
        _omega_form(-ONE, ZERO, ONE),
        _omega_form(-w, ZERO, ONE),
        _omega_form(-w2, ZERO, ONE),
    ]
    return LineArrangement(forms, FieldTag.QW)


def _build_maclane():
    # deletion of the x - y line from the dual Hesse arrangement
    return delete_line(_build_dual_hesse(), 0)


_CATALOG = {
    "A4_free": (_build_a4_free, (4, ((2, 3), (3, 1)))),
    "A4_generic": (_build_a4_generic, (4, ((2, 6),))),
    "A5_free": (_build_a5_free, (5, ((2, 4), (3, 2)))),
    "A5_nearlyfree": (_build_a5_nearlyfree, (5, ((2, 7), (3, 1)))),
    "A1_6": (_build_a1_6, (6, ((2, 3), (3, 4)))),
    "A6_deformed": (_build_a6_deformed, (6, ((2, 6), (3, 3)))),
    "B7_free": (_build_b7_free, (7, ((2, 3), (3, 6)))),
    "B7_deformed": (_build_b7_deformed, (7, ((2, 6), (3, 5)))),
    "MacLane8": (_build_maclane, (8, ((2, 4), (3, 8)))),
    "DualHesse9": (_build_dual_hesse, (9, ((2, 0), (3, 12)))),
}


def catalog_names() -> list:
    return list(_CATALOG)


@lru_cache(maxsize=None)
def catalog(name: str) -> LineArrangement:
    """Named arrangements; the expected multiplicity census is re-verified
    against the computed lattice every time an entry is first built."""
    try:
        builder, (d, expected) = _CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}") from None
    arrangement = builder()
    comb_actual = weak_combinatorics(arrangement)
    expected_counts = tuple((k, t) for k, t in expected if t)
    assert arrangement.d == d and comb_actual.counts == expected_counts, (
        f"catalog entry {name} built with combinatorics {comb_actual}, "
        f"expected d={d}, counts={expected_counts}"
    )
    return arrangement


# ---------------------------------------------------------------------------
# .lines file format
# ---------------------------------------------------------------------------

_FIELD_NAMES = {"Q": FieldTag.Q, "Qw": FieldTag.QW}


def parse_lines(text: str) -> LineArrangement:
    """Parse the `.lines` format: optional `field:` header, `#` comments,
    then one line per linear form as three whitespace-separated scalars."""
    tag = None
    forms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("field:"):
            if forms or tag is not None:
                raise ParseError("field header must come first", line=lineno)
            name = body[len("field:"):].strip()
            if name not in _FIELD_NAMES:
                raise ParseError(f"unknown field {name!r}", line=lineno)
            tag = _FIELD_NAMES[name]
            continue
        parts = body.split()
        if len(parts) != 3:
            raise ParseError(
                f"expected three scalars, got {len(parts)}", line=lineno
            )
        try:
            coeffs = [parse_scalar(p) for p in parts]
        except ParseError as exc:
            raise ParseError(f"bad scalar: {exc}", line=lineno)
        if all(not c for c in coeffs):
            raise ParseError("zero line", line=lineno)
        form = LinearForm(*coeffs)
        if form in forms:
            raise DuplicateLine(f"duplicate line {form} (line {lineno})")
        forms.append(form)
    if not forms:
        raise ParseError("no lines in input")
    return LineArrangement(forms, tag)


def load_lines(path: str) -> LineArrangement:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_lines(fh.read())


def format_lines(arrangement: LineArrangement) -> str:
    out = [f"field: {arrangement.tag.value}"]
    for form in arrangement.lines:
        out.append(" ".join(str(c) for c in form.coeffs))
    return "\n".join(out) + "\n"
