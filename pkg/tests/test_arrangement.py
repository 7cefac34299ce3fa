import random
from fractions import Fraction
from math import comb

import pytest

from nearfree import (
    FieldTag,
    LinearForm,
    LineArrangement,
    Scalar,
    catalog,
    catalog_names,
    defining_polynomial,
    deform_triple_point,
    delete_line,
    divide_exact,
    milnor_number,
    parse_lines,
    parse_poly,
    singular_points,
    tjurina_drop_check,
    transform,
    weak_combinatorics,
)
from nearfree.arrangement import format_lines, intersect, normalize_point
from nearfree.errors import (
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

from support import random_arrangement, random_invertible_matrix


def _forms(*texts):
    return [LinearForm.parse(t) for t in texts]


def test_two_lines_meet_in_one_node():
    a = LineArrangement(_forms("x", "y"))
    points = singular_points(a)
    assert len(points) == 1
    assert points[0].multiplicity == 2
    assert points[0].point == normalize_point((0, 0, 1))


def test_braid_lattice():
    points = singular_points(catalog("A1_6"))
    census = sorted(p.multiplicity for p in points)
    assert census == [2, 2, 2, 3, 3, 3, 3]


def test_dual_hesse_lattice():
    points = singular_points(catalog("DualHesse9"))
    assert len(points) == 12
    assert all(p.multiplicity == 3 for p in points)


def test_singular_points_order_is_deterministic():
    a = catalog("A1_6")
    first = [p.point for p in singular_points(a)]
    second = [p.point for p in singular_points(a)]
    assert first == second
    keys = [tuple(c.sort_key() for c in p) for p in first]
    assert keys == sorted(keys)


def test_incident_lines_recorded():
    a = LineArrangement(_forms("x", "y", "x-y", "z"))
    triple = next(p for p in singular_points(a) if p.multiplicity == 3)
    assert triple.incident_lines == (0, 1, 2)


def _brute_force_census(arrangement):
    # independent of the clustering code: count distinct pairwise
    # intersection points directly
    lines = arrangement.lines
    buckets = {}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = intersect(lines[i], lines[j])
            buckets.setdefault(p, set()).update((i, j))
    census = {}
    for incident in buckets.values():
        k = len(incident)
        census[k] = census.get(k, 0) + 1
    return census


def test_generic_four_lines_brute_force():
    a = LineArrangement(_forms("x", "y", "z", "x+y+z"))
    assert _brute_force_census(a) == {2: 6}
    wc = weak_combinatorics(a)
    assert (wc.d, wc.t2, wc.t3) == (4, 6, 0)


def test_a5_free_brute_force():
    a = LineArrangement(_forms("x", "y", "x-y", "z", "x-z"))
    assert _brute_force_census(a) == {2: 4, 3: 2}


def test_maclane_weak_combinatorics():
    wc = weak_combinatorics(catalog("MacLane8"))
    assert (wc.d, wc.t2, wc.t3) == (8, 4, 8)
    assert wc.higher == {}


def test_deformed_sextic_weak_combinatorics():
    wc = weak_combinatorics(catalog("A6_deformed"))
    assert (wc.d, wc.t2, wc.t3) == (6, 6, 3)


def test_milnor_numbers():
    assert milnor_number(catalog("MacLane8")) == 36
    assert milnor_number(catalog("A1_6")) == 19
    pencil = LineArrangement(_forms("x", "y", "x-y"))
    assert milnor_number(pencil) == 4


def test_milnor_as_pair_count_plus_t3():
    # only nodes and triples: mu = C(d,2) + t3
    for name in catalog_names():
        a = catalog(name)
        wc = weak_combinatorics(a)
        if wc.higher:
            continue
        assert milnor_number(a) == comb(a.d, 2) + wc.t3


def test_defining_polynomial_braid():
    assert defining_polynomial(catalog("A1_6")) == parse_poly(
        "x*y*z*(x-y)*(y-z)*(x-z)"
    )


def test_defining_polynomial_single_line():
    assert defining_polynomial(LineArrangement(_forms("x"))) == parse_poly("x")


def test_defining_polynomial_b7_matches_printed_equation_up_to_unit():
    f = defining_polynomial(catalog("B7_free"))
    printed = parse_poly("z*(x^2-z^2)*(y^2-z^2)*(y^2-x^2)")
    assert f == printed.scale(-1)


def test_delete_line_from_dual_hesse():
    smaller = delete_line(catalog("DualHesse9"), 0)
    wc = weak_combinatorics(smaller)
    assert (wc.d, wc.t2, wc.t3) == (8, 4, 8)
    assert smaller == catalog("MacLane8")


def test_every_dual_hesse_deletion_gives_maclane_combinatorics():
    hesse = catalog("DualHesse9")
    for index in range(9):
        wc = weak_combinatorics(delete_line(hesse, index))
        assert (wc.d, wc.t2, wc.t3) == (8, 4, 8)


def test_delete_line_polynomial_consistency():
    for name in ["A1_6", "B7_free", "DualHesse9"]:
        a = catalog(name)
        f = defining_polynomial(a)
        for index in (0, a.d - 1):
            quotient = divide_exact(f, a.lines[index])
            assert quotient == defining_polynomial(delete_line(a, index))


def test_delete_line_to_single_line():
    a = LineArrangement(_forms("x", "y"))
    single = delete_line(a, 1)
    assert single.d == 1
    assert singular_points(single) == []


def test_delete_line_bad_index():
    with pytest.raises(IndexOutOfRange):
        delete_line(catalog("A1_6"), 6)


def test_deform_braid_reproduces_catalog_entry():
    deformed = deform_triple_point(
        catalog("A1_6"), (1, 1, 1), 3, LinearForm.parse("y"), Scalar(Fraction(1, 2))
    )
    assert deformed == catalog("A6_deformed")
    wc = weak_combinatorics(deformed)
    assert (wc.t2, wc.t3) == (6, 3)


def test_deform_b7_free_gives_claimed_combinatorics():
    deformed = deform_triple_point(
        catalog("B7_free"), (1, 1, -1), 5, LinearForm.parse("x-z"), Scalar(1)
    )
    wc = weak_combinatorics(deformed)
    assert (wc.d, wc.t2, wc.t3) == (7, 6, 5)
    assert deformed == catalog("B7_deformed")


def test_deform_rejects_node():
    with pytest.raises(NotATriplePoint):
        deform_triple_point(
            catalog("A1_6"), (0, 1, 1), 0, LinearForm.parse("z"), Scalar(1)
        )


def test_deform_rejects_missing_point():
    with pytest.raises(NotATriplePoint):
        deform_triple_point(
            catalog("A1_6"), (1, 2, 3), 0, LinearForm.parse("z"), Scalar(1)
        )


def test_deform_rejects_non_incident_line():
    with pytest.raises(LineNotIncident):
        deform_triple_point(
            catalog("A1_6"), (1, 1, 1), 2, LinearForm.parse("y"), Scalar(1)
        )


def test_deform_rejects_direction_through_point():
    with pytest.raises(DirectionThroughPoint):
        deform_triple_point(
            catalog("A1_6"), (1, 1, 1), 3, LinearForm.parse("y-z"), Scalar(1)
        )


def test_deform_rejects_zero_eps():
    with pytest.raises(ValueError):
        deform_triple_point(
            catalog("A1_6"), (1, 1, 1), 3, LinearForm.parse("y"), Scalar(0)
        )


def test_deform_rejects_non_generic_eps():
    # eps = -2 sends x - y to x + y - 2z, which passes through the node
    # (1:-1:0) of {z, x+y} and re-creates a triple there: census unchanged
    with pytest.raises(NonGenericDeformation):
        deform_triple_point(
            catalog("B7_free"), (1, 1, -1), 5, LinearForm.parse("x-z"), Scalar(-2)
        )


def test_deform_validation_is_census_based():
    # direction z leaves both triples on x - y, but the moved line crosses
    # the old node (0:1:1) and forms a new triple there, so the census
    # deltas come out right and the operation accepts the result
    deformed = deform_triple_point(
        catalog("A1_6"), (1, 1, 1), 3, LinearForm.parse("z"), Scalar(1)
    )
    wc = weak_combinatorics(deformed)
    assert (wc.t2, wc.t3) == (6, 3)
    assert tjurina_drop_check(catalog("A1_6"), deformed)


def test_deform_rejects_collision_with_existing_line():
    # eps = 1 along direction y turns x - y into x, which already exists
    with pytest.raises(NonGenericDeformation):
        deform_triple_point(
            catalog("A1_6"), (1, 1, 1), 3, LinearForm.parse("y"), Scalar(1)
        )


def test_tjurina_drop_check():
    assert tjurina_drop_check(catalog("A1_6"), catalog("A6_deformed"))
    assert tjurina_drop_check(catalog("B7_free"), catalog("B7_deformed"))
    assert not tjurina_drop_check(catalog("A1_6"), catalog("A1_6"))


def test_catalog_names_and_unknown():
    names = catalog_names()
    assert len(names) == 10
    assert "MacLane8" in names and "DualHesse9" in names
    with pytest.raises(UnknownName):
        catalog("NOPE")


CATALOG_EXPECTATIONS = {
    "A4_free": (4, 3, 1),
    "A4_generic": (4, 6, 0),
    "A5_free": (5, 4, 2),
    "A5_nearlyfree": (5, 7, 1),
    "A1_6": (6, 3, 4),
    "A6_deformed": (6, 6, 3),
    "B7_free": (7, 3, 6),
    "B7_deformed": (7, 6, 5),
    "MacLane8": (8, 4, 8),
    "DualHesse9": (9, 0, 12),
}


@pytest.mark.parametrize("name", sorted(CATALOG_EXPECTATIONS))
def test_catalog_combinatorics(name):
    wc = weak_combinatorics(catalog(name))
    assert (wc.d, wc.t2, wc.t3) == CATALOG_EXPECTATIONS[name]
    assert wc.higher == {}


def test_catalog_field_tags():
    assert catalog("A1_6").tag is FieldTag.Q
    assert catalog("MacLane8").tag is FieldTag.QW
    assert catalog("DualHesse9").tag is FieldTag.QW


def test_pairs_identity_random_arrangements():
    rng = random.Random(5001)
    for _ in range(60):
        a = random_arrangement(rng, rng.randint(2, 7))
        total = sum(comb(p.multiplicity, 2) for p in singular_points(a))
        assert total == comb(a.d, 2)


def test_projective_invariance_of_combinatorics():
    rng = random.Random(5002)
    for name in ["A1_6", "B7_free", "MacLane8"]:
        a = catalog(name)
        for _ in range(5):
            moved = transform(a, random_invertible_matrix(rng))
            assert weak_combinatorics(moved).counts == weak_combinatorics(a).counts
            assert milnor_number(moved) == milnor_number(a)


# -- .lines format ----------------------------------------------------------


def test_parse_lines_roundtrip():
    for name in ["A1_6", "MacLane8"]:
        a = catalog(name)
        assert parse_lines(format_lines(a)) == a


def test_parse_lines_with_comments_and_header():
    text = """
# braid arrangement
field: Q
1 0 0
0 1 0   # the y axis
0 0 1
1 -1 0
0 1 -1
1 0 -1
"""
    a = parse_lines(text)
    assert a == catalog("A1_6")


def test_parse_lines_infers_field():
    assert parse_lines("1 0 0\n0 1 -1\n").tag is FieldTag.Q
    assert parse_lines("1 -w 0\n0 1 -1\n").tag is FieldTag.QW


def test_parse_lines_field_mismatch():
    with pytest.raises(FieldMismatch):
        parse_lines("field: Q\n1 -w 0\n0 1 0\n")


def test_parse_lines_duplicate():
    with pytest.raises(DuplicateLine):
        parse_lines("1 0 0\n2 0 0\n")


def test_parse_lines_errors():
    with pytest.raises(ParseError):
        parse_lines("1 0\n")
    with pytest.raises(ParseError):
        parse_lines("1 0 q\n")
    with pytest.raises(ParseError):
        parse_lines("")
    with pytest.raises(ParseError):
        parse_lines("field: R\n1 0 0\n")
    with pytest.raises(ParseError):
        parse_lines("0 0 0\n")


def test_duplicate_lines_rejected_at_construction():
    with pytest.raises(DuplicateLine):
        LineArrangement(_forms("x", "y", "2*x"))


def test_pencil_census_tracks_higher_multiplicities():
    pencil = LineArrangement(_forms("x", "y", "x-y", "x+y"))
    wc = weak_combinatorics(pencil)
    assert (wc.t2, wc.t3) == (0, 0)
    assert wc.higher == {4: 1}
    assert milnor_number(pencil) == 9
    assert str(wc) == "(4; 0, 0, t4=1)"
