import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dtcomplexity import families as F
from dtcomplexity.errors import (BadDecision, BadDimension, DuplicateTuple, EmptyTable, TableError,
                                 UniverseTooSmall, UnknownAttribute, Unsupported)
from dtcomplexity.table import loads, make_table, read_table, write_table

from helpers import T1, T2, T3


def brute_tuples(evaluate, attrs, universe):
    return sorted({tuple(evaluate(i, j) for i in attrs) for j in universe})


def test_make_table_keeps_row_order():
    t = make_table(2, [((0, 0), 1), ((1, 0), 2), ((1, 1), 3)])
    assert t.tuples == [(0, 0), (1, 0), (1, 1)]
    assert t.decisions == [1, 2, 3]


def test_constant_table_is_valid():
    t = make_table(1, [((0,), 1), ((1,), 1)])
    assert t.is_constant and len(t) == 2


@pytest.mark.parametrize("n, rows, exc", [
    (2, [((0, 0), 1), ((0, 0), 2)], DuplicateTuple),
    (2, [], EmptyTable),
    (2, [((0, 0, 1), 1)], BadDimension),
    (0, [((), 1)], BadDimension),
    (1, [((0,), 0)], BadDecision),
    (1, [((2,), 1)], TableError),
])
def test_make_table_rejects(n, rows, exc):
    with pytest.raises(exc):
        make_table(n, rows)


def test_duplicate_columns_allowed():
    t = make_table(2, [((0, 0), 1), ((1, 1), 2)])
    assert len(t) == 2


def test_generate_u1_matches_brute_force():
    expected = brute_tuples(lambda i, j: int(j > i), (1, 2), range(1, 4))
    t = F.generate(F.u1(), [1, 2])
    assert t.tuples == expected == [(0, 0), (1, 0), (1, 1)]
    assert t.decisions == [1, 2, 3]


def test_generate_u2_matches_brute_force():
    expected = brute_tuples(lambda i, j: int(j == i), (1, 2), range(1, 4))
    t = F.generate(F.u2(), [1, 2])
    assert set(t.tuples) == {(1, 0), (0, 1), (0, 0)}
    assert t.tuples == expected
    assert t.decisions == [1, 2, 3]


def test_generate_u3_full_cube():
    t = F.generate(F.u3(), [1, 2])
    assert t.rows == (((0, 0), 1), ((0, 1), 2), ((1, 0), 3), ((1, 1), 4))


@pytest.mark.parametrize("n", range(1, 7))
def test_row_counts(n):
    assert len(T1(n)) == n + 1
    assert len(T2(n)) == n + 1
    if n <= 5:
        assert len(T3(n)) == 2 ** n


@given(st.lists(st.integers(1, 6), min_size=1, max_size=5), st.sampled_from(["u1", "u2", "u3"]))
def test_generate_brute_force_any_selection(attrs, kind):
    fam = F.from_name(kind)
    top = max(attrs)
    universe = range(1 << top) if kind == "u3" else range(1, top + 2)
    assert F.generate(fam, attrs).tuples == brute_tuples(fam.evaluate, attrs, universe)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=4))
def test_injective_decisions_are_one_to_rowcount(attrs):
    t = F.generate(F.u1(), attrs)
    assert sorted(t.decisions) == list(range(1, len(t) + 1))


def test_duplicate_column_adds_no_rows():
    base = F.generate(F.u1(), [1, 3])
    dup = F.generate(F.u1(), [1, 3, 3])
    assert len(dup) == len(base)
    assert all(t[1] == t[2] for t in dup.tuples)


def test_generate_is_deterministic():
    a = F.generate(F.default_half_plane(), [1, 4, 7])
    b = F.generate(F.default_half_plane(), [1, 4, 7])
    assert a.dumps() == b.dumps()


def test_universe_too_small():
    with pytest.raises(UniverseTooSmall):
        F.generate(F.u1(bound=3), [1, 3])
    assert len(F.generate(F.u1(bound=10), [1, 3])) == 3


def test_unknown_attribute():
    with pytest.raises(UnknownAttribute):
        F.generate(F.u1(), [0])
    with pytest.raises(UnknownAttribute):
        F.generate(F.default_feature(), [99])
    with pytest.raises(UnknownAttribute):
        F.generate(F.u1(), [])


def test_labelings():
    t = F.generate(F.u1(), [1, 2], F.CONSTANT)
    assert t.decisions == [1, 1, 1]
    explicit = F.Labeling("explicit", {(0, 0): 5, (1, 0): 5, (1, 1): 2})
    assert F.generate(F.u1(), [1, 2], explicit).decisions == [5, 5, 2]
    with pytest.raises(TableError):
        F.generate(F.u1(), [1, 2], F.Labeling("explicit", {(0, 0): 1}))


def test_half_plane_sides_and_line_points():
    fam = F.half_plane([(0, 0), (1, 0), (2, 0)], [(1, 0, -1)])  # line x = 1
    # first attribute is 1 where x - 1 >= 0, second where x - 1 <= 0
    assert [fam.evaluate(1, p) for p in fam.params["points"]] == [0, 1, 1]
    assert [fam.evaluate(2, p) for p in fam.params["points"]] == [1, 1, 0]
    assert F.generate(fam, [1, 2]).tuples == [(0, 1), (1, 0), (1, 1)]


def test_half_plane_exact_rationals():
    fam = F.half_plane([(Fraction(1, 3), Fraction(2, 3))], [(3, 3, -3)])  # x + y = 1 through the point
    assert fam.evaluate(1, fam.params["points"][0]) == 1
    assert fam.evaluate(2, fam.params["points"][0]) == 1


def test_feature_threshold():
    fam = F.feature_threshold([(0,), (1,), (2,)], [(0, -1), (0, -2)])
    assert F.generate(fam, [1, 2]).tuples == [(0, 0), (1, 0), (1, 1)]


def test_custom_family():
    fam = F.custom([(0, 1), (1, 1), (1, 0)])
    assert F.generate(fam, [2, 1]).tuples == [(0, 1), (1, 0), (1, 1)]
    with pytest.raises(Unsupported):
        F.canonical_worst_selection(fam, 1)


@pytest.mark.parametrize("fam", [F.u1(), F.u2(), F.u3()])
def test_canonical_selection_infinite(fam):
    assert F.canonical_worst_selection(fam, 3) == [1, 2, 3]
    assert F.canonical_worst_selection(fam, 4) == [1, 2, 3, 4]


def test_u3_selection_realizes_cube():
    assert len(F.worst_table(F.u3(), 2)) == 4


@pytest.mark.parametrize("fam", [F.default_half_plane(), F.default_feature()])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_finite_family_selection_is_maximal(fam, n):
    chosen = F.canonical_worst_selection(fam, n)
    best = max(len(F.realizable_tuples(fam, c)) for c in itertools.combinations(fam.attribute_ids(), n))
    assert len(F.realizable_tuples(fam, chosen)) == best


def test_greedy_selection_used_beyond_limit():
    fam = F.default_half_plane()
    chosen = F.canonical_worst_selection(fam, 3, search_limit=1)
    assert len(chosen) == 3 == len(set(chosen))


def test_selection_errors():
    with pytest.raises(Unsupported):
        F.canonical_worst_selection(F.default_feature(), 50)


def test_dtable_round_trip(tmp_path):
    t = make_table(3, [((1, 1, 0), 2), ((0, 0, 1), 1), ((0, 1, 1), 3)])
    text = t.dumps()
    doc = json.loads(text)
    assert doc == {"format": "dtable-v1", "n": 3,
                   "rows": [{"t": "001", "d": 1}, {"t": "011", "d": 3}, {"t": "110", "d": 2}]}
    assert loads(text).dumps() == text
    write_table(t, tmp_path / "t.json")
    assert read_table(tmp_path / "t.json") == t.canonical()


@pytest.mark.parametrize("doc", [
    {"format": "dtable-v1", "n": 2, "rows": [{"t": "00", "d": 1}, {"t": "00", "d": 2}]},
    {"format": "dtable-v1", "n": 2, "rows": [{"t": "0", "d": 1}]},
    {"format": "dtable-v1", "n": 2, "rows": [{"t": "01", "d": 0}]},
    {"format": "dtable-v0", "n": 1, "rows": [{"t": "0", "d": 1}]},
    {"format": "dtable-v1", "n": 1},
])
def test_dtable_parser_rejects(doc):
    with pytest.raises(TableError):
        loads(json.dumps(doc))


@settings(max_examples=50)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(*[st.integers(0, 1)] * n), min_size=1), st.integers(1, 4))))
def test_dtable_round_trip_property(args):
    n, tuples, d = args
    t = make_table(n, [(tp, d) for tp in tuples])
    assert loads(t.dumps()).dumps() == t.dumps()
