import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quotajudge.clausekit import (
    ClauseShape,
    classify_clause,
    dichotomy,
    family_membership,
    mirror_shape,
    preset_shapes,
    shape_of,
)
from quotajudge.model import DataError, clause
from randgen import random_profile


def test_classify_clause():
    assert classify_clause(clause(1, 2)) == ClauseShape(2, 0)
    assert classify_clause(clause(-1, 2, -3)) == ClauseShape(3, 2)
    assert classify_clause(clause(-4)) == ClauseShape(1, 1)
    assert shape_of is classify_clause


def test_mirror_shape():
    assert mirror_shape(ClauseShape(3, 1)) == ClauseShape(3, 2)
    assert mirror_shape(ClauseShape(2, 0)) == ClauseShape(2, 2)
    s = ClauseShape(4, 3)
    assert mirror_shape(mirror_shape(s)) == s


def test_presets():
    assert preset_shapes("positive-monotone", 2) == frozenset(
        {ClauseShape(1, 0), ClauseShape(2, 0)}
    )
    mono = preset_shapes("monotone", 3)
    assert all(s.negated in (0, s.length) for s in mono)
    horn = preset_shapes("horn", 3)
    assert all(s.length - s.negated <= 1 for s in horn)
    any3 = preset_shapes("any", 3)
    assert len(any3) == 2 + 3 + 4  # lengths 1..3, all negation counts
    with pytest.raises(DataError):
        preset_shapes("nonsense", 3)


def test_family_membership(doctor):
    report = family_membership(doctor.profile.agenda)
    assert report.horn
    assert not report.monotone
    assert not report.positive_monotone
    assert report.max_length == 2
    assert report.shapes == frozenset({ClauseShape(2, 1), ClauseShape(2, 2)})


def test_family_membership_chain(chain):
    report = family_membership(chain.profile.agenda)
    assert report.positive_monotone and report.monotone
    assert not report.horn
    assert report.shapes == frozenset({ClauseShape(2, 0)})


@given(st.integers(0, 2_000))
def test_family_flags_match_definitions(seed):
    rng = random.Random(seed)
    profile = random_profile(rng)
    report = family_membership(profile.agenda)
    clauses = [cl for _, cl in profile.agenda.conclusions]
    assert report.positive_monotone == all(
        not lit.negated for cl in clauses for lit in cl
    )
    assert report.monotone == all(
        len({lit.negated for lit in cl}) == 1 for cl in clauses
    )
    assert report.horn == all(
        sum(not lit.negated for lit in cl) <= 1 for cl in clauses
    )


# --- the tractability frontier ------------------------------------------------

def test_dichotomy_presets():
    assert not dichotomy(preset_shapes("horn", 3)).hard
    assert not dichotomy(preset_shapes("horn", 6)).hard
    assert not dichotomy(preset_shapes("any", 2)).hard
    assert not dichotomy(preset_shapes("monotone", 2)).hard
    v = dichotomy(preset_shapes("any", 3))
    assert v.hard and v.condition == 1
    v = dichotomy(preset_shapes("monotone", 3))
    assert v.hard and v.condition == 2
    assert "np-hard" in v.label and "polynomial" in dichotomy(frozenset()).label


def test_dichotomy_condition_one_needs_all_three_pieces():
    # a length-2 all-positive, a length-2 all-negative, and a longer mixed shape
    trio = frozenset({ClauseShape(2, 0), ClauseShape(2, 2), ClauseShape(3, 1)})
    assert dichotomy(trio).hard
    for drop in trio:
        rest = trio - {drop}
        assert not dichotomy(rest).hard, rest


def test_dichotomy_condition_two():
    # all-positive and all-negative shapes of length >= 2 with max length >= 3
    assert dichotomy(frozenset({ClauseShape(3, 0), ClauseShape(2, 2)})).hard
    assert dichotomy(frozenset({ClauseShape(2, 0), ClauseShape(3, 3)})).hard
    assert not dichotomy(frozenset({ClauseShape(2, 0), ClauseShape(2, 2)})).hard
    assert not dichotomy(frozenset({ClauseShape(1, 0), ClauseShape(3, 3)})).hard
    assert not dichotomy(frozenset({ClauseShape(3, 0), ClauseShape(3, 0)})).hard


def test_dichotomy_mixed_shape_bounds():
    # the mixed piece of condition 1 needs length >= 3 and 0 < negated < length
    base = {ClauseShape(2, 0), ClauseShape(2, 2)}
    assert not dichotomy(frozenset(base | {ClauseShape(2, 1)})).hard
    v = dichotomy(frozenset(base | {ClauseShape(3, 0)}))
    assert v.hard and v.condition == 2  # (3,0) is not mixed, but pairs with (2,2)
    v = dichotomy(frozenset(base | {ClauseShape(4, 2)}))
    assert v.hard and v.condition == 1


@given(st.integers(0, 500))
def test_dichotomy_mirror_invariant(seed):
    # negating every premise mirrors every shape and cannot change the verdict
    rng = random.Random(seed)
    shapes = set()
    for _ in range(rng.randint(1, 5)):
        length = rng.randint(1, 4)
        shapes.add(ClauseShape(length, rng.randint(0, length)))
    mirrored = frozenset(mirror_shape(s) for s in shapes)
    assert dichotomy(frozenset(shapes)).hard == dichotomy(mirrored).hard


def test_dichotomy_brute_force_small_shapes():
    # enumerate every shape family over lengths 1..3 and check both conditions
    universe = [
        ClauseShape(length, negated)
        for length in (1, 2, 3)
        for negated in range(length + 1)
    ]

    def expect_hard(shapes):
        cond1 = (
            ClauseShape(2, 0) in shapes
            and ClauseShape(2, 2) in shapes
            and any(s.length >= 3 and 0 < s.negated < s.length for s in shapes)
        )
        cond2 = any(
            a.negated == 0 and b.negated == b.length
            and a.length >= 2 and b.length >= 2
            and max(a.length, b.length) >= 3
            for a in shapes
            for b in shapes
        )
        return cond1 or cond2

    for bits in product([0, 1], repeat=len(universe)):
        shapes = frozenset(s for s, b in zip(universe, bits) if b)
        assert dichotomy(shapes).hard == expect_hard(shapes), shapes
