import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpt.errors import InputError
from fatpt.lattice import (
    DivisorClass,
    canonical_class,
    intersect,
    line_class,
    parse_class,
    selfint,
)
from fatpt.weyl import (
    CREMONA,
    IN_CHAMBER,
    NEG_L,
    NEG_LINE,
    WeylWord,
    apply_generator,
    apply_word,
    enumerate_exceptional,
    format_word,
    is_exceptional,
    line_reduction,
    orbit_of_line,
    parse_word,
    reduce,
)

# The running 11-point example: one scheme, three consecutive degrees with
# three different outcomes (empty, a single curve, a free system).
Z11 = (77, 77, 77, 77, 77, 77, 77, 44, 11, 11, 11)


def _cls(t):
    return DivisorClass(t, Z11)


def test_single_cremona_step_frozen():
    # c = 208 - 3*77 = -23 hits the first three slots and the degree.
    g = apply_generator(_cls(208), CREMONA)
    assert g == DivisorClass(185, (54, 54, 54, 77, 77, 77, 77, 44, 11, 11, 11))


def test_reduce_208_terminal_frozen():
    rf = reduce(_cls(208))
    assert rf.status == NEG_L
    assert rf.reduced == parse_class("-23;8,-1,-5,-5,-5,-5,-8,-8,-14,-17,-17")
    assert apply_word(rf.word, _cls(208)) == rf.reduced
    assert apply_word(rf.word, rf.reduced, inverse=True) == _cls(208)


def test_reduce_209_terminal_frozen():
    rf = reduce(_cls(209))
    assert rf.status == IN_CHAMBER
    assert rf.reduced == DivisorClass(0, (0,) * 10 + (-11,))


def test_reduce_210_terminal_frozen():
    rf = reduce(_cls(210))
    assert rf.status == IN_CHAMBER
    assert rf.reduced == parse_class("27;8,8,8,8,5,5,5,5,5,5,5")


def test_reduce_small_classes():
    assert reduce(DivisorClass(1, (2,))).status == NEG_LINE
    assert reduce(DivisorClass(0, (1,))).status == NEG_L
    assert reduce(line_class(2)).status == IN_CHAMBER


def test_word_parse_format_roundtrip():
    w = WeylWord((0, 2, 1, 0))
    assert parse_word(format_word(w)) == w
    assert format_word(w) == "s0 s2 s1 s0"
    with pytest.raises(InputError):
        parse_word("s0 t1")


def test_word_inverse_recovers():
    f = DivisorClass(9, (4, 3, 3, 2, 1))
    w = WeylWord((0, 1, 0, 3, 2, 0, 4))
    assert apply_word(w.inverse(), apply_word(w, f)) == f


def test_generators_are_involutions():
    f = DivisorClass(9, (4, 3, 3, 2, 1))
    for g in (0, 1, 2, 3, 4):
        assert apply_generator(apply_generator(f, g), g) == f


def test_cremona_needs_three_slots():
    with pytest.raises(InputError):
        apply_generator(DivisorClass(2, (1, 1)), CREMONA)
    with pytest.raises(InputError):
        apply_generator(DivisorClass(2, (1, 1)), 2)


words = st.lists(st.integers(0, 5), min_size=0, max_size=25).map(tuple)
classes6 = st.builds(
    DivisorClass,
    st.integers(-30, 30),
    st.lists(st.integers(-12, 12), min_size=6, max_size=6).map(tuple),
)


@given(words, classes6, classes6)
@settings(max_examples=150, deadline=None)
def test_word_preserves_form_and_canonical(ops, f, g):
    w = WeylWord(ops)
    wf, wg = apply_word(w, f), apply_word(w, g)
    assert intersect(wf, wg) == intersect(f, g)
    assert selfint(wf) == selfint(f)
    k = canonical_class(6)
    assert intersect(k, wf) == intersect(k, f)


@given(words, classes6)
@settings(max_examples=150, deadline=None)
def test_reduce_chamber_outcome_word_invariant(ops, f):
    """Chamber membership is an orbit property and the chamber terminal is
    canonical. (Non-effective classes stop at the first witness, which may
    differ between orbit representatives.)"""
    rf = reduce(f)
    rg = reduce(apply_word(WeylWord(ops), f))
    assert (rf.status == IN_CHAMBER) == (rg.status == IN_CHAMBER)
    if rf.status == IN_CHAMBER:
        assert rf.reduced == rg.reduced


def test_reduce_idempotent():
    f = DivisorClass(13, (5, 5, 5, 5, 5, 5, 4, 1, 1, 1, 1))
    rf = reduce(f)
    again = reduce(rf.reduced)
    assert again.reduced == rf.reduced
    assert len(again.word) == 0 or again.reduced == rf.reduced


def test_exceptional_predicate():
    assert is_exceptional(parse_class("1;1,1"))
    assert is_exceptional(parse_class("3;2,1,1,1,1,1,1"))
    assert is_exceptional(parse_class("0;-1"))
    assert not is_exceptional(parse_class("1;1"))
    assert not is_exceptional(parse_class("2;1,1"))


def test_enumeration_counts():
    assert len(enumerate_exceptional(1)) == 1
    assert len(enumerate_exceptional(3)) == 3
    assert [str(e) for e in enumerate_exceptional(3)] == [
        "1;1,1",
        "2;1,1,1,1,1",
        "3;2,1,1,1,1,1,1",
    ]


def test_enumeration_full_count():
    classes = enumerate_exceptional(20)
    assert len(classes) == 2051
    assert all(selfint(e) == -1 for e in classes[:50])
    degrees = sorted({e.t for e in classes})
    assert degrees == list(range(1, 21))


def test_orbit_of_line():
    c = parse_class("12;5,5,5,4,4,4,4,2")
    w = orbit_of_line(c)
    assert w is not None
    assert apply_word(w, line_class(c.n)) == c
    assert orbit_of_line(parse_class("2;1,1")) is None


def test_line_reduction_trail():
    e = parse_class("13;5,5,5,5,5,5,4,1,1,1,1")
    word, terminal, trail = line_reduction(e)
    assert terminal == DivisorClass(1, (1, 1) + (0,) * (terminal.n - 2))
    assert apply_word(word, e) == terminal
    # The trail records the degree before each recorded operation.
    assert len(trail) == len(word)
    assert trail[0] == 13
