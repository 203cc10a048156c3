import pytest
from hypothesis import given, strategies as st

from lefschetz.core import (Curve, HomologyClass, Pi1Word, Surface, WordSyntaxError,
                            abelianize_word, free_reduce, make_curve, parse_pi1_word,
                            print_pi1_word, validate_curve)


def test_surface_basics():
    S = Surface(3, 1)
    assert S.dim == 6 and not S.closed
    assert S.capped() == Surface(3)
    assert Surface(2).generator_names() == ["a1", "b1", "a2", "b2"]
    with pytest.raises(ValueError):
        Surface(3).capped()
    with pytest.raises(ValueError):
        Surface(-1)


def test_homology_basis_and_arithmetic():
    a1 = HomologyClass.basis(3, "a1")
    b2 = HomologyClass.basis(3, "b2")
    assert a1.coeffs == (1, 0, 0, 0, 0, 0)
    assert b2.coeffs == (0, 0, 0, 1, 0, 0)
    h = 2 * a1 - b2
    assert h.pretty() == "2a1-b2"
    assert (-h).same_up_to_sign(h)
    assert HomologyClass.zero(3).pretty() == "0"
    assert HomologyClass.from_dict(3, {"a2": 2, "b2": -2, "b3": -1}).pretty() == "2a2-2b2-b3"
    with pytest.raises(ValueError):
        HomologyClass.basis(3, "a4")
    with pytest.raises(ValueError):
        a1 + HomologyClass.zero(2)


@pytest.mark.parametrize("text,expected", [
    ("a1 b1 b1^-1", "a1"),
    ("[a1,b1]", "a1 b1 a1^-1 b1^-1"),
    ("(a1 b2)^2", "a1 b2 a1 b2"),
    ("a1^-2", "a1^-1 a1^-1"),
    ("[a1,b1^-1]", "a1 b1^-1 a1^-1 b1"),
    ("", ""),
])
def test_parse_examples(text, expected):
    assert print_pi1_word(parse_pi1_word(text, 3)) == expected


@pytest.mark.parametrize("text,offset", [
    ("a1 a4", 3),          # generator index above the genus
    ("a1 $", 3),           # malformed token
    ("[a1,b1", 0),         # unbalanced bracket reported at the opener
    ("a1 )", 3),           # stray closer
    ("a1^0", 2),
    ("é a1", 0),
    ("a1 é", 3),           # byte offsets, not character offsets
])
def test_parse_errors_report_byte_offsets(text, offset):
    with pytest.raises(WordSyntaxError) as ei:
        parse_pi1_word(text, 3)
    assert ei.value.offset == offset


def test_abelianize():
    w = parse_pi1_word("b3 a3^-1 b3^-1 a2^-1", 3)
    assert abelianize_word(w).pretty() == "-a2-a3"
    assert abelianize_word(parse_pi1_word("[a1,b1][a2,b2]", 3)).is_zero()


def test_make_and_validate_curve():
    S = Surface(3)
    c = make_curve("c3", S, "a1 a2^-1")
    assert c.homology.pretty() == "a1-a2" and not c.separating
    assert validate_curve(c) == []
    sep = make_curve("C", S, "[a1,b1]")
    assert sep.separating and validate_curve(sep) == []
    bad = Curve("bad", S, HomologyClass.basis(3, "a1"), True)
    assert any("separating" in p for p in validate_curve(bad))
    mismatch = Curve("m", S, HomologyClass.basis(3, "a2"), False, parse_pi1_word("a1", 3))
    assert validate_curve(mismatch)
    short = Curve("s", S, HomologyClass.zero(2), True)
    assert any("length" in p for p in validate_curve(short))
    with pytest.raises(ValueError):
        make_curve("x", S)


letters = st.lists(st.tuples(st.integers(0, 5), st.sampled_from([1, -1])), max_size=30)


@given(letters)
def test_print_parse_roundtrip(ls):
    w = Pi1Word(3, tuple(ls))
    assert parse_pi1_word(print_pi1_word(w), 3) == w


@given(letters)
def test_free_reduce_idempotent_and_abelian_invariant(ls):
    r = free_reduce(ls)
    assert free_reduce(r) == r
    assert abelianize_word(Pi1Word(3, tuple(ls))) == abelianize_word(Pi1Word(3, r))


@given(letters, letters)
def test_inverse_cancels(x, y):
    w = Pi1Word(3, tuple(x))
    assert len(w * w.inverse()) == 0
    v = Pi1Word(3, tuple(y))
    assert (w * v).inverse() == v.inverse() * w.inverse()


def test_listed_parse_examples():
    S = Surface(3)
    assert len(parse_pi1_word("b1 b2", 3)) == 2
    assert len(parse_pi1_word("a1 a1^-1", 3)) == 0
    assert len(parse_pi1_word("a2^-1 [a3,b3] b2^-1 b1^-1 a1^-1", 3)) == 8
    assert make_curve("B0", S, "b1 b2").homology.coeffs == (0, 1, 0, 1, 0, 0)
    zero_nonsep = Curve("z", S, HomologyClass.zero(3), False)
    assert validate_curve(zero_nonsep)
