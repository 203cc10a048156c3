import pytest
from hypothesis import given, strategies as st

from lefschetz.core import HomologyClass, Surface, make_curve
from lefschetz.fixtures import GENUS3, genus3_curves, genus3_words, image_curve
from lefschetz.symplectic import (MappingWord, SpMatrix, TwistLetter, act_on_curve, evaluate_word,
                                  intersection_pairing, prefix_products, standard_form,
                                  transvection_matrix, verify_identity)


BASIS = ["a1", "b1", "a2", "b2", "a3", "b3"]


def basis_curves():
    out = {n: make_curve(n, GENUS3, n) for n in BASIS}
    out.update({n: c for n, c in genus3_curves().items() if n in ("c3", "c5")})
    return out


def test_pairing_convention():
    a1, b1 = HomologyClass.basis(1, "a1"), HomologyClass.basis(1, "b1")
    assert intersection_pairing(a1, b1) == 1
    assert intersection_pairing(b1, a1) == -1
    J = standard_form(2)
    assert J.rows[0] == (0, 1, 0, 0) and J.rows[1] == (-1, 0, 0, 0)


def test_twist_calibration_genus_one():
    # T_c(x) = x - <x,c> c with c = a1 sends b1 to b1 + a1 and fixes a1.
    T = transvection_matrix(HomologyClass.basis(1, "a1"))
    assert T.apply(HomologyClass.basis(1, "b1")).pretty() == "a1+b1"
    assert T.apply(HomologyClass.basis(1, "a1")).pretty() == "a1"


class_vectors = st.lists(st.integers(-3, 3), min_size=6, max_size=6).filter(any)


@given(class_vectors, st.integers(-3, 3).filter(bool))
def test_transvection_properties(c, k):
    T = transvection_matrix(c, k)
    assert T.is_symplectic()
    assert (T @ transvection_matrix(c, -k)).is_identity()
    assert T == transvection_matrix([-x for x in c], k)
    assert T @ T.inverse() == SpMatrix.identity(3)


@given(st.lists(st.tuples(st.sampled_from(["a1", "b1", "a2", "b2", "a3", "b3", "c3", "c5"]),
                          st.sampled_from([1, -1])), max_size=12))
def test_word_inverse_and_prefixes(spec):
    curves = basis_curves()
    w = MappingWord(tuple(TwistLetter(curves[n], e) for n, e in spec))
    M = evaluate_word(w, 3)
    assert M.is_symplectic()
    assert (M @ evaluate_word(w.inverse(), 3)).is_identity()
    pre = prefix_products(w.letters, 3)
    assert len(pre) == len(w) and (not pre or pre[-1] == M)


def test_left_to_right_product():
    c = basis_curves()
    w = MappingWord((TwistLetter(c["a1"]), TwistLetter(c["b1"])))
    assert evaluate_word(w) == transvection_matrix(c["a1"]) @ transvection_matrix(c["b1"])


def test_braid_and_commutation_relations():
    c = basis_curves()
    Ta, Tb, Ta2 = (transvection_matrix(c[n]) for n in ("a1", "b1", "a2"))
    assert Ta @ Tb @ Ta == Tb @ Ta @ Tb
    assert Ta @ Ta2 == Ta2 @ Ta
    assert Ta @ Tb != Tb @ Ta


def test_chain_relation_genus_one():
    # (t_a t_b)^6 = 1 on a torus with one boundary; in homology already (t_a t_b)^6 = I.
    c = basis_curves()
    M = transvection_matrix(c["a1"]) @ transvection_matrix(c["b1"])
    P = SpMatrix.identity(3)
    for _ in range(6):
        P = P @ M
    assert P.is_identity()


def test_lantern_shadow():
    c = genus3_curves()
    lhs = [c[n] for n in ("c1", "c3", "c5", "c7")]
    rhs = [c[n] for n in ("d", "y", "a")]
    assert evaluate_word([TwistLetter(x) for x in lhs], 3) == evaluate_word([TwistLetter(x) for x in rhs], 3)


def test_act_on_curve_and_separating():
    S = Surface(3)
    a1, b1 = make_curve("a1", S, "a1"), make_curve("b1", S, "b1")
    img = act_on_curve(MappingWord((TwistLetter(a1),)), b1)
    assert img.homology.pretty() == "a1+b1" and not img.separating
    sep = make_curve("C", S, "[a1,b1]")
    assert act_on_curve(MappingWord((TwistLetter(a1),)), sep).separating
    assert act_on_curve(MappingWord(()), b1, "x").name == "x"
    with pytest.raises(ValueError):
        act_on_curve(MappingWord((TwistLetter(make_curve("a1", Surface(2), "a1")),)), b1)


def test_mixed_surfaces_rejected():
    with pytest.raises(ValueError):
        evaluate_word([TwistLetter(make_curve("a", Surface(2), "a1")),
                       TwistLetter(make_curve("b", Surface(3), "a1"))])
    with pytest.raises(ValueError):
        evaluate_word(MappingWord(()))
    assert evaluate_word(MappingWord(()), 2).is_identity()
    with pytest.raises(ValueError):
        TwistLetter(make_curve("a", GENUS3, "a1"), 0)


def test_image_curve_matches_sp_action():
    curves = genus3_curves()
    words = genus3_words(curves)
    img = image_curve("x", curves["c2"], "alpha", curves, words)
    alpha = evaluate_word(words["alpha"], 3)
    assert img.homology == alpha.apply(curves["c2"].homology)
    with pytest.raises(KeyError):
        image_curve("x", curves["c2"], "nope", curves)
    assert image_curve("same", curves["c2"], "", curves).homology == curves["c2"].homology


def test_verify_identity_on_w():
    from lefschetz.fixtures import build_W
    assert verify_identity(build_W())


def test_listed_examples():
    c = genus3_curves()
    words = genus3_words(c)
    assert transvection_matrix(c["C"]).is_identity()
    assert evaluate_word(MappingWord(()), 3).is_identity()
    b2 = make_curve("b2", GENUS3, "b2")
    assert act_on_curve(words["beta"], b2).homology.pretty() == "2a2-2b2-b3"
    assert act_on_curve(words["alpha"], c["B2'"]).homology.same_up_to_sign(c["c3"].homology)
    assert c["c3"].homology.pretty() == "a1-a2"


def test_identity_checks_on_relators():
    from lefschetz.factorization import cap_off
    from lefschetz.fixtures import build_matsumoto, build_W
    W = build_W()
    assert verify_identity(W)
    assert not evaluate_word(W.letters[:-1], 3).is_identity()
    assert verify_identity(build_matsumoto(2))
    assert verify_identity(cap_off(cap_off(build_matsumoto(2), 1), 2))
