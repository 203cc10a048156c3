import pytest

from lefschetz.core import Surface, make_curve
from lefschetz.factorization import (IDENTITY, BaseRelator, FactorizationError, Target,
                                     base_factorization, cap_off, commute, global_conjugate,
                                     hurwitz_move, relabel, relator_substitute, rotate, step_to_dict,
                                     twisted_fiber_sum, verify_factorization)
from lefschetz.fixtures import DISJOINT_PAIRS, build_W, build_W3, build_matsumoto, genus3_curves, genus3_words
from lefschetz.invariants import signature_endo_nagami, signature_ledger
from lefschetz.symplectic import evaluate_word

DISJOINT = {frozenset(p) for p in DISJOINT_PAIRS}
T2 = Surface(1)


def torus_pair():
    a, b = make_curve("a", T2, "a1"), make_curve("b", T2, "b1")
    return a, b, base_factorization("ab", [a, b], T2, ledger=None)


def test_hurwitz_right_move_calibration():
    # t_a t_b = t_b t_{t_b^-1(a)}; with the chosen handedness the new class is a1 + b1.
    a, b, F = torus_pair()
    G = hurwitz_move(F, 1, "right")
    assert G.names()[0] == "b"
    assert G.curves[1].homology.pretty() == "a1+b1"
    assert evaluate_word(G.letters, 1) == evaluate_word(F.letters, 1)
    assert G.history[-1].kind == "hurwitz"


def test_hurwitz_left_move_preserves_product():
    a, b, F = torus_pair()
    G = hurwitz_move(F, 1, "left")
    assert G.names()[1] == "a"
    assert evaluate_word(G.letters, 1) == evaluate_word(F.letters, 1)
    with pytest.raises(ValueError):
        hurwitz_move(F, 1, "up")
    with pytest.raises(IndexError):
        hurwitz_move(F, 2)
    with pytest.raises(IndexError):
        hurwitz_move(F, 0)


def test_hurwitz_disjoint_pair_swaps():
    c = genus3_curves()
    F = base_factorization("x", [c["c1"], c["c3"]], Surface(3))
    G = hurwitz_move(F, 1, disjoint=DISJOINT)
    assert G.names() == ["c3", "c1"] and G.curves[0] is c["c3"]


def test_commute_rules():
    c = genus3_curves()
    F = base_factorization("x", [c["c1"], c["c3"], c["c2"]], Surface(3))
    assert commute(F, 1, DISJOINT).names() == ["c3", "c1", "c2"]
    with pytest.raises(FactorizationError, match="pair nontrivially"):
        commute(F, 2, DISJOINT)
    G = base_factorization("y", [c["c2"], c["c4"]], Surface(3))
    with pytest.raises(FactorizationError, match="not declared disjoint"):
        commute(G, 1, DISJOINT)


def test_positive_letters_only():
    a, b, F = torus_pair()
    from lefschetz.symplectic import TwistLetter
    with pytest.raises(FactorizationError):
        type(F)(T2, (TwistLetter(a, -1),))
    with pytest.raises(FactorizationError):
        type(F)(T2, (TwistLetter(make_curve("z", Surface(2), "a1")),))


def test_rotate_and_conjugate_preserve_identity():
    W = cap_off(build_W(), 1)
    for s in (1, 5, -3, 0):
        assert verify_factorization(rotate(W, s))
    assert rotate(W, len(W)).names() == W.names()
    phi = genus3_words()["phi"]
    G = global_conjugate(W, phi)
    assert verify_factorization(G)
    assert G.census() == W.census()
    assert global_conjugate(W, type(phi)()) is W


def test_relabel():
    c = genus3_curves()
    F = base_factorization("x", [c["c1"], c["c2"]], Surface(3))
    twin = make_curve("c1copy", Surface(3), "a1")
    G = relabel(F, 1, twin)
    assert G.names() == ["c1copy", "c2"] and G.history[-1].kind == "relabel"
    with pytest.raises(FactorizationError):
        relabel(F, 2, twin)
    with pytest.raises(IndexError):
        relabel(F, 3, twin)


def test_lantern_substitution_and_ledger():
    c = genus3_curves()
    quad = [c[n] for n in ("c1", "c3", "c5", "c7")]
    tri = [c[n] for n in ("d", "y", "a")]
    F = base_factorization("q", quad + [c["c2"]], Surface(3), ledger=[("lantern", 0, 1)])
    G = relator_substitute(F, 1, quad, tri, "lantern", disjoint=DISJOINT)
    assert G.names() == ["d", "y", "a", "c2"]
    assert signature_endo_nagami(G) == signature_endo_nagami(F) + 1
    back = relator_substitute(G, 1, tri, quad, "lantern")
    assert signature_endo_nagami(back) == signature_endo_nagami(F)
    # a certificate of swaps moves c1 past c3 before matching
    H = relator_substitute(F, 1, [c[n] for n in ("c3", "c1", "c5", "c7")], tri, "lantern",
                           certificate=[1], disjoint=DISJOINT)
    assert H.names()[:3] == ["d", "y", "a"]


def test_substitution_errors():
    c = genus3_curves()
    quad = [c[n] for n in ("c1", "c3", "c5", "c7")]
    tri = [c[n] for n in ("d", "y", "a")]
    F = base_factorization("q", quad, Surface(3))
    with pytest.raises(FactorizationError, match="whitelisted"):
        relator_substitute(F, 1, quad, tri, "chain")
    with pytest.raises(FactorizationError, match="out of range"):
        relator_substitute(F, 2, quad, tri, "lantern")
    with pytest.raises(FactorizationError, match="mismatch"):
        relator_substitute(F, 1, [c["c2"]] + quad[1:], tri, "lantern")
    with pytest.raises(FactorizationError, match="differ"):
        relator_substitute(F, 1, quad, [c["d"], c["y"], c["c2"]], "lantern")
    with pytest.raises(FactorizationError, match="lengths"):
        relator_substitute(F, 1, quad[:2], quad[:2], "lantern")
    with pytest.raises(FactorizationError, match="permute"):
        relator_substitute(F, 1, quad[:2], [make_curve("c1copy", Surface(3), "a1"), c["c3"]],
                           "commutation")
    G = relator_substitute(F, 1, quad[:2], quad[1::-1], "commutation")
    assert G.names()[:2] == ["c3", "c1"] and G.history[-1].delta == 0


def test_cap_off_and_targets():
    W3 = build_W3()
    assert W3.target == Target(((1, 1),)) and W3.target.describe() == "t_delta1"
    C = cap_off(W3, 1)
    assert C.target.is_identity and C.surface == Surface(3)
    assert C.history[-1].kind == "cap"
    with pytest.raises(FactorizationError):
        cap_off(C, 1)
    assert IDENTITY.describe() == "1"


def test_fiber_sum_sections_and_history():
    W3 = cap_off(build_W3(), 1)
    F = twisted_fiber_sum(W3, W3, genus3_words()["phi"], "M")
    assert len(F) == 2 * len(W3) and verify_factorization(F)
    assert F.sections == (-2,)
    led = signature_ledger(F.history)
    assert led.known and led.total == -16
    with pytest.raises(FactorizationError):
        twisted_fiber_sum(build_W3(), W3)
    with pytest.raises(FactorizationError):
        twisted_fiber_sum(W3, cap_off(cap_off(build_matsumoto(2), 1), 2))


def test_unknown_ledger_propagates():
    a, b, F = torus_pair()
    assert isinstance(F.history[0], BaseRelator) and F.history[0].entries is None
    assert signature_endo_nagami(F) is None


def test_step_to_dict_roundtrip_shape():
    W3 = cap_off(build_W3(), 1)
    F = rotate(twisted_fiber_sum(W3, W3), 2)
    d = [step_to_dict(s) for s in F.history]
    assert d[0]["kind"] == "fiber_sum" and d[0]["left"][0]["kind"] == "base"
    assert d[0]["left"][0]["entries"] == [["matsumoto_odd", 1, -8]]
    assert d[-1] == {"kind": "rotate", "shift": 2}


def test_conjugated_w_trailing_classes():
    c = genus3_curves()
    words = genus3_words(c)
    from lefschetz.fixtures import build_W_vform
    W = cap_off(build_W_vform(), 1)
    for w, tail in (("alpha", ["c3", "c3", "c1", "c1"]), ("beta", ["c7", "c7", "c5", "c5"])):
        G = global_conjugate(W, words[w])
        got = [t.curve.homology for t in G.letters[-4:]]
        assert all(h.same_up_to_sign(c[n].homology) for h, n in zip(got, tail))


def test_fiber_sum_sizes():
    W = cap_off(build_W(), 1)
    assert len(W) == 14 and W.census() == (12, 2)
    assert len(twisted_fiber_sum(W, W)) == 28
    words = genus3_words()
    X1 = twisted_fiber_sum(global_conjugate(W, words["alpha"]), global_conjugate(W, words["beta"]))
    assert len(X1) == 28 and verify_factorization(X1)
    W3 = cap_off(build_W3(), 1)
    assert len(twisted_fiber_sum(W3, W3, words["phi"])) == 32


def test_m19_to_m18_lantern():
    c = genus3_curves()
    F = base_factorization("m", [c["a"], c["b"], c["c1"], c["c1"]], Surface(3))
    G = relator_substitute(F, 1, F.curves, [c["c3"], c["C"], c["B2"]], "lantern")
    assert G.names() == ["c3", "C", "B2"] and G.history[-1].delta == 1
