import random

import pytest

from lefschetz.fixtures import build_matsumoto, build_W, build_W3, build_Wk, genus3_curves
from lefschetz.factorization import cap_off
from lefschetz.invariants import signature_meyer
from lefschetz.meyer import (cocycle_self_test, cocycle_sum, meyer_cocycle, meyer_cocycle_twist,
                             meyer_form, random_word_matrix)
from lefschetz.symplectic import SpMatrix, prefix_products, transvection_matrix

from oracles import signature_by_descartes


def classes():
    return [c.homology.coeffs for c in genus3_curves().values() if not c.homology.is_zero()]


def test_normalization(rng):
    I = SpMatrix.identity(3)
    for _ in range(30):
        B = random_word_matrix(classes(), 3, rng.randint(0, 6), rng)
        assert meyer_cocycle(I, B) == 0
        assert meyer_cocycle(B, I) == 0


def test_gram_signature_vs_descartes(rng):
    for _ in range(60):
        A = random_word_matrix(classes(), 3, rng.randint(0, 5), rng)
        B = random_word_matrix(classes(), 3, rng.randint(0, 5), rng)
        G = meyer_form(A, B)
        assert all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(len(G)))
        assert meyer_cocycle(A, B) == signature_by_descartes(G)


def test_closed_form_matches_general(rng):
    cls = classes()
    for _ in range(150):
        A = random_word_matrix(cls, 3, rng.randint(0, 6), rng)
        c = list(rng.choice(cls))
        k = rng.choice((1, -1, 2))
        assert meyer_cocycle_twist(A, c, k) == meyer_cocycle(A, transvection_matrix(c, k))


@pytest.mark.parametrize("build", [build_W, build_W3, lambda: build_Wk(2)])
def test_closed_form_on_factorization_prefixes(build):
    F = build()
    g = F.surface.genus
    pre = prefix_products(F.letters, g)
    for P, t in zip(pre, F.letters[1:]):
        c = t.curve.homology.coeffs
        assert meyer_cocycle_twist(P, c) == meyer_cocycle(P, transvection_matrix(c))


def closed(F):
    for j, _ in F.target.boundaries:
        F = cap_off(F, j)
    return F


def test_known_signatures():
    assert signature_meyer(closed(build_matsumoto(2))) == -4
    assert signature_meyer(closed(build_W3())) == -8
    assert signature_meyer(closed(build_Wk(3))) == -6
    assert signature_meyer(closed(build_W())) == -6


def test_cocycle_sum_empty_and_single():
    F = build_W()
    assert cocycle_sum((), 3) == 0
    assert cocycle_sum(F.letters[:1], 3) == 0


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        meyer_cocycle(SpMatrix.identity(2), SpMatrix.identity(3))
    with pytest.raises(ValueError):
        meyer_cocycle(SpMatrix.from_lists([[2, 0], [0, 1]]), SpMatrix.identity(1))
    assert meyer_cocycle_twist(SpMatrix.identity(1), [0, 0]) == 0


def test_self_test_small():
    res = cocycle_self_test(classes(), 3, 40, random.Random(7))
    assert res["trials"] == 40
    assert res["violations"] == {"normalization": 0, "cocycle": 0, "bound": 0}


def test_genus_one_values():
    # tau(T_a, T_b) on the torus: a standard small example, cross-checked with the oracle.
    Ta, Tb = transvection_matrix([1, 0]), transvection_matrix([0, 1])
    for A, B in [(Ta, Tb), (Tb, Ta), (Ta, Ta), (Ta @ Tb, Ta)]:
        assert meyer_cocycle(A, B) == signature_by_descartes(meyer_form(A, B))
        assert abs(meyer_cocycle(A, B)) <= 2
