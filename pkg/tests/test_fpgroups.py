import pytest

from lefschetz.fixtures import xk_presentation, zk_presentation
from lefschetz.fpgroups import (AbelianGroup, BACKEND, Exhausted, Finite, Presentation,
                                abelianization, amalgamate, certify_trivial, invariant_factors,
                                relation_matrix, smith_normal_form, surface_presentation,
                                tietze_run, tietze_simplify, todd_coxeter, vanishing_cycle_quotient,
                                visibly_abelian)
from lefschetz.fpgroups import _coset_py
from lefschetz.fpgroups.coset import audit_table

from oracles import det, invariant_factors_oracle


def matmul(A, B):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*B)] for r in A]


# ---------------------------------------------------------------- Smith normal form

def random_matrices(rng, count=200):
    for _ in range(count):
        m, n = rng.randint(1, 6), rng.randint(1, 8)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        if rng.random() < 0.25:  # plant rank deficiency and common factors
            M.append([2 * x for x in M[0]])
            M = M[:6]
        yield M


def test_snf_against_determinantal_divisors(rng):
    for M in random_matrices(rng):
        D, U, V = smith_normal_form(M)
        assert matmul(matmul(U, M), V) == D
        assert abs(det(U)) == 1 and abs(det(V)) == 1
        diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
        assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
        nz = [d for d in diag if d]
        assert all(d > 0 for d in nz)
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        assert nz == invariant_factors_oracle(M) == invariant_factors(M)


@pytest.mark.parametrize("M,expected", [
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[0, 0], [0, 0]], []),
    ([[6]], [6]),
])
def test_snf_examples(M, expected):
    assert invariant_factors(M) == expected


def test_snf_empty():
    assert smith_normal_form([]) == ([], [], [])


def test_abelian_group_validation():
    assert str(AbelianGroup(2, (2, 6))) == "Z^2 + Z/2 + Z/6"
    assert str(AbelianGroup(0)) == "0" and AbelianGroup(0).is_trivial
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    assert AbelianGroup.from_dict(AbelianGroup(1, (3,)).to_dict()) == AbelianGroup(1, (3,))
    assert AbelianGroup.from_relation_matrix([[2, 0], [0, 3]], 2) == AbelianGroup(0, (6,))


# ---------------------------------------------------------------- presentations

def test_surface_group_abelianization():
    for g in range(0, 5):
        assert abelianization(surface_presentation(g)) == AbelianGroup(2 * g)
        assert abelianization(surface_presentation(g, "commutators")) == AbelianGroup(2 * g)
    with pytest.raises(ValueError):
        surface_presentation(2, "braids")


def test_vanishing_cycle_quotient():
    P = vanishing_cycle_quotient(2, ["a1", "b1 a2"])
    assert abelianization(P) == AbelianGroup(2)
    with pytest.raises(ValueError):
        vanishing_cycle_quotient(1, [((4, 1),)])


def test_presentation_roundtrip_and_errors():
    P = Presentation.parse(["x", "y"], ["x y x^-1 y^-1", "x^3"])
    assert Presentation.from_dict(P.to_dict()) == P
    assert relation_matrix(P) == [[0, 0], [3, 0]]
    assert P.with_relators(["y"]).relators[-1] == ((1, 1),)
    with pytest.raises(ValueError):
        Presentation(("x", "x"))
    with pytest.raises(ValueError):
        Presentation(("x",), (((1, 1),),))


def test_amalgamate():
    A = Presentation.parse(["x"], ["x^2"])
    B = Presentation.parse(["y"], ["y^3"])
    P = amalgamate(A, B, [("x", "y")])
    assert abelianization(P).is_trivial
    assert todd_coxeter(P) == Finite(1)
    free = amalgamate(A, B, [])
    assert abelianization(free) == AbelianGroup(0, (6,))
    with pytest.raises(ValueError, match="collide"):
        amalgamate(A, A, [])
    Q = amalgamate(A, A, [("x", "x")], prefixes=("l_", "r_"))
    assert Q.generators == ("l_x", "r_x") and todd_coxeter(Q) == Finite(2)


# ---------------------------------------------------------------- Todd-Coxeter

CLASSICAL_TRIVIAL = Presentation.parse(["a", "b"], ["a b a^-1 b^-1 b^-1", "b a b^-1 a^-1 a^-1"])
GROUPS = [
    (CLASSICAL_TRIVIAL, 1),
    (Presentation.parse(["a", "b"], ["a^2", "b^3", "(a b)^2"]), 6),
    (Presentation.parse(["a", "b"], ["a^2", "b^3", "(a b)^5"]), 60),
    (Presentation.parse(["a", "b"], ["a^2", "b^3", "(a b)^7", "[a,b]^4"]), 168),
    (Presentation.parse(["a", "b"], ["a^4", "b^2 a^-2", "b^-1 a b a"]), 8),
    (Presentation.parse(["x"], ["x^7"]), 7),
    (Presentation((), ()), 1),
]


@pytest.mark.parametrize("P,order", GROUPS)
def test_todd_coxeter_orders(P, order):
    assert todd_coxeter(P) == Finite(order)
    assert todd_coxeter(P, kernel=_coset_py) == Finite(order)


def test_todd_coxeter_infinite_exhausts():
    r = todd_coxeter(Presentation.parse(["x", "y"], ["[x,y]"]), 500)
    assert isinstance(r, Exhausted) and str(r) == "Exhausted"
    with pytest.raises(ValueError):
        todd_coxeter(CLASSICAL_TRIVIAL, 0)


def test_kernels_produce_identical_tables():
    for P, _ in GROUPS[1:5]:
        cols = [[2 * g + (0 if e > 0 else 1) for g, e in r] for r in P.relators]
        ncols = 2 * len(P.generators)
        py = _coset_py.hlt_enumerate(ncols, cols, 10**5)
        if BACKEND == "compiled":
            from lefschetz.fpgroups import _coset
            assert _coset.hlt_enumerate(ncols, cols, 10**5) == py
        assert audit_table(ncols, cols, py[0], py[1])


def test_audit_rejects_corrupt_table():
    P = GROUPS[1][0]
    cols = [[2 * g + (0 if e > 0 else 1) for g, e in r] for r in P.relators]
    n, table = _coset_py.hlt_enumerate(4, cols, 1000)
    bad = list(table)
    bad[0] = (bad[0] + 1) % n
    assert not audit_table(4, cols, n, bad)
    assert not audit_table(4, cols, n, table[:-1])


# ---------------------------------------------------------------- Tietze

def test_tietze_eliminates_single_generator():
    P = Presentation.parse(["x", "y"], ["x y^-3"])
    T = tietze_run(P)
    assert len(T.presentation.generators) == 1 and T.steps == 1 and not T.exhausted
    assert abelianization(T.presentation) == abelianization(P)


def test_tietze_idempotent_and_preserves_invariants():
    for P, order in GROUPS:
        S = tietze_simplify(P)
        assert tietze_simplify(S) == S
        assert abelianization(S) == abelianization(P)
        assert todd_coxeter(S) == Finite(order)


def test_tietze_budget():
    P = Presentation.parse(["x", "y", "z"], ["x y^-1", "y z^-1"])
    T = tietze_run(P, budget=0)
    assert T.exhausted and len(T.presentation.generators) == 3


def test_x_presentation_keeps_two_generators():
    from lefschetz.fixtures import build_scenario
    from lefschetz.scenario import build_presentation
    S = build_scenario("X")
    P = build_presentation(S, S.presentations["pi1"])
    T = tietze_simplify(P)
    assert len(T.generators) <= 2
    assert abelianization(T) == abelianization(P) == AbelianGroup(2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_xk_presentation_simplifies(k):
    P = xk_presentation(k)
    T = tietze_simplify(P)
    assert len(T.generators) < len(P.generators)
    assert abelianization(T) == abelianization(P) == AbelianGroup(2 * k)


def test_zk_presentation_abelianization():
    assert abelianization(zk_presentation(1)).is_trivial


# ---------------------------------------------------------------- certificates

def test_certify_paths():
    c = certify_trivial(CLASSICAL_TRIVIAL)
    assert c.certified and c.method == "todd-coxeter" and c.enumeration == "Finite(1)"
    assert certify_trivial(Presentation.parse(["x"], ["x^5"])).status == "nontrivial"
    ab = Presentation.parse(["x", "y"], ["[x,y]", "x^2", "y^3"])
    skip = certify_trivial(ab, AbelianGroup(0), enumerate_cosets=False)
    assert skip.method == "abelian-quotient" and skip.enumeration == "skipped"
    hard = Presentation.parse(["x", "y"], ["x^2", "y^3", "(x y)^7"])  # infinite, perfect-free
    h = certify_trivial(hard, AbelianGroup(0), max_cosets=2000)
    assert h.status == "inconclusive" and h.enumeration == "Exhausted"
    assert certify_trivial(CLASSICAL_TRIVIAL).to_dict()["abelianization"] == {"free_rank": 0, "torsion": []}


def test_visibly_abelian():
    assert visibly_abelian(Presentation.parse(["x"], []))
    assert visibly_abelian(Presentation.parse(["x", "y"], ["y x y^-1 x^-1"]))
    assert not visibly_abelian(Presentation.parse(["x", "y"], ["x y"]))


def test_listed_snf_and_small_examples():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[1, 0], [0, 1]]) == [1, 1]
    D, _, _ = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert D == [[0, 0, 0], [0, 0, 0]]
    assert todd_coxeter(Presentation.parse(["x"], ["x"])) == Finite(1)
    assert surface_presentation(0).generators == () and todd_coxeter(surface_presentation(0)) == Finite(1)
    assert surface_presentation(3).relator_strings() == [
        "b3^-1 b2^-1 b1^-1 a1 b1 a1^-1 a2 b2 a2^-1 a3 b3 a3^-1"]


def test_free_product_relator_count():
    A = Presentation.parse(["x", "y"], ["[x,y]", "x^3"])
    P = amalgamate(A, Presentation((), ()), [])
    assert len(P.relators) == len(A.relators) and P.generators == A.generators


@pytest.mark.parametrize("k", [1, 2, 3])
def test_augmented_xk_and_zk_trivial(k):
    from lefschetz.fixtures import xk_augmented_presentation
    assert abelianization(xk_augmented_presentation(k)).is_trivial
    assert abelianization(zk_presentation(k)).is_trivial


def test_adding_abelian_consequence_keeps_abelianization():
    P = xk_presentation(2)
    extra = P.relators[0] + P.relators[-1]
    assert abelianization(P.with_relators([extra])) == abelianization(P)
