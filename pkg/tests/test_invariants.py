import pytest

from lefschetz.factorization import cap_off, twisted_fiber_sum
from lefschetz.fixtures import build_W, build_W3, genus3_words
from lefschetz.fpgroups import AbelianGroup
from lefschetz.invariants import (ODD_FORM_CAVEAT, Minimality, euler_characteristic,
                                  fiber_sum_euler, fiber_sum_signature, invariant_report,
                                  minimality_evidence, report_from_numbers, signature_endo_nagami,
                                  signature_meyer)

TRIVIAL = AbelianGroup(0)


def test_report_m19_numbers():
    r = report_from_numbers(24, -16, TRIVIAL, True)
    assert (r.b1, r.b2plus, r.b2minus, r.c1sq) == (0, 3, 19, 0)
    assert r.homeo_label == "3 CP2 # 19 CP2bar"
    assert ODD_FORM_CAVEAT in r.caveats


def test_report_identities_hold_for_many_inputs():
    for e in range(2, 40):
        for sigma in range(-e, e + 1):
            for h1 in (AbelianGroup(0), AbelianGroup(2), AbelianGroup(0, (3,))):
                try:
                    r = report_from_numbers(e, sigma, h1, h1.is_trivial)
                except ValueError:
                    continue
                assert r.e == 2 - 2 * r.b1 + r.b2plus + r.b2minus
                assert r.sigma == r.b2plus - r.b2minus
                assert r.c1sq == 2 * r.e + 3 * r.sigma


def test_report_without_pi1_has_no_label():
    r = report_from_numbers(6, -6, AbelianGroup(2), False)
    assert r.homeo_label is None and r.b1 == 2 and (r.b2plus, r.b2minus) == (1, 7)
    assert any("not certified" in c for c in r.caveats)


@pytest.mark.parametrize("e,sigma,h1", [(24, -15, TRIVIAL), (2, -4, TRIVIAL), (-6, 0, TRIVIAL),
                                        (6, -6, TRIVIAL)])
def test_inconsistent_input_raises(e, sigma, h1):
    with pytest.raises(ValueError, match="inconsistent"):
        report_from_numbers(e, sigma, h1, True)


def test_fiber_sum_formulas():
    W3 = cap_off(build_W3(), 1)
    M = twisted_fiber_sum(W3, W3, genus3_words()["phi"])
    assert euler_characteristic(M) == fiber_sum_euler(euler_characteristic(W3), euler_characteristic(W3), 3)
    assert signature_endo_nagami(M) == fiber_sum_signature(-8, -8) == signature_meyer(M)
    assert (euler_characteristic(M), signature_meyer(M)) == (24, -16)


def test_minimality_and_report_from_factorization():
    W = cap_off(build_W(), 1)
    assert minimality_evidence(W) is Minimality.UNKNOWN
    r = invariant_report(W, AbelianGroup(2), False)
    assert (r.e, r.sigma, r.c1sq) == (6, -6, -6)
    W3 = cap_off(build_W3(), 1)
    M = twisted_fiber_sum(W3, W3)
    assert minimality_evidence(M) is Minimality.PROP8_DECOMPOSITION
    assert invariant_report(M, TRIVIAL, True).to_dict()["minimality"] == "Prop8Decomposition"


def test_open_factorization_rejected():
    with pytest.raises(ValueError, match="closed"):
        euler_characteristic(build_W3())


def test_listed_euler_and_labels():
    from lefschetz.core import Surface
    from lefschetz.factorization import base_factorization
    from lefschetz.fixtures import build_Wk
    assert euler_characteristic(base_factorization("empty", [], Surface(4))) == 4 - 16
    assert euler_characteristic(cap_off(build_W(), 1)) == 6
    assert signature_endo_nagami(cap_off(build_W(), 1)) == -6
    for k in range(1, 4):
        Wk = cap_off(build_Wk(k), 1)
        assert euler_characteristic(Wk) == -4 * k + 10
        r = report_from_numbers(-4 * k + 10, -6, AbelianGroup(2 * k), False)
        assert (r.b1, r.b2plus) == (2 * k, 1)
        z = report_from_numbers(6 + 8 * k, -6, TRIVIAL, True)
        assert z.homeo_label == f"{4 * k - 1} CP2 # {4 * k + 5} CP2bar"
