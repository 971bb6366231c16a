import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobcalc import fgl, pontclass as pc
from cobcalc.coeffring import CoeffPoly
from cobcalc.intlattice import IntegerLattice
from cobcalc.pseries import TruncatedSeries

U1 = ("u",)
UV = ("u", "v")


def s2(terms, order):
    return TruncatedSeries.from_terms(terms, UV, order)


# -- Phi ---------------------------------------------------------------------


def test_phi_closed_forms():
    assert pc.phi_series(fgl.additive_law(6)) == TruncatedSeries.one(UV, 6)
    assert pc.phi_series(fgl.multiplicative_law(1, 6)) == s2({(0, 0): 1, (1, 0): 1}, 6)


def test_phi_factorization_and_diagonal(miscenko8):
    phi = pc.phi_series(miscenko8)
    n = miscenko8.order
    u2 = TruncatedSeries.variable("u", UV, n)
    v2 = TruncatedSeries.variable("v", UV, n)
    ub2 = miscenko8.inverse.extend(UV)
    f_u_ubar = miscenko8.f.evaluate({"u": u2, "v": ub2})
    assert f_u_ubar.is_zero()
    assert ((miscenko8.f - f_u_ubar) - (v2 - ub2) * phi).is_zero()
    u1 = TruncatedSeries.variable("u", U1, n)
    diag = phi.evaluate({"u": u1, "v": u1})
    assert ((u1 - miscenko8.inverse) * diag - fgl.n_series(miscenko8, 2)).is_zero()


# -- delta and d ------------------------------------------------------------------


def test_delta_d_closed_forms():
    delta, d = pc.delta_d_series(fgl.additive_law(8))
    assert delta.is_zero()
    assert d == TruncatedSeries.constant(-2, UV, d.order)
    delta, d = pc.delta_d_series(fgl.multiplicative_law(1, 8))
    assert delta == TruncatedSeries.one(UV, delta.order)
    assert d == TruncatedSeries.constant(-2, UV, d.order)


def test_delta_d_symmetric_and_constant_term(miscenko8):
    delta, d = pc.delta_d_series(miscenko8)
    for s in (delta, d):
        assert s == s.rename({"u": "v", "v": "u"}).extend(UV)
    assert delta.constant_term() == fgl.alpha_table(miscenko8)[(1, 1)]
    assert d.constant_term() == CoeffPoly.const(-2)


# -- b series ------------------------------------------------------------------------


def test_b_closed_forms():
    assert pc.b_series(fgl.additive_law(12)).b == \
        s2({(1, 0): 1, (0, 1): 1}, 12)
    assert pc.b_series(fgl.multiplicative_law(1, 12)).b == \
        s2({(1, 0): 1, (0, 1): 1, (1, 1): 1}, 12)


def test_b_unit_and_symmetry(miscenko8):
    addition = pc.b_series(miscenko8)
    b = addition.b
    at_zero = b.evaluate({"u": TruncatedSeries.variable("u", U1, b.order),
                          "v": TruncatedSeries.zero(U1, b.order)})
    assert at_zero == TruncatedSeries.variable("u", U1, b.order)
    assert b == b.rename({"u": "v", "v": "u"}).extend(UV)


def test_beta_table_properties(miscenko8):
    addition = pc.b_series(miscenko8)
    table = fgl.alpha_table(miscenko8)
    assert addition.beta[(1, 1)] == table[(1, 1)]
    for (k, l), c in addition.beta.items():
        assert addition.beta[(l, k)] == c
        assert c.is_homogeneous(k + l - 1)


def test_line_bundle_reconstruction(miscenko8):
    # with s_(k-1)(u) = u^k the addition formula is literally the b series
    addition = pc.b_series(miscenko8)
    n = addition.b.order
    rebuilt = (TruncatedSeries.variable("u", UV, n)
               + TruncatedSeries.variable("v", UV, n))
    for (k, l), c in addition.beta.items():
        rebuilt = rebuilt + TruncatedSeries.from_terms({(k, l): c}, UV, n)
    assert rebuilt == addition.b


def test_two_series_of_f_is_f_times_a_of_f(miscenko8):
    # [f(u,v)]_2 = f(u,v) a(f(u,v))
    two = fgl.n_series(miscenko8, 2)
    lhs = two.evaluate({"u": miscenko8.f})
    rhs = miscenko8.f * fgl.a_series(miscenko8).evaluate({"u": miscenko8.f})
    assert (lhs - rhs).is_zero()


# -- gamma and the one-sided series ----------------------------------------------------


def test_gamma_closed_forms():
    assert pc.gamma_line(fgl.additive_law(6)) == \
        TruncatedSeries.constant(-1, ("c",), 5)
    assert pc.gamma_line(fgl.multiplicative_law(1, 6)) == \
        TruncatedSeries.from_terms({(0,): -1, (1,): -1}, ("c",), 5)


def test_gamma_leading_term(miscenko8):
    for law in (miscenko8, fgl.multiplicative_law(-2, 6)):
        assert pc.gamma_line(law).constant_term() == CoeffPoly.const(-1)


def test_cor63_additive_is_u_minus_v():
    # no alpha terms: u - v; equal to b = u + v only modulo (2v)
    got = pc.cor63_series(fgl.additive_law(8))
    assert got == s2({(1, 0): 1, (0, 1): -1}, got.order)


def test_cor63_closed_form_multiplicative():
    got = pc.cor63_series(fgl.multiplicative_law(1, 8))
    # u - v - (u + v + uv) v
    expected = s2({(1, 0): 1, (0, 1): -1, (1, 1): -1, (0, 2): -1, (1, 2): -1},
                  got.order)
    assert got == expected


def test_cor63_equals_raw_alpha_sum(miscenko8):
    table = fgl.alpha_table(miscenko8)
    n = miscenko8.order
    f_pow = {1: miscenko8.f}
    for k in range(2, n):
        f_pow[k] = f_pow[k - 1] * miscenko8.f
    raw = (TruncatedSeries.variable("u", UV, n)
           - TruncatedSeries.variable("v", UV, n))
    for (i, j), c in sorted(table.items()):
        raw = raw - f_pow[i + j - 1].times_monomial((0, 1), c)
    got = pc.cor63_series(miscenko8)
    assert (raw - got).is_zero()


# -- integer lattice ----------------------------------------------------------------------


def test_lattice_reduction_canonical():
    # relations 2u + u^2, 2u^2 + u^3, 2u^3 in columns ordered u^3, u^2, u
    rows = [{2: 2, 1: 1}, {1: 2, 0: 1}, {0: 2}]
    lat = IntegerLattice(rows, 3)
    assert lat.reduce({1: 1}) == {2: -2}          # u^2 -> -2u
    assert lat.contains({2: 2, 1: 1})
    assert not lat.contains({2: 1})
    vec = lat.reduce({0: 1, 1: 1, 2: 5})
    assert lat.reduce(vec) == vec                 # idempotent


# -- quotient ring -----------------------------------------------------------------------


def test_reduce_examples_multiplicative(mult14):
    ring = pc.QuotientRingA(mult14, UV, 12)
    u_sq = s2({(2, 0): 1}, 12)
    assert ring.reduce(u_sq) == s2({(1, 0): -2}, 12)
    member = ring.two_series("u") * (TruncatedSeries.one(UV, 12)
                                     + TruncatedSeries.variable("v", UV, 12))
    assert ring.is_zero(member)
    assert ring.is_zero(ring.two_series("u"))
    assert ring.is_zero(ring.two_series("v"))


def test_reduce_example_additive(additive12):
    ring = pc.QuotientRingA(additive12, UV, 12)
    s = s2({(1, 0): 2, (1, 1): 3}, 12)
    assert ring.reduce(s) == s2({(1, 1): 1}, 12)


def test_reduce_rejects_non_integral_input(mult14):
    ring = pc.QuotientRingA(mult14, UV, 12)
    with pytest.raises(pc.NonIntegralLaw):
        ring.reduce(s2({(1, 0): Fraction(1, 2)}, 12))


def test_quotient_ring_rejects_rational_law():
    with pytest.raises(pc.NonIntegralLaw):
        pc.QuotientRingA(fgl.multiplicative_law(Fraction(1, 2), 8), UV, 8)
    with pytest.raises(pc.NonIntegralLaw):
        pc.QuotientRingA(fgl.miscenko_law(6), UV, 6)


def test_u_equals_ubar_in_quotient(mult14):
    ring = pc.QuotientRingA(mult14, UV, 12)
    u2 = TruncatedSeries.variable("u", UV, mult14.order)
    assert ring.is_zero(u2 - mult14.inverse.extend(UV))


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-9, 9), max_size=5))
def test_reduce_idempotent_and_kills_ideal(sparse):
    law = fgl.multiplicative_law(1, 8)
    ring = pc.QuotientRingA(law, UV, 8)
    x = TruncatedSeries.from_terms(sparse, UV, 8)
    reduced = ring.reduce(x)
    assert ring.reduce(reduced) == reduced
    assert ring.is_zero(x * ring.two_series("u"))
    assert ring.is_zero((x - reduced))


def test_gamma_squares_to_one_mod_c2(mult14):
    gamma = pc.gamma_line(mult14)
    ring = pc.QuotientRingA(mult14, ("c",), 8)
    sq = gamma * gamma
    one = TruncatedSeries.one(("c",), sq.order)
    assert ring.is_zero(sq - one)


# -- identity suites ---------------------------------------------------------------------


def test_suite_names_normalize():
    assert pc.normalize_suite_name("lemma6.1") == "lemma61"
    assert pc.normalize_suite_name("Thm6.6-in-A") == "thm66_in_A"
    assert pc.normalize_suite_name("in-a") == "in_A"
    with pytest.raises(fgl.LawError):
        pc.normalize_suite_name("lemma99")


def test_exact_suite_miscenko():
    rows = pc.verify_identity_suite("miscenko", "exact", 8)
    assert rows and all(r.passed for r in rows)
    assert {r.identity for r in rows} >= {
        "lemma61", "phi_factorization", "phi_diagonal",
        "two_series_hom", "chained_phi"}


def test_in_a_suite_multiplicative():
    rows = pc.verify_identity_suite("mult:1", "in_A", 10)
    assert rows and all(r.passed for r in rows)
    assert {r.identity for r in rows} == {
        "u_equals_ubar_in_A", "v_equals_vbar_in_A",
        "lemma62_delta_to_d_in_A", "lemma62_uv_shift_in_A",
        "a_transfer_in_A", "phi_a_delta_in_A", "cor63_equals_b_in_A",
        "assoc_b_in_A"}


def test_in_a_suite_additive():
    rows = pc.verify_identity_suite("additive", "in_A", 10)
    assert rows and all(r.passed for r in rows)


def test_in_a_suite_refuses_rational_beta():
    with pytest.raises(pc.NonIntegralLaw):
        pc.verify_identity_suite("mult:1/2", "lemma62", 8)


def test_suite_detects_mutation():
    law = fgl.mutate_alpha(fgl.miscenko_law(6), 1, 1, 1)
    rows = pc.verify_identity_suite(law, "all", 6)
    failed = {r.identity for r in rows if not r.passed}
    assert "associativity" in failed
    assert "lemma61" in failed


# -- Whitney signs ----------------------------------------------------------------------


def test_whitney_examples_from_low_dimensions():
    assert pc.whitney_sign_formula(1, 1, 1) == [(1, 0, 1), (0, 1, -1)]
    assert pc.whitney_sign_formula(2, 2, 2) == [(2, 0, 1), (1, 1, -1), (0, 2, 1)]
    assert pc.whitney_sign_formula(3, 2, 0) == [(0, 0, 1)]
    with pytest.raises(ValueError):
        pc.whitney_sign_formula(2, 2, 5)


def test_whitney_signs_match_direct_exponent():
    for n1 in range(7):
        for n2 in range(7):
            for k in range(n1 + n2 + 1):
                terms = pc.whitney_sign_formula(n1, n2, k)
                assert sorted(k1 for k1, _, _ in terms) == sorted(
                    k1 for k1 in range(n1 + 1) if 0 <= k - k1 <= n2)
                for k1, k2, sign in terms:
                    assert sign == (-1) ** ((n1 - k1) * k2)


def test_even_grade_decompositions_are_unsigned():
    # both grades even forces exponent (n1-k1)*k2 even: no signs survive,
    # the even-class addition formula has plain coefficients
    for n1 in range(7):
        for n2 in range(7):
            for k in range(0, n1 + n2 + 1, 2):
                for k1, k2, sign in pc.whitney_sign_formula(n1, n2, k):
                    if k1 % 2 == 0 and k2 % 2 == 0:
                        assert sign == 1


def test_stability_collapse_and_parity():
    for n1 in range(1, 7):
        for k in range(n1 + 1):
            assert pc.stability_surviving_terms(n1, k) == [(k, 0, 1)]
    for k in range(1, 9):
        assert pc.parity_sign(k) == (-1) ** k
        if k % 2 == 1:
            assert pc.parity_sign(k) != 1


# -- mutation sensitivity of reductions (guards vacuous passes) ---------------------------


def test_random_elements_do_not_reduce_to_zero():
    # the reduction must not be trivially zero on everything
    law = fgl.multiplicative_law(1, 8)
    ring = pc.QuotientRingA(law, UV, 8)
    rng = random.Random(7)
    nonzero = 0
    for _ in range(50):
        terms = {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)
                 for _ in range(3)}
        if ring.reduce(TruncatedSeries.from_terms(terms, UV, 8)).is_zero():
            continue
        nonzero += 1
    assert nonzero > 25
