import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from endotype.algebra_model import BorelShuffle, Root, build_algebra
from endotype.bw_monoid import Endotype
from endotype.cascade import sample_matching_weights
from endotype.engine import (
    Delegation, ModuleType, classify, endotype_basic, endotype_cartan_type,
    endotype_direct_sum, endotype_qn, endotype_realified, endotype_warnings,
    isotropic_subsequence, lambda_B, lambda_data, reduced_words, relate_borels,
    transport_highest_weight,
)
from endotype.enveloping import CartanPolynomial
from endotype.engine import hc_polynomial
from endotype.errors import PreconditionError
from endotype.real_forms import InvolutionSpec, make_involution
from endotype.scalars import G, I, ONE, ZERO
from conftest import random_gaussian, small_fraction

F = Fraction


def setup(family, m, n, spec):
    model = build_algebra(family, m, n)
    return model, make_involution(spec, model)


def e_minus_d(a, b, size, m):
    return Root.difference(a, b, size, m)


# ------------------------------------------------------------- relate_borels

def test_relation_gl11_split():
    model, tau = setup("gl", 1, 1, InvolutionSpec.split())
    rel = relate_borels(model, tau, BorelShuffle("ed"))
    assert rel.perm == (0, 1) and rel.odd_sequence == ()


def test_relation_gl11_compact():
    model, tau = setup("gl", 1, 1, InvolutionSpec.u(1, 0, 1, 0))
    rel = relate_borels(model, tau, BorelShuffle("ed"))
    assert rel.perm == (0, 1)
    assert rel.odd_sequence == (e_minus_d(0, 1, 2, 1),)


def test_relation_gl12_compact():
    model, tau = setup("gl", 1, 2, InvolutionSpec.u(1, 0, 2, 0))
    rel = relate_borels(model, tau, BorelShuffle("edd"))
    assert rel.perm == (0, 2, 1)
    assert rel.odd_sequence == (e_minus_d(0, 1, 3, 1), e_minus_d(0, 2, 3, 1))
    # Ad_{w^-1} tau(e_alpha) for the two odd roots
    e1, e2 = model.unit(0, 1), model.unit(0, 2)
    assert rel.ad_w_inv(tau(e1)) == model.unit(2, 0, -I)
    assert rel.ad_w_inv(tau(e2)) == model.unit(1, 0, I)


def test_relation_su_n_longest_element():
    for n in range(2, 6):
        model, tau = setup("reductive_gl", n, 0, InvolutionSpec.u(n, 0))
        rel = relate_borels(model, tau)
        assert rel.perm == tuple(reversed(range(n)))
        assert rel.odd_sequence == ()


def test_relation_rejects_cartan_breaking_form():
    # conjugation by a non-monomial matrix does not fix the diagonal Cartan
    spec = InvolutionSpec.custom([[ONE, ONE], [ZERO, -ONE]], "conj")
    model = build_algebra("reductive_gl", 2)
    with pytest.raises(Exception):
        relate_borels(model, make_involution(spec, model))


# -------------------------------------------------------------- subsequences

def test_subsequence_examples():
    model, tau = setup("gl", 1, 1, InvolutionSpec.split())
    rel = relate_borels(model, tau)
    assert isotropic_subsequence(model.weight([2, 5]), rel, model) == ()
    model, tau = setup("gl", 1, 1, InvolutionSpec.u(1, 0, 1, 0))
    rel = relate_borels(model, tau)
    assert isotropic_subsequence(model.weight([2, 5]), rel, model) == (1,)
    assert isotropic_subsequence(model.weight([2, -2]), rel, model) == ()
    model, tau = setup("gl", 1, 2, InvolutionSpec.u(1, 0, 2, 0))
    rel = relate_borels(model, tau)
    assert isotropic_subsequence(model.weight([3, 1, 0]), rel, model) == (1, 2)


@given(small_fraction, small_fraction, small_fraction)
def test_lambda_b_gl12_cases(a1, b1, b2):
    model, tau = setup("gl", 1, 2, InvolutionSpec.u(1, 0, 2, 0))
    rel = relate_borels(model, tau)
    lam = model.weight([a1, b1, b2])
    sub = isotropic_subsequence(lam, rel, model)
    got = lambda_B(lam, rel, sub)
    one = ONE
    if a1 + b1 != 0 and a1 + b2 != 1:
        want = [a1 - 2, b2 + 1, b1 + 1]
    elif a1 + b1 != 0:
        want = [a1 - 1, b2, b1 + 1]
    elif a1 + b2 != 0:
        want = [a1 - 1, b2 + 1, b1]
    else:
        want = [a1, b2, b1]
    assert got == model.weight([G(x) * one for x in want])


def test_lambda_b_gl11_and_su_n():
    model, tau = setup("gl", 1, 1, InvolutionSpec.u(1, 0, 1, 0))
    rel = relate_borels(model, tau)
    lam = model.weight([G(0, 3), G(0, -3)])
    assert lambda_B(lam, rel, isotropic_subsequence(lam, rel, model)) == lam
    model, tau = setup("reductive_gl", 4, 0, InvolutionSpec.u(4, 0))
    rel = relate_borels(model, tau)
    lam = model.weight([5, 3, 2, 0])
    assert lambda_B(lam, rel, ()) == model.weight([0, 2, 3, 5])


# ----------------------------------------------------------------- c_lambda

def test_c_lambda_split_is_one(rng):
    model, tau = setup("gl", 1, 1, InvolutionSpec.split())
    for _ in range(20):
        lam = model.weight([G(random_gaussian(rng).re), G(random_gaussian(rng).re)])
        res = classify(model, tau, lam)
        assert res.c_lambda == ONE and res.endotype is Endotype.R0


def gl11_case_two(alpha, beta):
    return [G(F(1, 2), alpha), G(F(-1, 2), beta)]


@given(small_fraction, small_fraction)
def test_c_lambda_gl11_compact(alpha, beta):
    model, tau = setup("gl", 1, 1, InvolutionSpec.u(1, 0, 1, 0))
    lam = model.weight(gl11_case_two(alpha, beta))
    res = classify(model, tau, lam)
    if alpha + beta == 0:
        # a + b = 0 lands in the r = 0 branch with purely imaginary a
        assert res.endotype is Endotype.C0
        return
    assert res.r == 1 and res.c_lambda == G(alpha + beta)
    assert res.endotype is (Endotype.R6 if alpha + beta > 0 else Endotype.R2)


def test_gl11_other_realization_flips():
    model, tau = setup("gl", 1, 1, InvolutionSpec.unitary([ONE, -I]))
    res = classify(model, tau, model.weight(gl11_case_two(1, 2)))
    assert res.endotype is Endotype.R2


@given(small_fraction, st.integers(-1, 6), small_fraction)
def test_c_lambda_gl12_compact(alpha, twice_re_b1, im_b1):
    model, tau = setup("gl", 1, 2, InvolutionSpec.u(1, 0, 2, 0))
    b1 = G(F(twice_re_b1, 2), im_b1)
    a1 = G(1, alpha)
    lam = model.weight([a1, b1, -ONE - b1.conjugate()])
    res = classify(model, tau, lam)
    z = a1 + b1
    assert res.r == 2
    assert res.c_lambda == G((-1) ** (twice_re_b1 + 1)) * (-(z * z.conjugate()))
    assert res.endotype is (Endotype.R0 if twice_re_b1 % 2 == 0 else Endotype.R4)


def test_gl12_hc_polynomial():
    model, tau = setup("gl", 1, 2, InvolutionSpec.u(1, 0, 2, 0))
    rel = relate_borels(model, tau)
    poly = hc_polynomial(model.weight([3, 1, 0]), rel, (1, 2), model, tau)
    assert poly == CartanPolynomial.linear([1, 1, 0]) * CartanPolynomial.linear([1, 0, 1], -1)


def test_gl12_case_ii_and_iii():
    model, tau = setup("gl", 1, 2, InvolutionSpec.u(1, 0, 2, 0))
    for alpha in (0, 2, F(-3, 2)):
        lam = model.weight([G(0, alpha), G(0, -alpha), G(0, -alpha)])
        res = classify(model, tau, lam)
        assert (res.endotype, res.r) == (Endotype.R0, 0)
    assert classify(model, tau, model.weight([3, 1, 0])).endotype is Endotype.C0


# ------------------------------------------------------------------ endotypes

def test_endotype_basic_examples():
    model, tau = setup("sl", 2, 0, InvolutionSpec.u(2, 0))
    assert endotype_basic(model, tau, None, model.weight([1, 0])) is Endotype.R4
    # on gl(2) the same weight has a non-real central character
    model, tau = setup("reductive_gl", 2, 0, InvolutionSpec.u(2, 0))
    assert endotype_basic(model, tau, None, model.weight([1, 0])) is Endotype.C0
    model, tau = setup("gl", 1, 1, InvolutionSpec.u(1, 0, 1, 0))
    lam = model.weight([G(F(1, 2), 1), G(F(-1, 2), 2)])
    assert endotype_basic(model, tau, None, lam) is Endotype.R6
    with pytest.raises(PreconditionError):
        endotype_basic(*setup("q", 1, 1, InvolutionSpec.split()), None,
                       build_algebra("q", 1).weight([1]))


def test_endotype_qn_examples():
    model, tau = setup("q", 1, 1, InvolutionSpec.split())
    assert endotype_qn(model, tau, model.weight([1])) is Endotype.R7
    assert endotype_qn(model, tau, model.weight([-1])) is Endotype.R1
    assert endotype_qn(model, tau, model.weight([G(0, 1)])) is Endotype.C1
    model, tau = setup("q", 2, 2, InvolutionSpec.split())
    # B_lambda = diag(2, 4): signature (2, 0), so q - p = -2
    assert endotype_qn(model, tau, model.weight([1, 2])) is Endotype.R6
    with pytest.raises(PreconditionError):
        endotype_qn(*setup("gl", 1, 1, InvolutionSpec.split()),
                    build_algebra("gl", 1, 1).weight([1, 1]))


def test_composite_rules():
    M, Q = ModuleType.M, ModuleType.Q
    assert endotype_direct_sum([(Endotype.R0, M), (Endotype.R4, M)]) == (Endotype.R4, M)
    assert endotype_direct_sum([(Endotype.R1, Q), (Endotype.R7, Q)]) == (Endotype.R0, M)
    assert endotype_direct_sum([(Endotype.R2, M), (Endotype.R0, M)]) == (Endotype.R2, M)
    assert endotype_realified(False, False, "conjugate") is Endotype.R0
    assert endotype_realified(True, False, "conjugate") is Endotype.C1
    assert endotype_realified(False, True, "unrelated") is Endotype.C1
    assert endotype_realified(False, False, "unrelated") is Endotype.C0


def test_cartan_type_rules():
    assert endotype_cartan_type("S(3)") is Endotype.R0
    assert endotype_cartan_type("S~(4)") is Endotype.R0
    assert endotype_cartan_type("W(2)", center_real=True) is Endotype.R0
    assert endotype_cartan_type("W(2)", center_real=False) is Endotype.C0
    assert isinstance(endotype_cartan_type("P(2)", levi_weight=(1, 0)), Delegation)
    assert endotype_cartan_type("P(2)", (1, 0), delegate=lambda w: Endotype.R4) is Endotype.R4
    with pytest.raises(PreconditionError):
        endotype_cartan_type("G(3)")
    with pytest.raises(Exception):
        endotype_cartan_type("H(4)", (0,), delegate=lambda w: Endotype.R2)


def test_psl_requires_traceless_weight():
    model, tau = setup("psl", 2, 2, InvolutionSpec.split())
    with pytest.raises(PreconditionError):
        classify(model, tau, model.weight([1, 0, 0, 0]))


def test_non_integral_character_rejected():
    model, tau = setup("reductive_gl", 2, 0, InvolutionSpec.u(2, 0))
    with pytest.raises(PreconditionError):
        classify(model, tau, model.weight([F(1, 4), F(-1, 4)]))


def test_warnings():
    model, tau = setup("gl", 2, 2, InvolutionSpec.split())
    assert endotype_warnings(Endotype.R2, model, InvolutionSpec.split())
    assert not endotype_warnings(Endotype.R2, model, InvolutionSpec.qbar())
    assert not endotype_warnings(Endotype.R4, model, InvolutionSpec.split())
    odd = build_algebra("gl", 1, 1)
    assert not endotype_warnings(Endotype.R6, odd, InvolutionSpec.u(1, 0, 1, 0))


# ----------------------------------------------------------------- properties

FORMS_12 = [InvolutionSpec.split(), InvolutionSpec.u(1, 0, 2, 0), InvolutionSpec.u(1, 0, 1, 1),
            InvolutionSpec.u(0, 1, 2, 0), InvolutionSpec.hyperbolic_unitary(1, 0, 1, 1)]
FORMS_22 = [InvolutionSpec.split(), InvolutionSpec.u(2, 0, 2, 0), InvolutionSpec.u(1, 1, 2, 0),
            InvolutionSpec.u(1, 1, 1, 1), InvolutionSpec.hyperbolic_unitary(1, 1, 1, 1),
            InvolutionSpec.qbar(), InvolutionSpec.pebar()]


def _words(m, n):
    for pos in itertools.combinations(range(m + n), m):
        yield "".join("e" if k in pos else "d" for k in range(m + n))


def _sl22_grid(model):
    """Small integral weights plus purely imaginary shifts of the outer slots.

    The sampler does not cover the sl(2|2) rank recipe, so a grid is used."""
    for v in itertools.product(range(-1, 2), repeat=4):
        for im in (0, 1):
            yield model.weight([G(x, im * (k == 0) - im * (k == 3)) for k, x in enumerate(v)])


def _weights(model, tau, rng, count, b=None):
    rel = relate_borels(model, tau, b)
    if rel.sl22:
        return list(_sl22_grid(model))
    out = sample_matching_weights(model, tau, rel, count // 2, rng)
    while len(out) < count:
        out.append(model.weight([G(rng.randint(-3, 3), rng.randint(-2, 2))
                                 for _ in range(model.size)]))
    return out


def borel_independence(family, m, n, specs, rng, count=30):
    """(checked, failures) over all shuffle Borels and the given forms."""
    model = build_algebra(family, m, n)
    words = (["edde", "deed"] if (family in ("sl", "psl") and (m, n) == (2, 2))
             else list(_words(m, n)))
    base = BorelShuffle(words[0])
    failures, checked = [], 0
    for spec in specs:
        tau = make_involution(spec, model)
        for lam in _weights(model, tau, rng, count, base):
            if family == "psl":
                lam = lam - model.str_vector().scale(model.weight_on_identity(lam) / 4)
            ref = classify(model, tau, lam, base).endotype
            for word in words[1:]:
                b = BorelShuffle(word)
                mu = transport_highest_weight(model, lam, base, b)
                got = classify(model, tau, mu, b).endotype
                checked += 1
                if got is not ref:
                    failures.append((spec.describe(), lam, word, ref, got))
    return checked, failures


@pytest.mark.parametrize("family, m, n, specs", [
    ("gl", 1, 2, FORMS_12), ("gl", 2, 2, FORMS_22), ("sl", 2, 2, FORMS_22),
])
def test_borel_independence(family, m, n, specs, rng):
    checked, failures = borel_independence(family, m, n, specs, rng)
    assert checked and not failures, failures[:3]


def test_orbit_symmetry(rng):
    for spec in FORMS_12:
        model, tau = setup("gl", 1, 2, spec)
        rel = relate_borels(model, tau)
        for lam in _weights(model, tau, rng, 20):
            data, _ = lambda_data(model, tau, None, lam, rel=rel)
            partner = tau.weight(data.lambda_B)
            back, _ = lambda_data(model, tau, None, partner, rel=rel)
            assert model.weights_equal(back.lambda_B, tau.weight(lam))


def _diagonal_units(rel):
    diag = rel.d_diagonal()
    for a, row in enumerate(rel.d):
        for b, v in enumerate(row):
            if a != b:
                assert not v
    return diag


@pytest.mark.parametrize("m, n, count", [(1, 1, 10), (1, 2, 10), (2, 1, 10), (2, 2, 10),
                                         (1, 3, 10), (3, 2, 3)])
def test_reality_and_torus_element(m, n, count, rng):
    model = build_algebra("gl", m, n)
    specs = [InvolutionSpec.split()]
    specs += [InvolutionSpec.u(p, m - p, r, n - r) for p in range(m + 1) for r in range(n + 1)]
    for spec in specs:
        tau = make_involution(spec, model)
        rel = relate_borels(model, tau)
        assert set(_diagonal_units(rel)) <= {ONE, -ONE, I, -I}
        for lam in sample_matching_weights(model, tau, rel, count, rng):
            res = classify(model, tau, lam)    # raises RealityTrap on failure
            assert res.c_lambda.is_real() and res.c_lambda
            assert res.endotype in (Endotype.R0, Endotype.R2, Endotype.R4,
                                    Endotype.R6, Endotype.C0)


@pytest.mark.parametrize("m, n, spec", [
    (1, 2, InvolutionSpec.u(1, 0, 2, 0)), (2, 2, InvolutionSpec.u(2, 0, 1, 1)),
    (2, 1, InvolutionSpec.u(1, 1, 1, 0)), (1, 1, InvolutionSpec.u(1, 0, 1, 0)),
])
def test_scaling_invariance(m, n, spec, rng):
    model, tau = setup("gl", m, n, spec)
    rel = relate_borels(model, tau)
    for lam in sample_matching_weights(model, tau, rel, 10, rng):
        base, _ = lambda_data(model, tau, None, lam, rel=rel)
        for _ in range(3):
            scales = {}
            for alpha in rel.odd_sequence:
                z = ZERO
                while not z:
                    z = random_gaussian(rng, 3)
                scales[alpha] = z
            scaled, _ = lambda_data(model, tau, None, lam, rel=rel, scales=scales)
            assert scaled.c_lambda.sign() == base.c_lambda.sign()


@pytest.mark.parametrize("m, n, spec", [
    (3, 0, InvolutionSpec.u(3, 0)), (4, 0, InvolutionSpec.u(4, 0)),
    (2, 2, InvolutionSpec.u(2, 0, 2, 0)), (3, 1, InvolutionSpec.u(3, 0, 1, 0)),
    (1, 3, InvolutionSpec.u(1, 0, 2, 1)),
])
def test_alternative_reduced_words(m, n, spec, rng):
    family = "reductive_gl" if n == 0 else "gl"
    model, tau = setup(family, m, n, spec)
    base_rel = relate_borels(model, tau)
    words = reduced_words(base_rel.perm)
    assert len(words) >= min(5, 2)
    weights = sample_matching_weights(model, tau, base_rel, 10, rng)
    for index in range(1, min(6, len(words))):
        rel = relate_borels(model, tau, word_index=index)
        for lam in weights:
            a = classify(model, tau, lam).endotype
            b = classify(model, tau, lam, rel=rel).endotype
            assert a is b
