import itertools

import pytest
from hypothesis import given, strategies as st

from endotype.algebra_model import BorelShuffle, Root, build_algebra, superbracket
from endotype.real_forms import (
    InvolutionError, InvolutionSpec, Recipe, make_involution, tau_borel,
    tau_root_vector, tau_weight,
)
from endotype.scalars import G, I, ONE, ZERO
from conftest import gaussian


def unit(model, a, b, c=ONE):
    return model.unit(a, b, c)


def test_split_fixes_units():
    model = build_algebra("gl", 1, 1)
    tau = make_involution(InvolutionSpec.split(), model)
    for _, x in model.basis():
        assert tau(x) == x
    assert tau(unit(model, 0, 1, G(2, 3))) == unit(model, 0, 1, G(2, -3))


def test_unitary_gl12_images():
    model = build_algebra("gl", 1, 2)
    tau = make_involution(InvolutionSpec.unitary([ONE, I, I]), model)
    assert tau(unit(model, 0, 1)) == unit(model, 1, 0, -I)
    alpha = Root.difference(0, 1, 3, 1)
    image = tau_root_vector(tau, alpha)
    assert model.root_of(image) == Root.difference(1, 0, 3, 1)


def test_compact_su2_root_vector():
    model = build_algebra("reductive_gl", 2)
    tau = make_involution(InvolutionSpec.u(2, 0), model)
    assert tau(unit(model, 0, 1)) == unit(model, 1, 0, -ONE)


def test_qbar_swaps_blocks():
    model = build_algebra("gl", 2, 2)
    tau = make_involution(InvolutionSpec.qbar(), model)
    assert tau(unit(model, 0, 1, I)) == unit(model, 2, 3, -I)
    assert tau(unit(model, 0, 2)) == unit(model, 2, 0)
    for h in model.cartan():
        (a, b), = h.terms
        assert tau(h) == unit(model, (a + 2) % 4, (b + 2) % 4)


@pytest.mark.parametrize("spec, model, exc", [
    (InvolutionSpec.qbar(), ("gl", 1, 2), InvolutionError),
    (InvolutionSpec.unitary([ONE, G(2)]), ("gl", 1, 1), InvolutionError),
    (InvolutionSpec.unitary([ONE]), ("gl", 1, 1), InvolutionError),
    (InvolutionSpec.custom([[ONE, ONE], [ZERO, ONE]], Recipe.CONJ), ("gl", 1, 1),
     InvolutionError),
    (InvolutionSpec.custom([[ZERO, ZERO], [ZERO, ONE]], Recipe.NEG_ST), ("gl", 2, 0),
     InvolutionError),
])
def test_invalid_specs(spec, model, exc):
    with pytest.raises(exc):
        make_involution(spec, build_algebra(*model))


def test_tau_weight_examples():
    a, b = G(1, 2), G(-3, 5)
    model = build_algebra("gl", 1, 1)
    split = make_involution(InvolutionSpec.split(), model)
    assert tau_weight(split, model.weight([a, b])) == model.weight([a.conjugate(), b.conjugate()])
    compact = make_involution(InvolutionSpec.u(1, 0, 1, 0), model)
    assert tau_weight(compact, model.weight([a, b])) == model.weight(
        [-a.conjugate(), -b.conjugate()])
    model = build_algebra("gl", 1, 2)
    tau = make_involution(InvolutionSpec.u(1, 0, 2, 0), model)
    c = G(7, -1)
    assert tau.weight(model.weight([a, b, c])) == model.weight(
        [-a.conjugate(), -b.conjugate(), -c.conjugate()])


def test_tau_borel_examples():
    model = build_algebra("gl", 1, 1)
    b = BorelShuffle("ed")
    pos = frozenset(b.positive_roots())
    neg = frozenset(-r for r in pos)
    assert tau_borel(make_involution(InvolutionSpec.split(), model), b) == pos
    assert tau_borel(make_involution(InvolutionSpec.u(1, 0, 1, 0), model), b) == neg
    for n in range(2, 6):
        model = build_algebra("reductive_gl", n)
        b = model.standard_borel()
        got = tau_borel(make_involution(InvolutionSpec.u(n, 0), model), b)
        assert got == frozenset(-r for r in b.positive_roots())


def _builtin_specs(model):
    m, n = model.m, model.n
    yield InvolutionSpec.split()
    for p in range(m + 1):
        for r in range(n + 1):
            yield InvolutionSpec.u(p, m - p, r, n - r)
            yield InvolutionSpec.hyperbolic_unitary(p, m - p, r, n - r)
    if m == n:
        yield InvolutionSpec.qbar()
        yield InvolutionSpec.pebar()


SMALL = [(m, n) for m in range(0, 4) for n in range(0, 4) if 1 <= m + n <= 4]


@pytest.mark.parametrize("m, n", SMALL)
def test_builtin_forms_are_involutions(m, n):
    model = build_algebra("gl", m, n)
    basis = [x for _, x in model.basis()]
    for spec in _builtin_specs(model):
        tau = make_involution(spec, model)
        for x in basis:
            assert tau(tau(x)) == x
        for x, y in itertools.product(basis, repeat=2):
            assert tau(superbracket(x, y)) == superbracket(tau(x), tau(y))
        # root spaces are permuted
        images = {tau.root(alpha) for alpha in model.roots()}
        assert images == set(model.roots())
        for alpha in model.roots():
            assert model.root_of(tau_root_vector(tau, alpha)) == tau.root(alpha)


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_tau_antilinear(m, n):
    model = build_algebra("gl", m, n)
    for spec in _builtin_specs(model):
        tau = make_involution(spec, model)
        x = unit(model, 0, model.size - 1)
        assert tau(x.scale(I)) == tau(x).scale(-I)


@given(st.lists(gaussian, min_size=3, max_size=3), st.sampled_from(
    [InvolutionSpec.split(), InvolutionSpec.u(1, 0, 2, 0), InvolutionSpec.u(1, 0, 1, 1),
     InvolutionSpec.unitary([ONE, I, I]), InvolutionSpec.hyperbolic_unitary(1, 0, 1, 1)]))
def test_tau_weight_involutive(coeffs, spec):
    model = build_algebra("gl", 1, 2)
    tau = make_involution(spec, model)
    lam = model.weight(coeffs)
    assert tau.weight(tau.weight(lam)) == lam


def test_q2_forms():
    model = build_algebra("q", 2)
    for spec in (InvolutionSpec.split(), InvolutionSpec.unitary([ONE, ONE, I, I]),
                 InvolutionSpec.qbar()):
        tau = make_involution(spec, model)
        for _, x in model.basis():
            assert tau(tau(x)) == x


def test_describe_round_trips_through_custom():
    spec = InvolutionSpec.hyperbolic_unitary(1, 1, 0, 0)
    assert spec.describe().startswith("custom(neg-conj-supertranspose;")
    assert InvolutionSpec.u(1, 0, 0, 1).describe() == "unitary(1,0-1i)"
