"""Kostant's cascade, tau-compatible Borels and the cascade formula for c_lambda.

Root systems here are sets of integer vectors in the diagonal Cartan
coordinates of a type-A model.  A root c_a - c_b has coroot E_aa - E_bb,
so the coroot vector coincides with the root vector.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra_model import BorelShuffle, Root, Weight, superbracket
from .bw_monoid import Endotype, real_fixed_basis
from .engine import lambda_data, relate_borels, with_lift
from .errors import PreconditionError
from .linalg import nullspace, solve_particular
from .scalars import G, ZERO, ONE, as_gaussian

__all__ = [
    "RootSystemData", "CascadeResult", "CartanDecompositionData",
    "kostant_cascade", "decomposition_from_involution", "tau_compatible_borel",
    "is_tau_compatible", "c_lambda_cascade", "classify_reductive",
    "levi_roots", "type_a_root_system", "compact_root", "strict_feasible",
    "middle_indices", "hyperbolic_h_circ", "levi_cascade",
    "sample_matching_weights", "cascade_cross_check", "cascade_lift",
    "CascadeContext", "cascade_c_lambda",
]


def _inner(u, v, form):
    return sum(f * a * b for f, a, b in zip(form, u, v))


@dataclass(frozen=True)
class RootSystemData:
    roots: frozenset
    positive: frozenset
    form: tuple

    def __post_init__(self):
        for r in self.roots:
            if tuple(-x for x in r) not in self.roots:
                raise ValueError("root set is not closed under negation")
        neg = {tuple(-x for x in r) for r in self.positive}
        if self.positive & neg or (self.positive | neg) != self.roots:
            raise ValueError("inconsistent positivity")

    def inner(self, u, v):
        return _inner(u, v, self.form)


def type_a_root_system(indices, size, form, order):
    """Roots c_a - c_b for a != b in ``indices``; positive when a precedes b
    in ``order``."""
    pos_of = {a: k for k, a in enumerate(order)}
    roots, positive = set(), set()
    for a in indices:
        for b in indices:
            if a == b:
                continue
            v = [0] * size
            v[a], v[b] = 1, -1
            roots.add(tuple(v))
            if pos_of[a] < pos_of[b]:
                positive.add(tuple(v))
    return RootSystemData(frozenset(roots), frozenset(positive), tuple(form))


@dataclass
class CascadeResult:
    roots: list
    coroots: list

    def total(self, lam):
        return sum((sum((c * x for c, x in zip(h, lam)), ZERO)
                    for h in self.coroots), ZERO)


def _components(roots, rs):
    roots = list(roots)
    seen, comps = set(), []
    for r in roots:
        if r in seen:
            continue
        comp, stack = [], [r]
        seen.add(r)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in roots:
                if y not in seen and rs.inner(x, y) != 0:
                    seen.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def _highest(comp, positive):
    pos = [r for r in comp if r in positive]
    rootset = set(comp)
    tops = [b for b in pos
            if all(tuple(x + y for x, y in zip(b, a)) not in rootset for a in pos)]
    if len(tops) != 1:
        raise ValueError("component without a unique highest root")
    return tops[0]


def kostant_cascade(rs, coroot=None):
    """Strongly orthogonal cascade; components are handled lexicographically."""
    coroot = coroot or (lambda beta: beta)
    out = []
    layer = [list(rs.roots)]
    while layer:
        tops = []
        nxt = []
        for roots in layer:
            for comp in _components(roots, rs):
                beta = _highest(comp, rs.positive)
                tops.append(beta)
                rest = [a for a in comp if rs.inner(a, beta) == 0]
                if rest:
                    nxt.append(rest)
        out.extend(sorted(tops, reverse=True))
        layer = nxt
    return CascadeResult(out, [coroot(b) for b in out])


# ------------------------------------------------------- decompositions

@dataclass
class CartanDecompositionData:
    """Real split part a and compact part t of the derived diagonal Cartan.

    Both are given by bases of real coefficient vectors on E_11..E_NN
    (complex entries allowed for t, e.g. i(E_11 - E_22)).
    """
    size: int
    split: list
    compact: list = field(default_factory=list)

    @classmethod
    def compact_mode(cls, size):
        return cls(size, [])

    @classmethod
    def split_mode(cls, size, blocks=None):
        blocks = blocks or [list(range(size))]
        basis = []
        for blk in blocks:
            for j in range(len(blk) - 1):
                v = [0] * size
                v[blk[j]], v[blk[j + 1]] = 1, -1
                basis.append(tuple(v))
        return cls(size, basis)


def decomposition_from_involution(model, tau):
    """a = {h in h^R, blockwise traceless, with every root real on h}."""
    size = model.size
    fixed = real_fixed_basis(model.cartan(), tau)
    vecs = [[h.get(j, j) for j in range(size)] for h in fixed]
    blocks = [list(range(model.m)), list(range(model.m, size))]
    roots = [r.vec for r in model.roots()]
    rows_split, rows_compact = [], []
    for blk in blocks:
        if blk:
            row = [sum((v[j] for j in blk), ZERO) for v in vecs]
            rows_split += [[x.re for x in row], [x.im for x in row]]
            rows_compact += [[x.re for x in row], [x.im for x in row]]
    for r in roots:
        vals = [sum((c * v[j] for j, c in enumerate(r) if c), ZERO) for v in vecs]
        rows_split.append([x.im for x in vals])
        rows_compact.append([x.re for x in vals])
    k = len(vecs)

    def combos(rows):
        out = []
        for coeffs in nullspace(rows, k):
            h = [sum((Fraction(c) * v[j] for c, v in zip(coeffs, vecs)), ZERO)
                 for j in range(size)]
            out.append(tuple(h))
        return out

    split = [tuple(x.re for x in h) for h in combos(rows_split)]
    return CartanDecompositionData(size, split, combos(rows_compact))


def levi_roots(model, decomposition):
    """Roots vanishing on the split part a."""
    out = []
    for r in model.roots():
        if all(sum(c * h[j] for j, c in enumerate(r.vec)) == 0
               for h in decomposition.split):
            out.append(r)
    return out


def compact_root(model, tau, alpha):
    """alpha(-[e_alpha, tau(e_alpha)]) > 0 for an even root alpha."""
    e = model.root_vector(alpha)
    val = model.evaluate(Weight(alpha.vec), -superbracket(e, tau(e)))
    if not val.is_real():
        raise PreconditionError("tau(g_alpha) is not g_-alpha for %s" % alpha)
    return val.sign() > 0


def strict_feasible(rows):
    """Whether some real t satisfies row . t > 0 for every row (exact)."""
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    nvars = len(rows[0]) if rows else 0
    for var in range(nvars - 1, -1, -1):
        pos = [r for r in rows if r[var] > 0]
        neg = [r for r in rows if r[var] < 0]
        keep = [r for r in rows if r[var] == 0]
        for p in pos:
            for q in neg:
                # p_var t_var > -p_rest and q_var t_var > -q_rest
                comb = tuple(-q[var] * a + p[var] * b for a, b in zip(p, q))
                keep.append(comb)
        rows = [r[:var] for r in keep]
        rows = list(set(rows))
    return not rows


def _eval(vec, h):
    return sum((c * x for c, x in zip(vec, h)), Fraction(0))


def middle_indices(decomposition):
    """Indices on which every split vector vanishes."""
    return [a for a in range(decomposition.size)
            if all(h[a] == 0 for h in decomposition.split)]


def tau_compatible_borel(model, tau, decomposition, middle_word, h_circ):
    """Borel with Phi+ = Phi_l+ (from ``middle_word``) plus {alpha(h_circ) > 0}.

    ``middle_word`` is a shuffle word for the middle indices, taken in their
    natural order inside each block.
    """
    size, m = model.size, model.m
    h_circ = tuple(Fraction(x) for x in h_circ)
    levi = set(r.vec for r in levi_roots(model, decomposition))
    if not _in_span(h_circ, decomposition.split):
        raise PreconditionError("h_circ is not in the split part")
    for r in model.roots():
        if r.vec not in levi and _eval(r.vec, h_circ) == 0:
            raise PreconditionError("h_circ is not regular off the Levi roots")
    middle = middle_indices(decomposition)
    mids_e = [a for a in middle if a < m]
    mids_d = [a for a in middle if a >= m]
    if sorted(middle_word) != sorted("e" * len(mids_e) + "d" * len(mids_d)):
        raise PreconditionError("middle word does not fit the Levi block")
    it_e, it_d = iter(mids_e), iter(mids_d)
    mid_order = [next(it_e) if ch == "e" else next(it_d) for ch in middle_word]
    rank = {a: k for k, a in enumerate(mid_order)}
    order = sorted(range(size), key=lambda a: (-h_circ[a], rank.get(a, 0)))
    b = BorelShuffle("".join("e" if a < m else "d" for a in order))
    if b.order() != order:
        raise PreconditionError("tau-compatible order does not contain the "
                                "standard even Borel")
    model.check_borel(b)
    _check_compatible(model, tau, b, decomposition, levi)
    return b


def hyperbolic_h_circ(model, decomposition):
    """Regular h_circ for the hyperbolic realization.

    Outside the middle, the t-th index of a block is paired with its mirror;
    even pairs get values 2k and odd pairs 2k+1, so no root vanishes.
    """
    middle = set(middle_indices(decomposition))
    h = [Fraction(0)] * model.size
    for blk, offset in ((range(model.m), 0), (range(model.m, model.size), 1)):
        outer = [a for a in blk if a not in middle]
        half = len(outer) // 2
        for t in range(half):
            val = Fraction(2 * (half - t) + offset)
            h[outer[t]] = val
            h[outer[-1 - t]] = -val
    return tuple(h)


def _in_span(h, basis):
    if not basis:
        return all(x == 0 for x in h)
    rows = [list(col) for col in zip(*basis)]
    return solve_particular(rows, list(h), len(basis)) is not None


def _check_compatible(model, tau, b, decomposition, levi):
    pos = set(r.vec for r in b.positive_roots())
    upper = pos - levi
    for r in upper:
        img = tau.root(Root(r, model.m)).vec
        if img not in upper:
            raise PreconditionError("tau does not preserve the nilradical u")
    for r in pos & levi:
        rt = Root(r, model.m)
        if rt.parity == 0 and not compact_root(model, tau, rt):
            raise PreconditionError("Levi root %s is not compact; the split "
                                    "part is not maximal" % rt)
    basis = decomposition.split
    rows = [[_eval(r, h) for h in basis] for r in upper]
    if rows and (not basis or not strict_feasible(rows)):
        raise PreconditionError("no h_circ in the split part separates u")


def is_tau_compatible(model, tau, b, decomposition=None):
    """Gate used by the cascade route: True or a PreconditionError message."""
    decomposition = decomposition or decomposition_from_involution(model, tau)
    levi = set(r.vec for r in levi_roots(model, decomposition))
    try:
        _check_compatible(model, tau, b, decomposition, levi)
    except PreconditionError as exc:
        return False, str(exc)
    return True, ""


def levi_cascade(model, b, decomposition):
    """Cascade of the even Levi roots with the positive system induced by b."""
    levi = [r for r in levi_roots(model, decomposition) if r.parity == 0]
    order = b.order()
    pos_of = {a: k for k, a in enumerate(order)}
    roots = frozenset(r.vec for r in levi)
    positive = frozenset(r.vec for r in levi
                         if pos_of[r.pair()[0]] < pos_of[r.pair()[1]])
    form = [1] * model.m + [-1] * model.n
    return kostant_cascade(RootSystemData(roots, positive, tuple(form)))


def c_lambda_cascade(lam, cascade, hc_value):
    total = cascade.total(lam)
    if not total.is_integer():
        raise PreconditionError("sum of lambda over the cascade coroots is %s, "
                                "not an integer" % total)
    sign = -1 if int(total.re) % 2 else 1
    return hc_value * sign


def classify_reductive(model, tau, lam, b=None, decomposition=None,
                       center_real=None):
    """Endotype of a reductive (purely even) model through the cascade."""
    if model.n and model.m:
        raise PreconditionError("classify_reductive needs a purely even model")
    decomposition = decomposition or decomposition_from_involution(model, tau)
    if b is None:
        h = hyperbolic_h_circ(model, decomposition)
        mid = middle_indices(decomposition)
        letter = "e" if model.m else "d"
        b = tau_compatible_borel(model, tau, decomposition, letter * len(mid), h)
    ok, why = is_tau_compatible(model, tau, b, decomposition)
    if not ok:
        raise PreconditionError(why)
    target = tau.weight(lam)
    if center_real is None:
        ident = model.zero()
        for h in model.cartan():
            ident = ident + h
        fixed = real_fixed_basis([ident], tau) if model.family.value == "gl" \
            else []
        center_real = all(model.evaluate(lam, z).is_real() for z in fixed)
    if not center_real:
        return Endotype.C0
    rel = relate_borels(model, tau, b)
    lam_b = lam.permute(rel.perm)
    if not model.weights_equal(lam_b, target):
        return Endotype.C0
    cas = levi_cascade(model, b, decomposition)
    c = c_lambda_cascade(lam, cas, ONE)
    return Endotype.R0 if c.sign() > 0 else Endotype.R4


# ------------------------------------------------- matching weights

def _matching_system(model, tau, rel, chosen):
    """Real affine equations in (x, y), lambda = x + i y, for the weights with
    greedy subsequence ``chosen`` and lambda_B = conj(lambda o tau)."""
    size = model.size
    cart = model.cartan()
    rows, rhs = [], []
    inv = [0] * size
    for j, pj in enumerate(rel.perm):
        inv[pj] = j
    sigma = [ZERO] * size
    for s in chosen:
        sigma = [a + b for a, b in zip(sigma, rel.odd_sequence[s - 1].vec)]
    for i in range(size):
        img = tau(cart[i])
        coeffs = [img.get(j, j).conjugate() for j in range(size)]
        # real part: x_{inv i} - sum(a x - b y) = sigma_{inv i}
        re_row = [Fraction(0)] * (2 * size)
        im_row = [Fraction(0)] * (2 * size)
        re_row[inv[i]] += 1
        im_row[size + inv[i]] += 1
        for j, c in enumerate(coeffs):
            re_row[j] -= c.re
            re_row[size + j] += c.im
            im_row[j] += c.im
            im_row[size + j] += c.re
        rows += [re_row, im_row]
        rhs += [as_gaussian(sigma[inv[i]]).re, Fraction(0)]
    for i, alpha in enumerate(rel.odd_sequence, start=1):
        if i in chosen:
            continue
        h = model.coroot_element(alpha)
        hv = model.cartan_coordinates(h)
        moved = sum((model.evaluate(Weight(rel.odd_sequence[s - 1].vec), h)
                     for s in chosen if s < i), ZERO)
        rows.append([c.re for c in hv] + [Fraction(0)] * size)
        rows.append([Fraction(0)] * size + [c.re for c in hv])
        rhs += [moved.re, moved.im]
    # integrality on the derived torus forces a constant imaginary part per block
    for blk in (range(model.m), range(model.m, size)):
        blk = list(blk)
        for j in blk[1:]:
            row = [Fraction(0)] * (2 * size)
            row[size + j], row[size + blk[0]] = Fraction(1), Fraction(-1)
            rows.append(row)
            rhs.append(Fraction(0))
    return rows, rhs


def _integral_basis(vectors):
    out = []
    for v in vectors:
        den = math.lcm(*(Fraction(x).denominator for x in v))
        out.append([Fraction(x) * den for x in v])
    return out


def sample_matching_weights(model, tau, rel, count, rng, spread=3, tries=400):
    """Weights with lambda_B = conj(lambda o tau), integral on the derived torus.

    Each draw picks a candidate subsequence of the odd reflection chain,
    solves the linear conditions it imposes, takes a random integer point of
    the solution space and keeps it if the greedy recursion reproduces the
    subsequence.
    """
    from itertools import combinations
    size = model.size
    n_odd = len(rel.odd_sequence)
    subsets = [c for k in range(n_odd + 1)
               for c in combinations(range(1, n_odd + 1), k)]
    systems = []
    for chosen in subsets:
        rows, rhs = _matching_system(model, tau, rel, chosen)
        part = solve_particular(rows, rhs, 2 * size)
        if part is not None:
            systems.append((chosen, part, _integral_basis(nullspace(rows, 2 * size))))
    out = []
    for _ in range(tries):
        if len(out) >= count or not systems:
            break
        chosen, part, basis = rng.choice(systems)
        vec = list(part)
        for v in basis:
            k = rng.randint(-spread, spread)
            vec = [a + k * b for a, b in zip(vec, v)]
        lam = Weight([G(vec[j], vec[size + j]) for j in range(size)], model.m)
        if _subsequence(lam, rel, model) != tuple(chosen):
            continue
        diffs = [lam[j] - lam[0] for j in range(model.m)]
        diffs += [lam[j] - lam[model.m] for j in range(model.m, size)]
        if all(d.is_integer() for d in diffs):
            out.append(lam)
    return out


def _subsequence(lam, rel, model):
    from .engine import isotropic_subsequence
    return isotropic_subsequence(lam, rel, model)


def cascade_lift(model, cascade):
    """Product of exp(pi/2 (e_beta - f_beta)) over the cascade roots."""
    size = model.size
    w = [[ONE if a == b else ZERO for b in range(size)] for a in range(size)]
    for beta in cascade.roots:
        a, b = Root(beta, model.m).pair()
        w[a][a] = w[b][b] = ZERO
        w[a][b], w[b][a] = ONE, -ONE
    return w


@dataclass
class CascadeContext:
    """Everything about a tau-compatible Borel that does not depend on lambda."""
    model: object
    tau: object
    borel: BorelShuffle
    decomposition: CartanDecompositionData
    relation: object
    cascade: CascadeResult
    lifted: object

    @classmethod
    def build(cls, model, tau, b, decomposition=None):
        decomposition = decomposition or decomposition_from_involution(model, tau)
        ok, why = is_tau_compatible(model, tau, b, decomposition)
        if not ok:
            raise PreconditionError(why)
        rel = relate_borels(model, tau, b)
        cas = levi_cascade(model, b, decomposition)
        lifted = with_lift(rel, cascade_lift(model, cas), tau)
        return cls(model, tau, b, decomposition, rel, cas, lifted)


def cascade_cross_check(ctx, lam):
    """(c_lambda via the group character, c_lambda via the cascade).

    The cascade value pairs (-1)^(sum lambda(h_beta)) with the Harish-Chandra
    value computed for the cascade lift of w; the group value uses the
    default lift.
    """
    model, tau, b = ctx.model, ctx.tau, ctx.borel
    data, _ = lambda_data(model, tau, b, lam, rel=ctx.relation)
    if not data.matches:
        raise PreconditionError("lambda_B differs from conj(lambda o tau)")
    lifted, _ = lambda_data(model, tau, b, lam, rel=ctx.lifted)
    return data.c_lambda, c_lambda_cascade(lam, ctx.cascade, lifted.hc_value)


def cascade_c_lambda(ctx, lam):
    """c_lambda by the cascade formula alone."""
    data, _ = lambda_data(ctx.model, ctx.tau, ctx.borel, lam, rel=ctx.lifted)
    if not data.matches:
        raise PreconditionError("lambda_B differs from conj(lambda o tau)")
    return c_lambda_cascade(lam, ctx.cascade, data.hc_value), data
