"""Endotype computation from a highest weight, a Borel and an involution.

The pipeline for type-A models is

    relate_borels        -> even Weyl element w and isotropic roots alpha_1..alpha_k
    isotropic_subsequence -> the indices i_1 < ... < i_r that move lambda
    lambda_B             -> Ad*_w(lambda - sum alpha_{i_j})
    c_lambda_group       -> lambda(HC(D_lambda)) * lambda(w^-1 tau(w^-1))

and the endotype is read from the sign of c_lambda and the parity of r.
q(n) replaces the last step by a Clifford signature.
"""

from dataclasses import dataclass, field, replace

from .algebra_model import (
    BorelShuffle, Element, Family, ModelError, Root, Weight,
    fundamental_system, is_sl22_like, order_from_positive,
    shifted_highest_weight, sl22_partner, sl22_shift, superbracket,
)
from .bw_monoid import (
    Endotype, bw_product, real_fixed_basis, signature,
)
from .enveloping import hc_projection, straighten, evaluate_at_weight
from .errors import InvariantViolation, PreconditionError, RealityTrap
from .linalg import mat_inverse, mat_mul, rank as mat_rank
from .real_forms import tau_borel
from .scalars import G, ZERO, ONE, as_gaussian

__all__ = [
    "BorelRelation", "LambdaData", "Classification", "relate_borels",
    "isotropic_subsequence", "lambda_B", "c_lambda_group", "endotype_basic",
    "endotype_qn", "endotype_direct_sum", "endotype_realified",
    "endotype_cartan_type", "classify", "transport_highest_weight",
    "bubble_swaps", "reduced_words", "ModuleType", "Delegation", "with_lift",
    "endotype_warnings",
]


# --------------------------------------------------------------- Weyl words

def bubble_swaps(keys):
    """Adjacent swaps (positions) of a left-to-right repeated-pass bubble sort."""
    arr = list(keys)
    swaps = []
    changed = True
    while changed:
        changed = False
        for j in range(len(arr) - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                swaps.append(j)
                changed = True
    return swaps


def reduced_words(perm, limit=6):
    """Up to ``limit`` distinct sorting words for ``perm`` (bubble word first).

    A sorting word (k_1, ..., k_L) sorts the array [perm(0), ..., perm(N-1)]
    by swapping positions k_j, k_j + 1; then perm = s_{k_L} ... s_{k_1}.
    """
    first = tuple(bubble_swaps(perm))
    out = [first]
    seen = {first}

    def walk(arr, prefix):
        if len(out) >= limit:
            return
        descents = [j for j in range(len(arr) - 1) if arr[j] > arr[j + 1]]
        if not descents:
            word = tuple(prefix)
            if word not in seen:
                seen.add(word)
                out.append(word)
            return
        for j in reversed(descents):
            nxt = list(arr)
            nxt[j], nxt[j + 1] = nxt[j + 1], nxt[j]
            walk(nxt, prefix + [j])
            if len(out) >= limit:
                return

    walk(list(perm), [])
    return out


def _weyl_matrix(size, word):
    """Product S_{k_L} ... S_{k_1} with S_k = [[0, 1], [-1, 0]] at (k, k+1)."""
    mat = [[ONE if a == b else ZERO for b in range(size)] for a in range(size)]
    for k in word:
        # left-multiply by S_k: new row k = row k+1, new row k+1 = -row k
        mat[k], mat[k + 1] = mat[k + 1], [-x for x in mat[k]]
    return mat


def _underlying_perm(mat):
    size = len(mat)
    perm = [None] * size
    for b in range(size):
        rows = [a for a in range(size) if mat[a][b]]
        if len(rows) != 1:
            raise InvariantViolation("Weyl matrix is not monomial")
        perm[b] = rows[0]
    return perm


# ------------------------------------------------------------ Borel relation

@dataclass
class BorelRelation:
    """w and the isotropic roots relating a Borel b to tau(b)."""
    borel: BorelShuffle
    target_order: tuple
    perm: tuple
    w_word: tuple
    w: list
    w_inv: list
    odd_sequence: tuple
    chain: tuple
    d: list
    sl22: bool = False
    hc_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def k(self):
        return len(self.odd_sequence)

    def ad_w_inv(self, x):
        """Ad_{w^-1} x = w^-1 x w."""
        wi = _to_element(self.w_inv, x.even_dim)
        wm = _to_element(self.w, x.even_dim)
        return wi.matmul(x).matmul(wm)

    def d_diagonal(self):
        return [self.d[j][j] for j in range(len(self.d))]


def _to_element(mat, even_dim):
    return Element({(a, b): v for a, row in enumerate(mat)
                    for b, v in enumerate(row) if v}, even_dim)


def relate_borels(model, tau, b=None, word_index=0):
    """Relate the Borel ``b`` to tau(b) through odd reflections and w.

    ``word_index`` selects an alternative reduced word for w (0 is the
    bubble-sort word).
    """
    b = b or model.standard_borel()
    model.check_borel(b)
    for h in model.cartan():
        th = tau(h)
        if model.root_of(th) is not None or th.parity != 0:
            raise PreconditionError("tau does not preserve the Cartan subalgebra")
    if model.is_q:
        size = model.n
        positive = tau_borel(tau, b)
        target = order_from_positive(positive, size)
        perm = list(target)
        words = reduced_words(perm, word_index + 1)
        word = words[min(word_index, len(words) - 1)]
        base = _weyl_matrix(size, word)
        if _underlying_perm(base) != perm:
            raise InvariantViolation("reduced word does not realize the permutation")
        n = size
        w = [[ZERO] * (2 * n) for _ in range(2 * n)]
        for a in range(n):
            for c in range(n):
                w[a][c] = base[a][c]
                w[n + a][n + c] = base[a][c]
        odd, chain = (), (b.word,)
    else:
        size = model.size
        positive = tau_borel(tau, b)
        try:
            target = order_from_positive(positive, size)
        except ModelError as exc:
            raise PreconditionError(str(exc))
        m = model.m
        target_word = "".join("e" if a < m else "d" for a in target)
        std = BorelShuffle(target_word).order()
        perm = [None] * size
        for p in range(size):
            perm[std[p]] = target[p]
        # odd reflections: bubble the letters of b into target_word
        keys, counters = [], {"e": 0, "d": 0}
        targets = {"e": [], "d": []}
        for pos, ch in enumerate(target_word):
            targets[ch].append(pos)
        for ch in b.word:
            keys.append(targets[ch][counters[ch]])
            counters[ch] += 1
        swaps = bubble_swaps(keys)
        word_now = b.word
        chain = [word_now]
        odd = []
        for j in swaps:
            seq = BorelShuffle(word_now).order()
            alpha = Root.difference(seq[j], seq[j + 1], size, m)
            odd.append(alpha)
            lst = list(word_now)
            lst[j], lst[j + 1] = lst[j + 1], lst[j]
            word_now = "".join(lst)
            chain.append(word_now)
        if word_now != target_word:
            raise InvariantViolation("odd reflection chain missed the target")
        if is_sl22_like(model):
            if target_word not in ("edde", "deed"):
                raise PreconditionError("tau(b) is not one of the sl(2|2) Borels "
                                        "edde, deed")
            if odd:
                # the two gl(2|2) reflections are one sl(2|2) reflection
                if len(odd) != 2 or sl22_partner(odd[0]) != odd[1]:
                    raise InvariantViolation("unexpected sl(2|2) reflection chain")
                odd = [odd[0]]
                chain = [chain[0], chain[-1]]
        words = reduced_words(perm, word_index + 1)
        word = words[min(word_index, len(words) - 1)]
        w = _weyl_matrix(size, word)
        if _underlying_perm(w) != perm:
            raise InvariantViolation("reduced word does not realize the permutation")
        # Pi_{tau(b)} = w . (reflected Pi_b)
        moved = [Root([r.vec[perm.index(j)] for j in range(size)], m)
                 for r in fundamental_system(BorelShuffle(target_word))]
        expect = _fundamental_of_order(target, size, m)
        if moved != expect:
            raise InvariantViolation("w does not carry the reflected Borel to tau(b)")
    w_inv = [[as_gaussian(x) for x in row] for row in mat_inverse(w)]
    d = mat_mul(w_inv, tau.apply_group(w_inv))
    d = [[as_gaussian(x) for x in row] for row in d]
    for a in range(len(d)):
        for c in range(len(d)):
            if a != c and d[a][c]:
                raise InvariantViolation("w^-1 tau(w^-1) is not diagonal")
    return BorelRelation(
        borel=b, target_order=tuple(target), perm=tuple(perm), w_word=tuple(word),
        w=w, w_inv=w_inv, odd_sequence=tuple(odd), chain=tuple(chain), d=d,
        sl22=is_sl22_like(model),
    )


def with_lift(rel, w, tau):
    """The same relation with another lift ``w`` of the Weyl element."""
    if _underlying_perm(w) != list(rel.perm):
        raise InvariantViolation("lift does not realize the Weyl permutation")
    w = [[as_gaussian(x) for x in row] for row in w]
    w_inv = [[as_gaussian(x) for x in row] for row in mat_inverse(w)]
    d = [[as_gaussian(x) for x in row]
         for row in mat_mul(w_inv, tau.apply_group(w_inv))]
    if any(d[a][c] for a in range(len(d)) for c in range(len(d)) if a != c):
        raise InvariantViolation("w^-1 tau(w^-1) is not diagonal")
    return replace(rel, w=w, w_inv=w_inv, d=d, w_word=(), hc_cache={})


def _fundamental_of_order(order, size, m):
    return [Root.difference(order[i], order[i + 1], size, m)
            for i in range(len(order) - 1)]


# -------------------------------------------------------- lambda_B and c

def isotropic_subsequence(lam, rel, model):
    """Indices (1-based) i_1 < ... < i_r of the greedy recursion."""
    if rel.sl22:
        raise PreconditionError("sl(2|2)-type models use the rank rule")
    chosen = []
    for i, alpha in enumerate(rel.odd_sequence, start=1):
        h = model.coroot_element(alpha)
        moved = sum((model.evaluate(Weight(rel.odd_sequence[s - 1].vec), h)
                     for s in chosen), ZERO)
        if model.evaluate(lam, h) != moved:
            chosen.append(i)
    return tuple(chosen)


@dataclass
class LambdaData:
    subsequence: tuple
    lambda_B: Weight
    r: int
    c_lambda: G = None
    hc_value: G = None
    character: G = None
    matches: bool = False
    raising: tuple = ()
    trace: list = field(default_factory=list)


def lambda_B(lam, rel, subsequence, model=None):
    """Ad*_w(lam - sum_j alpha_{i_j})."""
    mu = lam
    for i in subsequence:
        mu = mu - rel.odd_sequence[i - 1]
    return mu.permute(rel.perm)


def _sl22_data(lam, rel, model):
    if not rel.odd_sequence:
        return (), lam.permute(rel.perm), 0, ()
    alpha1 = rel.odd_sequence[0]
    new, rank, recipe = sl22_shift(lam, alpha1, model)
    return (1,) if rank else (), new.permute(rel.perm), rank, recipe


def character_on_d(lam, rel, model):
    """lambda(w^-1 tau(w^-1)) on the diagonal matrix d, block by block."""
    diag = rel.d_diagonal()
    if model.is_q:
        blocks = [list(range(model.n))]
        coords = lambda j: lam[j]
    else:
        m = model.m
        blocks = [list(range(m)), list(range(m, model.size))]
        coords = lambda j: lam[j]
    value = ONE
    for block in blocks:
        if not block or all(diag[j] == ONE for j in block):
            continue
        det = ONE
        for j in block:
            det = det * diag[j]
        if det != ONE:
            raise InvariantViolation("a block of w^-1 tau(w^-1) has determinant %s"
                                     % det)
        base = coords(block[0])
        for j in block:
            e = coords(j) - base
            if not e.is_integer():
                raise PreconditionError(
                    "lambda is not integral on the derived torus: "
                    "coordinate difference %s is not an integer" % e)
            value = value * diag[j] ** int(e.re)
    return value


def _raising_factors(model, rel, subsequence, recipe, scales):
    def vec(alpha):
        x = model.root_vector(alpha)
        if scales and alpha in scales:
            x = x.scale(scales[alpha])
        return x
    if rel.sl22:
        return [vec(g) for g in recipe]
    return [vec(rel.odd_sequence[i - 1]) for i in subsequence]


def c_lambda_group(lam, rel, subsequence, model, tau, recipe=(), scales=None):
    """(c_lambda, HC value, character value) via the group-character route."""
    key = (tuple(subsequence), tuple(recipe),
           tuple(sorted((a.vec, v) for a, v in scales.items())) if scales else ())
    hc = rel.hc_cache.get(key)
    if hc is None:
        ups = _raising_factors(model, rel, subsequence, recipe, scales)
        if ups:
            downs = [rel.ad_w_inv(tau(x)) for x in ups]
            hc = hc_projection(straighten(ups + downs, rel.borel))
        else:
            hc = False
        rel.hc_cache[key] = hc
    hc_value = evaluate_at_weight(hc, lam) if hc is not False else ONE
    char = character_on_d(lam, rel, model)
    return hc_value * char, hc_value, char


def hc_polynomial(lam, rel, subsequence, model, tau, recipe=()):
    ups = _raising_factors(model, rel, subsequence, recipe, None)
    downs = [rel.ad_w_inv(tau(x)) for x in ups]
    return hc_projection(straighten(ups + downs, rel.borel))


def _check_psl(lam, model):
    if model.family is Family.PSL and model.weight_on_identity(lam):
        raise PreconditionError("psl weights must vanish on the identity")


def lambda_data(model, tau, b, lam, rel=None, scales=None, word_index=0):
    """All intermediate quantities for a type-A model."""
    _check_psl(lam, model)
    rel = rel or relate_borels(model, tau, b, word_index)
    if rel.sl22:
        sub, lb, r, recipe = _sl22_data(lam, rel, model)
    else:
        sub = isotropic_subsequence(lam, rel, model)
        lb = lambda_B(lam, rel, sub)
        r, recipe = len(sub), ()
    target = tau.weight(lam)
    data = LambdaData(subsequence=sub, lambda_B=lb, r=r, raising=recipe)
    data.trace.append("w word %s, permutation %s" % (list(rel.w_word), list(rel.perm)))
    data.trace.append("odd reflections %s" % " ".join(map(str, rel.odd_sequence)))
    data.trace.append("subsequence %s, r = %d" % (list(sub), r))
    data.matches = model.weights_equal(lb, target)
    if data.matches:
        c, hc, ch = c_lambda_group(lam, rel, sub, model, tau, recipe, scales)
        data.c_lambda, data.hc_value, data.character = c, hc, ch
        data.trace.append("HC value %s, character %s" % (hc, ch))
        if not c or not c.is_real():
            raise RealityTrap("c_lambda = %s is not a nonzero real number" % c)
    return data, rel


_TABLE2 = {(0, 1): Endotype.R0, (1, -1): Endotype.R2,
           (0, -1): Endotype.R4, (1, 1): Endotype.R6}


def endotype_from_table2(r, c):
    return _TABLE2[(r % 2, c.sign())]


def endotype_basic(model, tau, b, lam, **kw):
    if model.is_q:
        raise PreconditionError("use endotype_qn for q(n)")
    data, _ = lambda_data(model, tau, b, lam, **kw)
    if not data.matches:
        return Endotype.C0
    return endotype_from_table2(data.r, data.c_lambda)


# ----------------------------------------------------------------- q(n)

class _TwistedInvolution:
    """x -> Ad_{w^-1} tau(x) restricted to the odd Cartan."""

    def __init__(self, tau, rel):
        self.tau, self.rel = tau, rel

    def __call__(self, x):
        return self.rel.ad_w_inv(self.tau(x))


def qn_data(model, tau, lam, rel=None, word_index=0):
    rel = rel or relate_borels(model, tau, None, word_index)
    lam_b = lam.permute(rel.perm)
    target = tau.weight(lam)
    data = LambdaData(subsequence=(), lambda_B=lam_b, r=0)
    data.matches = model.weights_equal(lam_b, target)
    tw = _TwistedInvolution(tau, rel)
    h_odd = model.odd_cartan()

    def bval(x, y):
        return model.evaluate(lam, superbracket(x, y))

    if not data.matches:
        gram = [[bval(x, y) for y in h_odd] for x in h_odd]
        data.rank = mat_rank(gram, len(h_odd))
        data.trace.append("B_lambda rank %d" % data.rank)
        return data, rel
    c = character_on_d(lam, rel, model)
    data.c_lambda = data.character = c
    data.hc_value = ONE
    if not c or not c.is_real():
        raise RealityTrap("c_lambda = %s is not a nonzero real number" % c)
    real = real_fixed_basis(h_odd, tw)
    if len(real) != len(h_odd):
        raise InvariantViolation("tau_w fixed space of the odd Cartan has wrong size")
    gram = []
    for x in real:
        row = []
        for y in real:
            v = bval(x, y)
            if not v.is_real():
                raise InvariantViolation("B_lambda is not real on the fixed space")
            row.append(v.re)
        gram.append(row)
    data.signature = signature(gram)
    data.trace.append("signature %s, c_lambda %s" % (data.signature[:2], c))
    return data, rel


def endotype_qn(model, tau, lam, **kw):
    if not model.is_q:
        raise PreconditionError("endotype_qn needs a q(n) model")
    data, _ = qn_data(model, tau, lam, **kw)
    if not data.matches:
        return Endotype.complex(data.rank)
    p, q, _ = data.signature
    s = 0 if data.c_lambda.sign() > 0 else 4
    return Endotype.real(q - p + s)


# ------------------------------------------------------------- top level

@dataclass
class Classification:
    endotype: Endotype
    lambda_B: Weight
    r: int
    c_lambda: G
    relation: BorelRelation
    data: LambdaData


def classify(model, tau, lam, b=None, **kw):
    if model.is_q:
        if b is not None:
            model.check_borel(b)
        data, rel = qn_data(model, tau, lam, **kw)
        if not data.matches:
            e = Endotype.complex(data.rank)
        else:
            p, q, _ = data.signature
            e = Endotype.real(q - p + (0 if data.c_lambda.sign() > 0 else 4))
    else:
        data, rel = lambda_data(model, tau, b, lam, **kw)
        e = endotype_from_table2(data.r, data.c_lambda) if data.matches else Endotype.C0
    return Classification(e, data.lambda_B, data.r, data.c_lambda, rel, data)


# ------------------------------------------------------- Borel transport

def transport_highest_weight(model, lam, b_from, b_to):
    """Highest weight with respect to ``b_to`` of the module with
    ``b_from``-highest weight ``lam``, via odd reflections."""
    model.check_borel(b_from)
    model.check_borel(b_to)
    if b_from.word == b_to.word:
        return lam
    if is_sl22_like(model):
        # edde and deed are linked by the reflection at their first simple root
        seq = b_from.order()
        alpha = Root.difference(seq[0], seq[1], 4, 2)
        new, _, _ = sl22_shift(lam, alpha, model)
        return new
    targets = {"e": [], "d": []}
    for pos, ch in enumerate(b_to.word):
        targets[ch].append(pos)
    counters = {"e": 0, "d": 0}
    keys = []
    for ch in b_from.word:
        keys.append(targets[ch][counters[ch]])
        counters[ch] += 1
    word = b_from.word
    for j in bubble_swaps(keys):
        seq = BorelShuffle(word).order()
        alpha = Root.difference(seq[j], seq[j + 1], model.size, model.m)
        lam = shifted_highest_weight(lam, alpha, model)
        lst = list(word)
        lst[j], lst[j + 1] = lst[j + 1], lst[j]
        word = "".join(lst)
    return lam


# ------------------------------------------------------ composite rules

class ModuleType:
    M = "M"
    Q = "Q"


def endotype_direct_sum(parts):
    """Fold (endotype, module type) pairs of the summands of g = a + b."""
    if not parts:
        return Endotype.R0, ModuleType.M
    e, t = parts[0]
    for e2, t2 in parts[1:]:
        e = bw_product(e, e2)
        t = ModuleType.M if (t == ModuleType.Q and t2 == ModuleType.Q) else (
            ModuleType.Q if ModuleType.Q in (t, t2) else ModuleType.M)
    return e, t


def endotype_realified(has_pi_first, has_pi_second, relation):
    """Endotype for g + conj(g) acting on W' (x) W''.

    ``relation`` is "conjugate" when W'' is conj(W') or Pi conj(W'), and
    anything else otherwise.
    """
    if bool(has_pi_first) != bool(has_pi_second):
        return Endotype.C1
    if relation == "conjugate":
        return Endotype.R0
    return Endotype.C0


@dataclass(frozen=True)
class Delegation:
    """Request to classify the Levi highest-weight problem instead."""
    family: str
    levi_weight: object


def endotype_cartan_type(family, levi_weight=None, center_real=True,
                         delegate=None):
    """Closed-form rules for the Cartan-type families W, S, S~, H and P."""
    fam = family.strip().upper().replace("~", "T")
    head = fam.split("(")[0]
    if head in ("S", "ST", "STILDE"):
        return Endotype.R0
    if head == "W":
        return Endotype.R0 if center_real else Endotype.C0
    if head in ("H", "P"):
        if delegate is None:
            return Delegation(head, levi_weight)
        answer = delegate(levi_weight)
        if answer not in (Endotype.C0, Endotype.R0, Endotype.R4):
            raise InvariantViolation("delegated answer %s outside {0C,0R,4R}" % answer)
        return answer
    raise PreconditionError("unsupported Cartan-type family %r" % family)


def endotype_warnings(e, model, spec):
    """Warning-level check: 2R and 6R are expected only for unitary forms of
    gl(m|n) with m and n odd and for the q-bar forms."""
    if e not in (Endotype.R2, Endotype.R6) or model.is_q:
        return []
    kind = spec.kind.value
    if kind == "qbar":
        return []
    if kind in ("unitary", "custom") and model.m % 2 and model.n % 2:
        return []
    return ["endotype %s for %s with form %s is outside the expected list"
            % (e, model.name, spec.describe())]
