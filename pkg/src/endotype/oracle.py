"""Brute-force verifier built from explicit matrix modules.

Modules are written down as matrices over Q(i): Gelfand-Tsetlin modules
for gl(n), Kac modules for gl(m|n) with their irreducible quotients, and a
few hand-made q(n) modules.  The symmetry datum is then read off from the
solution spaces of the intertwiner equations, without calling the engine.
"""

from dataclasses import dataclass, field
from itertools import product

from .algebra_model import Element, Weight, build_algebra, superbracket
from .bw_monoid import (
    B_MINUS, B_PLUS, PI, PIB_MINUS, PIB_PLUS, SplitType, SymmetryDatum,
    report, table1_lookup,
)
from .errors import InvariantViolation
from .linalg import Echelon, solve_particular, sparse_nullspace
from .real_forms import InvolutionSpec, make_involution
from .scalars import G, ONE, ZERO, as_gaussian

__all__ = [
    "ExplicitModule", "OracleResult", "CatalogEntry", "build_module", "gl_irrep",
    "kac_module", "irreducible_quotient", "commutant", "antilinear_intertwiners",
    "symmetry_datum_bruteforce", "oracle_endotype", "catalog",
]


# ----------------------------------------------------------- matrices

def _zero(d):
    return [[ZERO] * d for _ in range(d)]


def _mul(a, b):
    d = len(a)
    out = _zero(d)
    for i in range(d):
        row = [(k, x) for k, x in enumerate(a[i]) if x]
        if not row:
            continue
        oi = out[i]
        for k, x in row:
            bk = b[k]
            for j in range(d):
                if bk[j]:
                    oi[j] = oi[j] + x * bk[j]
    return out


def _add(a, b, s=ONE):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _scale(a, c):
    return [[x * c for x in row] for row in a]


def _conj(a):
    return [[x.conjugate() for x in row] for row in a]


def _is_zero(a):
    return not any(x for row in a for x in row)


# ------------------------------------------------------------ modules

@dataclass
class ExplicitModule:
    """Matrices for every basis element of ``model`` on C^{even|odd}.

    Basis vectors 0..even-1 are even and the rest odd.
    """
    model: object
    even_dim: int
    odd_dim: int
    action: list
    label: str = ""
    weight: object = None

    @property
    def dim(self):
        return self.even_dim + self.odd_dim

    def parity_of_index(self, k):
        return 0 if k < self.even_dim else 1

    def rho(self, x):
        out = _zero(self.dim)
        for c, mat in zip(self.model.coordinates(x), self.action):
            if c:
                out = _add(out, mat, c)
        return out

    def algebra_basis(self):
        """A basis of the algebra itself (supertraceless Cartan for sl/psl)."""
        model = self.model
        if model.family.value not in ("sl", "psl"):
            return [x for _, x in model.basis()]
        size = model.size
        out = [model.unit(a, b) for a in range(size) for b in range(size) if a != b]
        strace = [ONE if a < model.m else -ONE for a in range(size)]
        for a in range(size - 1):
            out.append(model.unit(a, a)
                       - model.unit(a + 1, a + 1).scale(strace[a] / strace[a + 1]))
        return out

    def matrices(self):
        if not hasattr(self, "_mats"):
            self._mats = [(x, self.rho(x)) for x in self.algebra_basis()]
        return self._mats

    def check(self):
        """Matrices are homogeneous and respect the superbracket."""
        pairs = self.matrices()
        for x, mat in pairs:
            p = x.parity
            for i in range(self.dim):
                for j in range(self.dim):
                    if mat[i][j] and (self.parity_of_index(i)
                                      ^ self.parity_of_index(j)) != p:
                        raise InvariantViolation("%s: matrix of wrong parity"
                                                 % self.label)
        for (x, mx), (y, my) in product(pairs, repeat=2):
            sign = -ONE if (x.parity and y.parity) else ONE
            lhs = self.rho(superbracket(x, y))
            rhs = _add(_mul(mx, my), _mul(my, mx), -sign)
            if lhs != rhs:
                raise InvariantViolation("%s: bracket relation fails" % self.label)
        return self


# ----------------------------------------------- Gelfand-Tsetlin modules

def _patterns(top):
    """All GT patterns with the given top row (rows listed top to bottom)."""
    n = len(top)
    if n == 0:
        return [()]
    out = []

    def rows_below(row):
        ranges = []
        for i in range(len(row) - 1):
            span = row[i] - row[i + 1]
            ranges.append([row[i + 1] + t for t in range(int(span.re) + 1)])
        return [tuple(r) for r in product(*ranges)]

    def walk(acc):
        last = acc[-1]
        if len(last) == 1:
            out.append(tuple(acc))
            return
        for r in rows_below(last):
            walk(acc + [r])

    walk([tuple(top)])
    return out


def gl_irrep(top):
    """Irreducible gl(n)-module with highest weight ``top``.

    Returns (dimension, {(a, b): matrix of E_ab}) using the rational
    Gelfand-Tsetlin formulas; the highest weight vector has index 0.
    """
    top = [as_gaussian(x) for x in top]
    n = len(top)
    for a, b in zip(top, top[1:]):
        d = a - b
        if not d.is_integer() or d.re < 0:
            raise ValueError("highest weight %s is not dominant integral" % top)
    pats = _patterns(top)
    index = {p: k for k, p in enumerate(pats)}
    dim = len(pats)

    def row(p, k):
        return p[n - k]          # row with k entries

    def ell(p, k, i):
        return row(p, k)[i] - i  # l_{k,i} with 0-based i

    mats = {}
    for k in range(1, n + 1):
        e = _zero(dim)
        for p, col in index.items():
            lower = sum(row(p, k - 1), ZERO) if k > 1 else ZERO
            e[col][col] = sum(row(p, k), ZERO) - lower
        mats[(k - 1, k - 1)] = e
    for k in range(1, n):
        up, down = _zero(dim), _zero(dim)
        for p, col in index.items():
            for i in range(k):
                den = ONE
                for j in range(k):
                    if j != i:
                        den = den * (ell(p, k, i) - ell(p, k, j))
                num_up = ONE
                for j in range(k + 1):
                    num_up = num_up * (ell(p, k, i) - ell(p, k + 1, j))
                num_down = ONE
                for j in range(k - 1):
                    num_down = num_down * (ell(p, k, i) - ell(p, k - 1, j))
                for sgn, num, mat in ((1, -num_up, up), (-1, num_down, down)):
                    q = list(map(list, p))
                    q[n - k][i] = q[n - k][i] + sgn
                    q = tuple(map(tuple, q))
                    if q in index and num:
                        mat[index[q]][col] = mat[index[q]][col] + num / den
        mats[(k - 1, k)] = up
        mats[(k, k - 1)] = down
    for gap in range(2, n):
        for a in range(n - gap):
            b = a + gap
            mats[(a, b)] = _add(_mul(mats[(a, a + 1)], mats[(a + 1, b)]),
                                _mul(mats[(a + 1, b)], mats[(a, a + 1)]), -ONE)
            mats[(b, a)] = _add(_mul(mats[(b, a + 1)], mats[(a + 1, a)]),
                                _mul(mats[(a + 1, a)], mats[(b, a + 1)]), -ONE)
    return dim, mats


def _kron_identity(mat, dim_other, left):
    """mat (x) I (left=True) or I (x) mat."""
    d = len(mat)
    size = d * dim_other
    out = _zero(size)
    for i in range(d):
        for j in range(d):
            if not mat[i][j]:
                continue
            for t in range(dim_other):
                if left:
                    out[i * dim_other + t][j * dim_other + t] = mat[i][j]
                else:
                    out[t * d + i][t * d + j] = mat[i][j]
    return out


# --------------------------------------------------------- Kac modules

def kac_module(m, n, lam):
    """Kac module Lambda(g_-1) (x) V0(lam) of gl(m|n), standard Borel.

    Returns an ExplicitModule over build_algebra("gl", m, n); the highest
    weight vector is basis vector 0.
    """
    model = build_algebra("gl", m, n)
    lam = [as_gaussian(x) for x in lam]
    d1, act1 = gl_irrep(lam[:m]) if m else (1, {})
    d2, act2 = gl_irrep(lam[m:]) if n else (1, {})
    v0_dim = d1 * d2
    v0 = {}
    for (a, b), mat in act1.items():
        v0[(a, b)] = _kron_identity(mat, d2, True)
    for (a, b), mat in act2.items():
        v0[(m + a, m + b)] = _kron_identity(mat, d1, False)
    lower = [(b, a) for b in range(m, m + n) for a in range(m)]
    subsets = [s for k in range(len(lower) + 1)
               for s in _combinations(range(len(lower)), k)]
    subsets.sort(key=lambda s: (len(s) % 2, len(s), s))
    keys = [(s, v) for s in subsets for v in range(v0_dim)]
    index = {k: i for i, k in enumerate(keys)}
    even_dim = sum(1 for s, _ in keys if len(s) % 2 == 0)

    def act_v0(x, vec):
        out = {}
        for (a, b), c in x.terms.items():
            mat = v0.get((a, b))
            if mat is None:
                continue
            for j, u in vec.items():
                for i in range(v0_dim):
                    if mat[i][j]:
                        out[i] = out.get(i, ZERO) + c * u * mat[i][j]
        return {k: v for k, v in out.items() if v}

    def split(x):
        parts = {"minus": {}, "zero": {}, "plus": {}}
        for (a, b), c in x.terms.items():
            if a >= m and b < m:
                parts["minus"][(a, b)] = c
            elif a < m and b >= m:
                parts["plus"][(a, b)] = c
            else:
                parts["zero"][(a, b)] = c
        return {k: Element(v, m) for k, v in parts.items() if v}

    def add_into(acc, vec, c=ONE):
        for k, v in vec.items():
            nv = acc.get(k, ZERO) + c * v
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
        return acc

    def act(x, vec):
        """x acting on {(S, v): coeff}."""
        out = {}
        for kind, part in split(x).items():
            for (s, v), c in vec.items():
                add_into(out, act_pure(kind, part, s, {v: ONE}), c)
        return out

    def act_pure(kind, x, s, vvec):
        if kind == "minus":
            out = {}
            for (a, b), c in x.terms.items():
                t = lower.index((a, b))
                if t in s:
                    continue
                pos = sum(1 for u in s if u < t)
                new = tuple(sorted(s + (t,)))
                sign = -ONE if pos % 2 else ONE
                for v, u in vvec.items():
                    add_into(out, {(new, v): sign * c * u})
            return out
        if not s:
            if kind == "plus":
                return {}
            return {((), v): u for v, u in act_v0(x, vvec).items()}
        head, rest = s[0], s[1:]
        y = Element.unit(*lower[head], m)
        out = {}
        inner = {(rest, v): u for v, u in vvec.items()}
        add_into(out, act(superbracket(x, y), inner))
        moved = act(x, inner)
        sign = -ONE if x.parity else ONE
        add_into(out, act(y, moved), sign)
        return out

    action = []
    for _, x in model.basis():
        mat = _zero(len(keys))
        for (s, v), col in index.items():
            for key, c in act(x, {(s, v): ONE}).items():
                mat[index[key]][col] = c
        action.append(mat)
    label = "K%s" % (Weight(lam, m),)
    return ExplicitModule(model, even_dim, len(keys) - even_dim, action, label,
                          Weight(lam, m))


def _combinations(items, k):
    from itertools import combinations
    return combinations(items, k)


# -------------------------------------------------- irreducible quotient

def irreducible_quotient(module, top=0):
    """Quotient by the maximal submodule not containing basis vector ``top``.

    The quotient is realized on the span C of covectors generated from the
    dual of ``top``; coordinates of v are (c_j(v)).
    """
    mats = module.action
    d = module.dim
    parity = [module.parity_of_index(k) for k in range(d)]
    start = [ONE if k == top else ZERO for k in range(d)]
    pool = []
    ech = Echelon(d)

    def push(v):
        if ech.add(v):
            pool.append(v)
            return True
        return False

    push(start)
    queue = [start]
    while queue:
        f = queue.pop()
        for mat in mats:
            g = [sum((f[i] * mat[i][j] for i in range(d) if f[i]), ZERO)
                 for j in range(d)]
            if any(g) and push(g):
                queue.append(g)
    par = []
    for v in pool:
        ps = {parity[k] for k, x in enumerate(v) if x}
        if len(ps) != 1:
            raise InvariantViolation("covector is not homogeneous")
        par.append(ps.pop())
    order = sorted(range(len(pool)), key=lambda k: par[k])
    pool = [pool[k] for k in order]
    par = [par[k] for k in order]
    size = len(pool)
    rows = [[pool[j][k] for j in range(size)] for k in range(d)]
    action = []
    for mat in mats:
        new = _zero(size)
        for i, f in enumerate(pool):
            g = [sum((f[k] * mat[k][j] for k in range(d) if f[k]), ZERO)
                 for j in range(d)]
            coeffs = solve_particular(rows, g, size)
            if coeffs is None:
                raise InvariantViolation("covector span is not stable")
            new[i] = [as_gaussian(c) for c in coeffs]
        action.append(new)
    even = par.count(0)
    return ExplicitModule(module.model, even, size - even, action,
                          "L" + module.label[1:], module.weight)


# ------------------------------------------------ small q(n) modules

def q1_module(lam):
    """1|1-dimensional q(1)-module: H acts by lam, the odd H' by [[0, lam], [1, 0]]."""
    lam = as_gaussian(lam)
    model = build_algebra("q", 1)
    even = [[lam, ZERO], [ZERO, lam]]
    odd = [[ZERO, lam], [ONE, ZERO]]
    return ExplicitModule(model, 1, 1, [even, odd], "q1(%s)" % lam,
                          Weight([lam], 1))


def qn_natural(n):
    model = build_algebra("q", n)
    action = []
    for _, x in model.basis():
        mat = _zero(2 * n)
        for (a, b), c in x.terms.items():
            mat[a][b] = c
        action.append(mat)
    lam = [ONE] + [ZERO] * (n - 1)
    return ExplicitModule(model, n, n, action, "q%d natural" % n, Weight(lam, n))


def restrict(module, family):
    """The same matrices viewed as a module over sl(m|n) or psl(m|n)."""
    model = build_algebra(family, module.model.m, module.model.n)
    return ExplicitModule(model, module.even_dim, module.odd_dim, module.action,
                          module.label, module.weight)


def build_module(recipe):
    """Build and check a catalog module.

    ``recipe`` is a tuple: ("kac", m, n, weight), ("irrep", m, n, weight),
    ("sym", n, k), ("adjoint", n), ("q1", lam) or ("qnat", n).
    """
    kind = recipe[0]
    if kind == "kac":
        mod = kac_module(recipe[1], recipe[2], recipe[3])
    elif kind == "irrep":
        mod = irreducible_quotient(kac_module(recipe[1], recipe[2], recipe[3]))
    elif kind == "sym":
        n, k = recipe[1], recipe[2]
        mod = restrict(kac_module(n, 0, [k] + [0] * (n - 1)), "sl")
    elif kind == "adjoint":
        n = recipe[1]
        mod = restrict(kac_module(n, 0, [1] + [0] * (n - 2) + [-1]), "sl")
    elif kind == "q1":
        mod = q1_module(recipe[1])
    elif kind == "qnat":
        mod = qn_natural(recipe[1])
    else:
        raise ValueError("unknown module recipe %r" % (recipe,))
    return mod.check()


# ------------------------------------------------ intertwiner spaces

def _solve_intertwiners(module, pairs, parity):
    """Complex basis of homogeneous A with A R = L A for all (R, L) in pairs."""
    d = module.dim
    cells = [(i, j) for i in range(d) for j in range(d)
             if module.parity_of_index(i) ^ module.parity_of_index(j) == parity]
    col = {c: k for k, c in enumerate(cells)}
    rows = []
    for right, left in pairs:
        for i in range(d):
            for j in range(d):
                row = {}
                # (A R)_ij = sum_k A_ik R_kj ; (L A)_ij = sum_k L_ik A_kj
                for k in range(d):
                    if right[k][j] and (i, k) in col:
                        c = col[(i, k)]
                        row[c] = row.get(c, ZERO) + right[k][j]
                    if left[i][k] and (k, j) in col:
                        c = col[(k, j)]
                        row[c] = row.get(c, ZERO) - left[i][k]
                if any(row.values()):
                    rows.append(row)
    out = []
    for vec in sparse_nullspace(rows, len(cells), ONE):
        mat = _zero(d)
        for c, v in vec.items():
            i, j = cells[c]
            mat[i][j] = v
        out.append(mat)
    return out


def commutant(module):
    """(even, odd) bases of linear maps commuting with every rho(x)."""
    pairs = [(m, m) for _, m in module.matrices()]
    return (_solve_intertwiners(module, pairs, 0),
            _solve_intertwiners(module, pairs, 1))


def antilinear_intertwiners(module, tau):
    """(even, odd) bases of A with phi(v) = A conj(v) and phi rho(x) = rho(tau x) phi."""
    pairs = [(_conj(m), module.rho(tau(x))) for x, m in module.matrices()]
    return (_solve_intertwiners(module, pairs, 0),
            _solve_intertwiners(module, pairs, 1))


def _square_sign(a):
    """Sign of c where phi^2 = A conj(A) = c I."""
    sq = _mul(a, _conj(a))
    c = sq[0][0]
    d = len(a)
    for i in range(d):
        for j in range(d):
            if sq[i][j] != (c if i == j else ZERO):
                raise InvariantViolation("phi^2 is not a scalar")
    if not c.is_real() or not c:
        raise InvariantViolation("phi^2 = %s is not a nonzero real" % c)
    return c.sign()


@dataclass
class OracleResult:
    datum: SymmetryDatum
    endotype: object
    commutant_dims: tuple
    antilinear_dims: tuple
    signs: dict = field(default_factory=dict)


def symmetry_datum_bruteforce(module, tau):
    even_c, odd_c = commutant(module)
    if len(even_c) != 1 or len(odd_c) > 1:
        raise InvariantViolation("%s is not irreducible (commutant %d|%d)"
                                 % (module.label, len(even_c), len(odd_c)))
    even_a, odd_a = antilinear_intertwiners(module, tau)
    tokens, signs = set(), {}
    if odd_c:
        tokens.add(PI)
    for name, sols, plus, minus in (("B", even_a, B_PLUS, B_MINUS),
                                    ("PiB", odd_a, PIB_PLUS, PIB_MINUS)):
        if not sols:
            continue
        if len(sols) > 1:
            raise InvariantViolation("%s: %s solution space has complex "
                                     "dimension %d" % (module.label, name, len(sols)))
        a = sols[0]
        found = {_square_sign(a), _square_sign(_scale(a, G(2, -1)))}
        if len(found) != 1:
            raise InvariantViolation("sign of phi^2 is not constant")
        signs[name] = found.pop()
        tokens.add(plus if signs[name] > 0 else minus)
    datum = SymmetryDatum(tokens)
    e = table1_lookup(datum)
    rep = report(e)
    total = 2 * (len(even_c) + len(odd_c) + len(even_a) + len(odd_a))
    expect = rep.real_dim * (4 if rep.splits_as is SplitType.V_PLUS_V else 1)
    if total != expect:
        raise InvariantViolation("%s: intertwiner dimension %d does not match "
                                 "the %s row (%d)" % (module.label, total, e, expect))
    return OracleResult(datum, e, (len(even_c), len(odd_c)),
                        (len(even_a), len(odd_a)), signs)


def oracle_endotype(module, tau):
    return symmetry_datum_bruteforce(module, tau).endotype


# ------------------------------------------------------------ catalog

@dataclass
class CatalogEntry:
    name: str
    recipe: tuple
    form: InvolutionSpec
    weight: tuple
    family: str
    m: int
    n: int

    def model(self):
        return build_algebra(self.family, self.m, self.n)

    def module(self):
        return build_module(self.recipe)

    def involution(self):
        return make_involution(self.form, self.model())


def _g(text):
    return G.parse(text) if isinstance(text, str) else as_gaussian(text)


def catalog():
    """Module/real-form pairs exercised by the oracle equivalence check."""
    out = []

    def add(name, recipe, form, weight, family, m, n=0):
        out.append(CatalogEntry(name, recipe, form,
                                tuple(_g(x) for x in weight), family, m, n))

    split, u1010 = InvolutionSpec.split(), InvolutionSpec.u(1, 0, 1, 0)
    for w in [("5", "7"), ("1", "1"), ("1/2", "3"), ("-2", "5/3")]:
        add("gl(1|1) split %s" % (w,), ("irrep", 1, 1, w), split, w, "gl", 1, 1)
    for a in ["2", "-1/2"]:
        w = (a, "-" + a if a[0] != "-" else a[1:])
        add("gl(1|1) one-dim %s" % (w,), ("irrep", 1, 1, w), split, w, "gl", 1, 1)
    for w in [("1/2+1i", "-1/2+2i"), ("1/2+1i", "1/2+2i"), ("1+1i", "0+1i"),
              ("1/2", "-3/2"), ("2+1i", "0+3i"), ("-1/2+1i", "1/2-1i")]:
        add("gl(1|1) compact %s" % (w,), ("irrep", 1, 1, w), u1010, w, "gl", 1, 1)
    for w in [("2", "1"), ("0", "-1")]:
        add("gl(1|1) qbar %s" % (w,), ("irrep", 1, 1, w), InvolutionSpec.qbar(),
            w, "gl", 1, 1)
    u1020 = InvolutionSpec.u(1, 0, 2, 0)
    for w in [("1+1i", "3/2+1/3i", "-5/2+1/3i"), ("1-1i", "2", "-3"),
              ("0+1i", "-1/2", "-1/2"), ("0+2i", "0-2i", "0-2i"), ("1", "0", "0"),
              ("1+2i", "1", "-2")]:
        add("gl(1|2) u(1,0|2,0) %s" % (w,), ("irrep", 1, 2, w), u1020, w, "gl", 1, 2)
    add("gl(1|2) split (2,1,0)", ("irrep", 1, 2, ("2", "1", "0")), split,
        ("2", "1", "0"), "gl", 1, 2)
    for k in range(1, 5):
        w = [str(k), "0"]
        add("su(2) Sym^%d" % k, ("sym", 2, k), InvolutionSpec.u(2, 0), w, "sl", 2)
    for k in range(1, 3):
        w = [str(k), "0", "0"]
        add("su(3) Sym^%d" % k, ("sym", 3, k), InvolutionSpec.u(3, 0), w, "sl", 3)
    add("su(3) adjoint", ("adjoint", 3), InvolutionSpec.u(3, 0),
        ("1", "0", "-1"), "sl", 3)
    add("sl(2,R) adjoint", ("adjoint", 2), split, ("1", "-1"), "sl", 2)
    add("sl(3,R) adjoint", ("adjoint", 3), split, ("1", "0", "-1"), "sl", 3)
    add("su(1,1) Sym^1", ("sym", 2, 1), InvolutionSpec.hyperbolic_unitary(1, 1),
        ("1", "0"), "sl", 2)
    for lam in ["1", "-1", "0+1i", "2+1i", "3"]:
        add("q(1) lambda=%s" % lam, ("q1", lam), split, (lam,), "q", 1)
    add("q(2) natural split", ("qnat", 2), split, ("1", "0"), "q", 2)
    add("q(2) natural qbar-type", ("qnat", 2), InvolutionSpec.unitary([ONE, ONE, G(0, 1), G(0, 1)]),
        ("1", "0"), "q", 2)
    return out
