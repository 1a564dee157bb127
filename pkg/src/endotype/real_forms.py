"""Antilinear involutions of the matrix models.

Every supported involution has the shape

    tau(X) = M . P( S( conj(X) ) ) . M^{-1}

where ``conj`` is entrywise conjugation, ``S`` is optionally X -> -X^st,
``P`` optionally swaps the two diagonal blocks of gl(n|n), and ``M`` is an
invertible matrix over Q(i).  Built-in kinds fix these ingredients; custom
ones supply ``M`` and a recipe naming which ingredients are active.
"""

from dataclasses import dataclass
from enum import Enum

from .algebra_model import (
    Element, Root, Weight, superbracket,
)
from .linalg import mat_inverse, mat_mul
from .scalars import ZERO, ONE, I, as_gaussian

__all__ = [
    "InvolutionKind", "Recipe", "InvolutionSpec", "Involution",
    "InvolutionError", "make_involution", "tau_weight", "tau_root",
    "tau_borel", "tau_root_vector", "supertranspose",
]


class InvolutionError(ValueError):
    """The proposed map is not a valid antilinear involution of the model."""


class InvolutionKind(Enum):
    SPLIT = "split"
    UNITARY = "unitary"
    QBAR = "qbar"
    PEBAR = "pebar"
    CUSTOM = "custom"


class Recipe(Enum):
    CONJ = "conj"
    NEG_ST = "neg-conj-supertranspose"
    PI_SWAP = "pi-swap-conj"


@dataclass(frozen=True)
class InvolutionSpec:
    kind: InvolutionKind
    signs: tuple = None
    matrix: tuple = None
    recipe: Recipe = None

    @classmethod
    def split(cls):
        return cls(InvolutionKind.SPLIT)

    @classmethod
    def unitary(cls, signs):
        return cls(InvolutionKind.UNITARY, signs=tuple(as_gaussian(s) for s in signs))

    @classmethod
    def u(cls, p, q, r=0, s=0):
        """u(p,q|r,s): diag(1^p, (-1)^q | i^r, (-i)^s)."""
        return cls.unitary([ONE] * p + [-ONE] * q + [I] * r + [-I] * s)

    @classmethod
    def qbar(cls):
        return cls(InvolutionKind.QBAR)

    @classmethod
    def pebar(cls):
        return cls(InvolutionKind.PEBAR)

    @classmethod
    def custom(cls, matrix, recipe):
        if isinstance(recipe, str):
            recipe = Recipe(recipe)
        mat = tuple(tuple(as_gaussian(x) for x in row) for row in matrix)
        return cls(InvolutionKind.CUSTOM, matrix=mat, recipe=recipe)

    @classmethod
    def hyperbolic_unitary(cls, p, q, r=0, s=0):
        """u(p,q|r,s) realized by a Hermitian form with min(p,q) hyperbolic
        planes in the even block and min(r,s) in the odd block.

        Paired indices j and N+1-j (inside each block) span a hyperbolic
        plane; the diagonal Cartan then contains a maximal split torus.
        """
        even = _hyperbolic_block(p, q, ONE)
        odd = _hyperbolic_block(r, s, I)
        m, n = p + q, r + s
        mat = [[ZERO] * (m + n) for _ in range(m + n)]
        for (a, b), v in even.items():
            mat[a][b] = v
        for (a, b), v in odd.items():
            mat[m + a][m + b] = v
        return cls.custom(mat, Recipe.NEG_ST)

    def describe(self):
        if self.kind is InvolutionKind.UNITARY:
            return "unitary(%s)" % ",".join(str(s) for s in self.signs)
        if self.kind is InvolutionKind.CUSTOM:
            rows = ";".join(",".join(str(x) for x in row) for row in self.matrix)
            return "custom(%s; %s)" % (self.recipe.value, rows)
        return self.kind.value


def _hyperbolic_block(p, q, unit):
    size = p + q
    k = min(p, q)
    out = {}
    for j in range(k):
        out[(j, size - 1 - j)] = unit
        out[(size - 1 - j, j)] = unit
    sign = ONE if p >= q else -ONE
    for j in range(k, size - k):
        out[(j, j)] = unit * sign
    return out


def supertranspose(x):
    """X^st = [[A^t, -C^t], [B^t, D^t]] for X = [[A, B], [C, D]]."""
    m = x.even_dim
    out = {}
    for (a, b), v in x.terms.items():
        out[(b, a)] = -v if (a >= m and b < m) else v
    return Element(out, m)


def _pi_swap(x, n):
    return Element({((a + n) % (2 * n), (b + n) % (2 * n)): v
                    for (a, b), v in x.terms.items()}, x.even_dim)


def _dense_to_sparse(mat, even_dim):
    return Element({(a, b): v for a, row in enumerate(mat)
                    for b, v in enumerate(row) if v}, even_dim)


class Involution:
    """A validated antilinear involution of an AlgebraModel."""

    def __init__(self, spec, model):
        self.spec = spec
        self.model = model
        size = model.size
        kind = spec.kind
        self.neg_st = False
        self.pi_swap = False
        mat = None
        if kind is InvolutionKind.SPLIT:
            pass
        elif kind is InvolutionKind.UNITARY:
            if spec.signs is None or len(spec.signs) != size:
                raise InvolutionError("unitary form on %s needs %d signs"
                                      % (model.name, size))
            for s in spec.signs:
                if s not in (ONE, -ONE, I, -I):
                    raise InvolutionError("unitary signs must be in {1,-1,i,-i}")
            self.neg_st = True
            mat = [[spec.signs[a] if a == b else ZERO for b in range(size)]
                   for a in range(size)]
        elif kind in (InvolutionKind.QBAR, InvolutionKind.PEBAR):
            if model.m != model.n or model.is_q and kind is InvolutionKind.PEBAR:
                raise InvolutionError("%s needs a gl(n|n)-type model"
                                      % kind.value)
            self.pi_swap = True
            self.neg_st = kind is InvolutionKind.PEBAR
        elif kind is InvolutionKind.CUSTOM:
            if spec.matrix is None or len(spec.matrix) != size or any(
                    len(row) != size for row in spec.matrix):
                raise InvolutionError("custom matrix must be %dx%d" % (size, size))
            mat = [list(row) for row in spec.matrix]
            if spec.recipe is Recipe.NEG_ST:
                self.neg_st = True
            elif spec.recipe is Recipe.PI_SWAP:
                if model.m != model.n:
                    raise InvolutionError("pi-swap needs a gl(n|n)-type model")
                self.pi_swap = True
        else:
            raise InvolutionError("unknown kind %r" % kind)
        if mat is not None:
            try:
                inv = mat_inverse(mat)
            except ZeroDivisionError:
                raise InvolutionError("matrix M is singular")
            self.matrix = mat
            self.matrix_inv = [[as_gaussian(x) for x in row] for row in inv]
            self._m = _dense_to_sparse(mat, model.even_dim)
            self._minv = _dense_to_sparse(self.matrix_inv, model.even_dim)
        else:
            self.matrix = self.matrix_inv = None
            self._m = self._minv = None
        self._cache = {}
        self._validate()

    # core map
    def __call__(self, x):
        key = frozenset(x.terms.items())
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        y = x.conj_entries()
        if self.neg_st:
            y = -supertranspose(y)
        if self.pi_swap:
            y = _pi_swap(y, self.model.n)
        if self._m is not None:
            y = self._m.matmul(y).matmul(self._minv)
        if len(self._cache) < 4096:
            self._cache[key] = y
        return y

    apply = __call__

    def _validate(self):
        model = self.model
        basis = model.basis()
        images = []
        for label, x in basis:
            tx = self(x)
            if not model.contains(tx):
                raise InvolutionError("tau(%s) leaves %s" % (label, model.name))
            if tx.parity != x.parity:
                raise InvolutionError("tau(%s) changes parity" % label)
            if self(tx) != x:
                raise InvolutionError("tau^2 != id on %s" % label)
            images.append(tx)
        for (la, x), tx in zip(basis, images):
            for (lb, y), ty in zip(basis, images):
                if self(superbracket(x, y)) != superbracket(tx, ty):
                    raise InvolutionError("tau does not preserve [%s, %s]"
                                          % (la, lb))
        for h in model.cartan() + model.odd_cartan():
            th = self(h)
            if model.is_q:
                ok = all(b % model.n == a % model.n for a, b in th.terms)
            else:
                ok = all(a == b for a, b in th.terms)
            if not ok:
                raise InvolutionError("tau does not preserve the Cartan subalgebra")

    # group lift
    def apply_group(self, g):
        """Lift to an invertible even matrix g (dense list of rows)."""
        size = self.model.size
        y = [[as_gaussian(v).conjugate() for v in row] for row in g]
        if self.neg_st:
            # on even matrices (g^st)^{-1} = (g^t)^{-1}
            y = mat_inverse([list(col) for col in zip(*y)])
        if self.pi_swap:
            n = self.model.n
            y = [[y[(a + n) % size][(b + n) % size] for b in range(size)]
                 for a in range(size)]
        if self.matrix is not None:
            y = mat_mul(mat_mul(self.matrix, y), self.matrix_inv)
        return [[as_gaussian(v) for v in row] for row in y]

    # induced actions
    def weight(self, lam):
        return tau_weight(self, lam)

    def root(self, alpha):
        return tau_root(self, alpha)

    def __repr__(self):
        return "Involution(%s on %s)" % (self.spec.describe(), self.model.name)


def make_involution(spec, model):
    return Involution(spec, model)


def tau_weight(tau, lam):
    """mu with mu(h) = conj(lam(tau(h))) on the even Cartan."""
    model = tau.model
    return Weight([model.evaluate(lam, tau(h)).conjugate() for h in model.cartan()],
                  lam.split)


def tau_root(tau, alpha):
    """Root sigma(alpha) with tau(g_alpha) = g_sigma(alpha)."""
    model = tau.model
    vec = [model.evaluate(Weight(alpha.vec), tau(h)) for h in model.cartan()]
    if not all(v.is_integer() for v in vec):
        raise InvolutionError("tau does not permute the roots")
    return Root([int(v.re) for v in vec], alpha.even_dim)


def tau_borel(tau, b):
    """The positive system tau(Phi+) of the Borel encoded by ``b``."""
    model = tau.model
    if model.is_q:
        size = model.n
        seq = list(range(size))
        pos = [Root.difference(seq[i], seq[j], size, size)
               for i in range(size) for j in range(i + 1, size)]
    else:
        pos = b.positive_roots()
    return frozenset(tau_root(tau, a) for a in pos)


def tau_root_vector(tau, alpha):
    return tau(tau.model.root_vector(alpha))
