"""Finite-dimensional modules and bimodules, with the constructions the
verification engine is built from: hom spaces, balanced tensor products,
annihilators, submodule enumeration, quotients, and isomorphism search.

Conventions fixed here and relied on everywhere else:
  * a module map f: M -> N is a (dim N x dim M) matrix, vectorized row-major
    when a hom space is solved for;
  * the raw basis of a tensor product M (x) N is indexed (i, j) |-> i*dim(N)+j
    (left factor major), and the computed tensor basis is the non-pivot
    coordinate set of the balancing relation span, so tensor spaces are
    canonical and deterministic;
  * submodule enumeration emits echelon bases in a fixed order (dimension,
    then pivot columns lexicographically, then free entries).
"""

from __future__ import annotations

import itertools
import random
from typing import Optional, Sequence, Union

from .algebra import Algebra, Ideal
from .exactlin import (
    Basis,
    Matrix,
    QuotientStructure,
    kernel_basis,
    quotient_structure,
    unit_vector,
    vstack,
    zero_vector,
)

DEFAULT_ENUM_BUDGET = 81  # p**dim cap: dim <= 6 over GF(2), dim <= 4 over GF(3)
DEFAULT_LATTICE_BUDGET = 4096
DEFAULT_ISO_EXHAUST = 4096  # p**d cap on exhaustive coefficient search
DEFAULT_ISO_SAMPLES = 512


class BudgetExceeded(Exception):
    """An exhaustive enumeration would overrun its budget; callers may retry
    with sampling and must then flag every derived verdict as sampled."""


class LeftModule:
    __slots__ = ("algebra", "dim", "action")

    def __init__(self, algebra: Algebra, dim: int, action: Sequence[Matrix]):
        _check_action_shape(algebra, dim, action)
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)

    def action_of(self, a_vec: Sequence) -> Matrix:
        return _combine(self.algebra, self.dim, self.action, a_vec)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LeftModule)
            and self.algebra == other.algebra
            and self.dim == other.dim
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash((self.algebra, self.dim, self.action))

    def __repr__(self) -> str:
        return f"LeftModule(dim {self.dim} over {self.algebra!r})"


class RightModule:
    __slots__ = ("algebra", "dim", "action")

    def __init__(self, algebra: Algebra, dim: int, action: Sequence[Matrix]):
        _check_action_shape(algebra, dim, action)
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)

    def action_of(self, a_vec: Sequence) -> Matrix:
        return _combine(self.algebra, self.dim, self.action, a_vec)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RightModule)
            and self.algebra == other.algebra
            and self.dim == other.dim
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash(("right", self.algebra, self.dim, self.action))

    def __repr__(self) -> str:
        return f"RightModule(dim {self.dim} over {self.algebra!r})"


class Bimodule:
    """Left module over one algebra, right module over another, with
    commuting actions."""

    __slots__ = ("left_algebra", "right_algebra", "dim", "left_action", "right_action")

    def __init__(self, left_algebra, right_algebra, dim, left_action, right_action):
        _check_action_shape(left_algebra, dim, left_action)
        _check_action_shape(right_algebra, dim, right_action)
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dim = dim
        self.left_action = tuple(left_action)
        self.right_action = tuple(right_action)

    def left_module(self) -> LeftModule:
        return LeftModule(self.left_algebra, self.dim, self.left_action)

    def right_module(self) -> RightModule:
        return RightModule(self.right_algebra, self.dim, self.right_action)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bimodule)
            and self.left_algebra == other.left_algebra
            and self.right_algebra == other.right_algebra
            and self.dim == other.dim
            and self.left_action == other.left_action
            and self.right_action == other.right_action
        )

    def __hash__(self) -> int:
        return hash((self.left_algebra, self.right_algebra, self.dim, self.left_action, self.right_action))

    def __repr__(self) -> str:
        return f"Bimodule(dim {self.dim}, {self.left_algebra!r} / {self.right_algebra!r})"


def _check_action_shape(algebra: Algebra, dim: int, action) -> None:
    if dim < 0:
        raise ValueError("negative dimension")
    if len(action) != algebra.dim:
        raise ValueError(f"{len(action)} action matrices for an algebra of dim {algebra.dim}")
    for i, m in enumerate(action):
        if m.rows != dim or m.cols != dim:
            raise ValueError(f"action matrix {i} is {m.rows}x{m.cols}, want {dim}x{dim}")


def _combine(algebra: Algebra, dim: int, mats: tuple, a_vec: Sequence) -> Matrix:
    f = algebra.field
    out = Matrix.zeros(f, dim, dim)
    for i, c in enumerate(a_vec):
        if not f.is_zero(c):
            out = out + mats[i].scale(c)
    return out


def validate_module(m: Union[LeftModule, RightModule, Bimodule]) -> list:
    """Unit and multiplicativity laws; for bimodules also commutation.

    Returns a list of failure strings, empty exactly when m is a module.
    """
    if isinstance(m, Bimodule):
        report = [f"left {s}" for s in validate_module(m.left_module())]
        report += [f"right {s}" for s in validate_module(m.right_module())]
        for i in range(m.left_algebra.dim):
            for j in range(m.right_algebra.dim):
                if (m.left_action[i] @ m.right_action[j]) != (m.right_action[j] @ m.left_action[i]):
                    report.append(f"left action {i} does not commute with right action {j}")
        return report
    alg = m.algebra
    report = []
    if m.action_of(alg.unit) != Matrix.identity(alg.field, m.dim):
        report.append("unit does not act as the identity")
    for i in range(alg.dim):
        for j in range(alg.dim):
            want = m.action_of(alg.mul[i][j])
            if isinstance(m, LeftModule):
                got = m.action[i] @ m.action[j]
            else:
                got = m.action[j] @ m.action[i]
            if got != want:
                report.append(f"action law fails at basis pair ({i}, {j})")
    return report


def regular_module(a: Algebra) -> LeftModule:
    return LeftModule(a, a.dim, [a.left_mult_matrix(a.basis_vector(i)) for i in range(a.dim)])


def regular_bimodule(a: Algebra) -> Bimodule:
    left = [a.left_mult_matrix(a.basis_vector(i)) for i in range(a.dim)]
    right = [a.right_mult_matrix(a.basis_vector(i)) for i in range(a.dim)]
    return Bimodule(a, a, a.dim, left, right)


def direct_sum(a: LeftModule, b: LeftModule) -> LeftModule:
    if a.algebra != b.algebra:
        raise ValueError("direct sum over different algebras")
    f = a.algebra.field
    n = a.dim + b.dim
    mats = []
    for i in range(a.algebra.dim):
        m = [[f.zero] * n for _ in range(n)]
        for r in range(a.dim):
            for c in range(a.dim):
                m[r][c] = a.action[i].entries[r][c]
        for r in range(b.dim):
            for c in range(b.dim):
                m[a.dim + r][a.dim + c] = b.action[i].entries[r][c]
        mats.append(Matrix(f, m, cols=n))
    return LeftModule(a.algebra, n, mats)


class Submodule:
    """An action-stable subspace of a LeftModule; stability is asserted."""

    __slots__ = ("parent", "basis")

    def __init__(self, parent: LeftModule, basis: Basis):
        if basis.ambient_dim != parent.dim:
            raise ValueError("submodule basis in the wrong ambient space")
        for act in parent.action:
            for v in basis.vectors:
                if not basis.contains_vector(act.apply(v)):
                    raise ValueError("subspace is not action-stable")
        self.parent = parent
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.dim

    def inclusion(self) -> Matrix:
        return self.basis.matrix_cols()

    def as_module(self) -> LeftModule:
        mats = []
        for act in self.parent.action:
            cols = []
            for v in self.basis.vectors:
                c = self.basis.coords(act.apply(v))
                cols.append(c)
            mats.append(Matrix.from_cols(self.parent.algebra.field, cols, rows=self.dim))
        return LeftModule(self.parent.algebra, self.dim, mats)

    def __eq__(self, other) -> bool:
        return isinstance(other, Submodule) and self.parent == other.parent and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.parent, self.basis))

    def __repr__(self) -> str:
        return f"Submodule(dim {self.dim} of dim {self.parent.dim})"


def quotient_module(m: LeftModule, sub: Basis) -> tuple:
    """M / span(sub) with its projection matrix; sub must be stable."""
    Submodule(m, sub)  # stability assertion
    q: QuotientStructure = quotient_structure(sub)
    mats = [q.projection @ act @ q.section for act in m.action]
    return LeftModule(m.algebra, q.dim, mats), q.projection


def annihilator(m: LeftModule, vectors: Sequence[Sequence]) -> Submodule:
    """Largest submodule killed by every algebra element in the span of
    vectors (each given in algebra coordinates)."""
    mats = [m.action_of(v) for v in vectors]
    if not mats:
        return Submodule(m, Basis.full(m.algebra.field, m.dim))
    stacked = mats[0]
    for mm in mats[1:]:
        stacked = vstack(stacked, mm)
    return Submodule(m, kernel_basis(stacked))


def ideal_action_image(ideal: Ideal, m: LeftModule) -> Submodule:
    """The submodule I.M spanned by a.x for a in the ideal, x in M."""
    vecs = []
    for v in ideal.basis.vectors:
        act = m.action_of(v)
        vecs.extend(act.columns())
    return Submodule(m, Basis.span(m.algebra.field, m.dim, vecs))


class HomBasis:
    """Canonical basis of the space of module maps source -> target.

    The basis lives in vectorized (row-major) coordinates and is in RREF,
    so coords() can read coefficients directly off the pivot positions.
    """

    __slots__ = ("source", "target", "basis", "_mats")

    def __init__(self, source: LeftModule, target: LeftModule, basis: Basis):
        self.source = source
        self.target = target
        self.basis = basis
        self._mats = None

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def matrices(self) -> tuple:
        if self._mats is None:
            self._mats = tuple(self._reshape(v) for v in self.basis.vectors)
        return self._mats

    def _reshape(self, vec: tuple) -> Matrix:
        rows, cols = self.target.dim, self.source.dim
        ent = [vec[r * cols : (r + 1) * cols] for r in range(rows)]
        return Matrix(self.source.algebra.field, ent, cols=cols)

    def vectorize(self, f: Matrix) -> tuple:
        return tuple(x for row in f.entries for x in row)

    def coords(self, f: Matrix) -> Optional[tuple]:
        return self.basis.coords(self.vectorize(f))

    def from_coords(self, coeffs: Sequence) -> Matrix:
        return self._reshape(self.basis.from_coords(coeffs))


def hom_space(source: LeftModule, target: LeftModule) -> HomBasis:
    """Solve the intertwining equations for all maps source -> target.

    A map is a (target.dim x source.dim) matrix F with
    target.action[a] @ F = F @ source.action[a] for every algebra basis a.
    """
    if source.algebra != target.algebra:
        raise ValueError("hom between modules over different algebras")
    f = source.algebra.field
    sd, td = source.dim, target.dim
    nvars = sd * td
    rows = []
    for a in range(source.algebra.dim):
        As = source.action[a].entries
        At = target.action[a].entries
        for r in range(td):
            for c in range(sd):
                row = [f.zero] * nvars
                for k in range(td):
                    row[k * sd + c] = f.add(row[k * sd + c], At[r][k])
                for k in range(sd):
                    row[r * sd + k] = f.sub(row[r * sd + k], As[k][c])
                rows.append(row)
    if not rows:
        basis = Basis.full(f, nvars)
    else:
        basis = kernel_basis(Matrix(f, rows, cols=nvars))
    return HomBasis(source, target, basis)


def hom_module(bim: Bimodule, x: LeftModule) -> tuple:
    """Hom over the left algebra from a bimodule into a module.

    For an (R, T)-bimodule A and a left R-module X, Hom_R(A, X) is a left
    T-module by (t.f)(a) = f(a.t).

    Returns:
        (module, hom) where module is the left T-module on the hom basis
        coordinates and hom is the underlying HomBasis.
    """
    if bim.left_algebra != x.algebra:
        raise ValueError("bimodule's left algebra does not act on the target module")
    hom = hom_space(bim.left_module(), x)
    t_alg = bim.right_algebra
    mats = []
    for t in range(t_alg.dim):
        ra = bim.right_action[t]
        cols = []
        for fmat in hom.matrices:
            c = hom.coords(fmat @ ra)
            if c is None:
                raise AssertionError("hom space is not stable under the right action")
            cols.append(c)
        mats.append(Matrix.from_cols(t_alg.field, cols, rows=hom.dim))
    return LeftModule(t_alg, hom.dim, mats), hom


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product in left-factor-major indexing: row (i,k) = i*b.rows+k."""
    f = a.field
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    ent = [[f.zero] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            aij = a.entries[i][j]
            if f.is_zero(aij):
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    ent[i * b.rows + k][j * b.cols + l] = f.mul(aij, b.entries[k][l])
    return Matrix(f, ent, cols=cols)


class TensorProduct:
    """A balanced tensor product M (x)_A N presented as a quotient of the
    raw product space, with whatever outer actions the factors carry."""

    __slots__ = (
        "middle",
        "left_factor",
        "right_factor",
        "relations",
        "quotient",
        "left_algebra",
        "left_action",
        "right_algebra",
        "right_action",
    )

    def __init__(self, middle, left_factor, right_factor, relations, quotient,
                 left_algebra, left_action, right_algebra, right_action):
        self.middle = middle
        self.left_factor = left_factor
        self.right_factor = right_factor
        self.relations = relations
        self.quotient = quotient
        self.left_algebra = left_algebra
        self.left_action = left_action
        self.right_algebra = right_algebra
        self.right_action = right_action

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def projection(self) -> Matrix:
        return self.quotient.projection

    @property
    def section(self) -> Matrix:
        return self.quotient.section

    def pure_tensor(self, mvec: Sequence, nvec: Sequence) -> tuple:
        f = self.projection.field
        n = _factor_dim(self.right_factor)
        raw = [f.zero] * (_factor_dim(self.left_factor) * n)
        for i, a in enumerate(mvec):
            if f.is_zero(a):
                continue
            for j, b in enumerate(nvec):
                if not f.is_zero(b):
                    raw[i * n + j] = f.add(raw[i * n + j], f.mul(a, b))
        return self.projection.apply(raw)

    def as_left_module(self) -> LeftModule:
        if self.left_action is None:
            raise ValueError("left factor carries no outer left action")
        return LeftModule(self.left_algebra, self.dim, self.left_action)

    def as_bimodule(self) -> Bimodule:
        if self.left_action is None or self.right_action is None:
            raise ValueError("both outer actions are needed for a bimodule")
        return Bimodule(self.left_algebra, self.right_algebra, self.dim, self.left_action, self.right_action)

    def induced_map(self, target: "TensorProduct", f_left: Matrix, f_right: Matrix) -> Matrix:
        """The map of computed tensor spaces sending m (x) n to
        f_left(m) (x) f_right(n); callers guarantee balance."""
        return target.projection @ kron(f_left, f_right) @ self.section


def _factor_dim(factor) -> int:
    return factor.dim


def tensor_over(middle: Algebra, left, right) -> TensorProduct:
    """Balanced tensor product over the middle algebra.

    Args:
        middle: the algebra being tensored over.
        left: RightModule over middle, or a Bimodule whose right algebra is
            middle (its left algebra then descends to the product).
        right: LeftModule over middle, or a Bimodule whose left algebra is
            middle (its right algebra descends).

    The raw basis is (i, j) |-> i*dim(right)+j; the balancing relations
    (m.a) (x) n - m (x) (a.n) are spanned and the computed basis is the
    non-pivot coordinate set of their echelon form.
    """
    if isinstance(left, Bimodule):
        if left.right_algebra != middle:
            raise ValueError("left factor's right algebra is not the middle algebra")
        left_right_action = left.right_action
    elif isinstance(left, RightModule):
        if left.algebra != middle:
            raise ValueError("left factor is not a right module over the middle algebra")
        left_right_action = left.action
    else:
        raise ValueError(f"left factor must be a RightModule or Bimodule, got {type(left).__name__}")
    if isinstance(right, Bimodule):
        if right.left_algebra != middle:
            raise ValueError("right factor's left algebra is not the middle algebra")
        right_left_action = right.left_action
    elif isinstance(right, LeftModule):
        if right.algebra != middle:
            raise ValueError("right factor is not a left module over the middle algebra")
        right_left_action = right.action
    else:
        raise ValueError(f"right factor must be a LeftModule or Bimodule, got {type(right).__name__}")

    f = middle.field
    m, n = left.dim, right.dim
    rel_vecs = []
    for a in range(middle.dim):
        ra = left_right_action[a]
        la = right_left_action[a]
        for i in range(m):
            mi_a = ra.col(i)
            for j in range(n):
                a_nj = la.col(j)
                vec = [f.zero] * (m * n)
                for k in range(m):
                    if not f.is_zero(mi_a[k]):
                        vec[k * n + j] = f.add(vec[k * n + j], mi_a[k])
                for l in range(n):
                    if not f.is_zero(a_nj[l]):
                        vec[i * n + l] = f.sub(vec[i * n + l], a_nj[l])
                rel_vecs.append(vec)
    relations = Basis.span(f, m * n, rel_vecs)
    quot = quotient_structure(relations)

    left_algebra = left_action = None
    if isinstance(left, Bimodule):
        left_algebra = left.left_algebra
        eye_n = Matrix.identity(f, n)
        left_action = tuple(
            quot.projection @ kron(left.left_action[b], eye_n) @ quot.section
            for b in range(left_algebra.dim)
        )
    right_algebra = right_action = None
    if isinstance(right, Bimodule):
        right_algebra = right.right_algebra
        eye_m = Matrix.identity(f, m)
        right_action = tuple(
            quot.projection @ kron(eye_m, right.right_action[b]) @ quot.section
            for b in range(right_algebra.dim)
        )
    return TensorProduct(middle, left, right, relations, quot,
                         left_algebra, left_action, right_algebra, right_action)


def _echelon_bases(field, n: int, k: int):
    """All k-dimensional subspace bases of field^n in echelon order."""
    for pivots in itertools.combinations(range(n), k):
        free_positions = []
        for row, p in enumerate(pivots):
            for col in range(p + 1, n):
                if col not in pivots:
                    free_positions.append((row, col))
        scalars = [field.of_int(t) for t in range(field.p)]
        for assignment in itertools.product(scalars, repeat=len(free_positions)):
            rows = []
            for row, p in enumerate(pivots):
                v = [field.zero] * n
                v[p] = field.one
                rows.append(v)
            for (row, col), val in zip(free_positions, assignment):
                rows[row][col] = val
            yield Basis(field, n, tuple(tuple(r) for r in rows), tuple(pivots))


def enumerate_submodules(m: LeftModule, cap: Optional[int] = None,
                         budget: int = DEFAULT_ENUM_BUDGET) -> list:
    """Every submodule of m, exactly once, in a canonical order.

    Generates all subspaces in echelon order and filters by action
    stability.  Requires a prime field and p**dim within budget; raises
    BudgetExceeded otherwise (callers switch to sampling and flag it).
    """
    field = m.algebra.field
    if not field.is_prime_field:
        raise BudgetExceeded("submodule enumeration needs a finite field")
    if field.p ** m.dim > budget:
        raise BudgetExceeded(f"{field.p}**{m.dim} exceeds enumeration budget {budget}")
    found = []
    for k in range(m.dim + 1):
        for basis in _echelon_bases(field, m.dim, k):
            stable = True
            for act in m.action:
                for v in basis.vectors:
                    if not basis.contains_vector(act.apply(v)):
                        stable = False
                        break
                if not stable:
                    break
            if stable:
                found.append(Submodule(m, basis))
                if cap is not None and len(found) > cap:
                    raise BudgetExceeded(f"more than {cap} submodules")
    return found


def cyclic_submodule(m: LeftModule, v: Sequence) -> Basis:
    """Closure of a single vector under the action."""
    span = Basis.span(m.algebra.field, m.dim, [tuple(v)])
    while True:
        vecs = list(span.vectors)
        for act in m.action:
            for w in span.vectors:
                vecs.append(act.apply(w))
        grown = Basis.span(m.algebra.field, m.dim, vecs)
        if grown == span:
            return span
        span = grown


def submodule_lattice(m: LeftModule, budget: int = DEFAULT_LATTICE_BUDGET) -> list:
    """Every submodule of m via closures of cyclic submodules under sums.

    Exact for any module (each submodule is a sum of cyclic ones) and far
    cheaper than subspace filtering when dim is large but the lattice is
    small.  Cost is driven by the p**dim vector sweep, capped by budget.
    """
    field = m.algebra.field
    if not field.is_prime_field:
        raise BudgetExceeded("submodule lattice needs a finite field")
    if field.p ** m.dim > budget:
        raise BudgetExceeded(f"{field.p}**{m.dim} exceeds lattice budget {budget}")
    scalars = [field.of_int(t) for t in range(field.p)]
    cyclic = {Basis.zero(field, m.dim)}
    for tup in itertools.product(scalars, repeat=m.dim):
        if all(field.is_zero(t) for t in tup):
            continue
        cyclic.add(cyclic_submodule(m, tup))
    lattice = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        fresh = []
        for a in frontier:
            for b in cyclic:
                s = Basis.span(field, m.dim, list(a.vectors) + list(b.vectors))
                if s not in lattice:
                    lattice.add(s)
                    fresh.append(s)
        frontier = fresh
    ordered = sorted(lattice, key=lambda b: (b.dim, b.vectors))
    return [Submodule(m, b) for b in ordered]


class IsoResult:
    """Outcome of an isomorphism search.

    map_ is an invertible intertwiner when found.  When map_ is None,
    exhaustive distinguishes a proved 'none' from a sampled 'not found'.
    """

    __slots__ = ("map_", "exhaustive")

    def __init__(self, map_: Optional[Matrix], exhaustive: bool):
        self.map_ = map_
        self.exhaustive = exhaustive

    @property
    def found(self) -> bool:
        return self.map_ is not None

    @property
    def proven_none(self) -> bool:
        return self.map_ is None and self.exhaustive

    def __repr__(self) -> str:
        if self.found:
            return "IsoResult(found)"
        return "IsoResult(none, exhaustive)" if self.exhaustive else "IsoResult(not found, sampled)"


def is_isomorphic(m: LeftModule, n: LeftModule, samples: int = DEFAULT_ISO_SAMPLES,
                  seed: int = 0, exhaust: int = DEFAULT_ISO_EXHAUST) -> IsoResult:
    """Search the hom space for an invertible map.

    Policy: dimension mismatch is a proven 'none'; the identity matrix is
    tried first when it lies in the hom space; over GF(p) with p**homdim
    within the exhaust cap all coefficient tuples are tried in lexicographic
    order (a miss is then a proof); otherwise `samples` pseudorandom
    combinations from a fixed seed (a miss is then only 'not found').
    """
    if m.algebra != n.algebra:
        raise ValueError("isomorphism search across different algebras")
    field = m.algebra.field
    if m.dim != n.dim:
        return IsoResult(None, True)
    if m.dim == 0:
        return IsoResult(Matrix.zeros(field, 0, 0), True)
    hom = hom_space(m, n)
    d = hom.dim
    if d == 0:
        return IsoResult(None, True)
    ident = Matrix.identity(field, m.dim)
    if hom.coords(ident) is not None:
        return IsoResult(ident, True)
    if field.is_prime_field and field.p ** d <= exhaust:
        scalars = [field.of_int(t) for t in range(field.p)]
        for coeffs in itertools.product(scalars, repeat=d):
            if all(field.is_zero(c) for c in coeffs):
                continue
            cand = hom.from_coords(coeffs)
            if cand.is_invertible():
                return IsoResult(cand, True)
        return IsoResult(None, True)
    rng = random.Random(seed)
    for _ in range(samples):
        if field.is_prime_field:
            coeffs = [field.of_int(rng.randrange(field.p)) for _ in range(d)]
        else:
            coeffs = [field.of_int(rng.randint(-3, 3)) for _ in range(d)]
        cand = hom.from_coords(coeffs)
        if cand.is_invertible():
            return IsoResult(cand, False)
    return IsoResult(None, False)
