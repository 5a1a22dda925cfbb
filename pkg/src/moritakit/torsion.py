"""Torsion theory and localization attached to a two-sided ideal.

The generating ideal I is first stabilized: the power chain I, I^2, ...
stops shrinking at an idempotent ideal Iinf, and the torsion class is the
modules killed by Iinf.  Everything downstream (torsion submodule, the
closedness map alpha, the localization Hom(Iinf, X / torsion)) is phrased
against Iinf.  The left action on Hom_R(Iinf, X) is (r.f)(a) = f(a.r);
the other convention would make alpha fail to be a module map.
"""

from __future__ import annotations

import random
from typing import NamedTuple, Optional

from .algebra import Algebra, Ideal, ideal_product, stabilize_ideal
from .context import MoritaContext, eta_map
from .exactlin import Basis, Matrix, kernel_basis
from .modules import (
    DEFAULT_ENUM_BUDGET,
    Bimodule,
    BudgetExceeded,
    HomBasis,
    LeftModule,
    Submodule,
    annihilator,
    enumerate_submodules,
    hom_module,
    hom_space,
    ideal_action_image,
    quotient_module,
    regular_module,
)

DEFAULT_ORACLE_SAMPLES = 256


class TorsionTheory:
    """An ideal, its idempotent stabilization, and the resulting operators.

    exponent is the least n with I^n = I^(n+1); exponent 1 means the
    generating ideal was already idempotent and the torsion class is
    closed under extensions without passing to the stabilization.
    """

    __slots__ = ("algebra", "ideal", "stable_ideal", "exponent", "_bim")

    def __init__(self, algebra: Algebra, ideal: Ideal, stable_ideal: Ideal, exponent: int):
        self.algebra = algebra
        self.ideal = ideal
        self.stable_ideal = stable_ideal
        self.exponent = exponent
        left = []
        right = []
        vecs = stable_ideal.basis
        for i in range(algebra.dim):
            e = algebra.basis_vector(i)
            lcols = []
            rcols = []
            for v in vecs.vectors:
                lc = vecs.coords(algebra.multiply(e, v))
                rc = vecs.coords(algebra.multiply(v, e))
                if lc is None or rc is None:
                    raise AssertionError("stabilized ideal is not two-sided stable")
                lcols.append(lc)
                rcols.append(rc)
            left.append(Matrix.from_cols(algebra.field, lcols, rows=vecs.dim))
            right.append(Matrix.from_cols(algebra.field, rcols, rows=vecs.dim))
        self._bim = Bimodule(algebra, algebra, vecs.dim, left, right)

    @classmethod
    def from_ideal(cls, algebra: Algebra, ideal: Ideal) -> "TorsionTheory":
        stable, exponent = stabilize_ideal(algebra, ideal)
        theory = cls(algebra, ideal, stable, exponent)
        # the stabilization must be idempotent or nothing downstream holds
        if ideal_product(algebra, stable, stable) != stable:
            raise AssertionError("stabilized ideal is not idempotent")
        return theory

    @property
    def ideal_bimodule(self) -> Bimodule:
        return self._bim

    def __repr__(self) -> str:
        return (f"TorsionTheory(ideal dim {self.ideal.dim} -> stable dim "
                f"{self.stable_ideal.dim}, exponent {self.exponent})")


def torsion_submodule(tt: TorsionTheory, x: LeftModule) -> Submodule:
    """The largest submodule killed by the stabilized ideal."""
    if x.algebra != tt.algebra:
        raise ValueError("module is over the wrong algebra")
    return annihilator(x, tt.stable_ideal.basis.vectors)


def is_torsion_free(tt: TorsionTheory, x: LeftModule) -> bool:
    return torsion_submodule(tt, x).basis.dim == 0


def is_torsion(tt: TorsionTheory, x: LeftModule) -> bool:
    return torsion_submodule(tt, x).basis.dim == x.dim


class ClosednessResult:
    """Verdict plus the witness matrix of alpha: X -> Hom_R(Iinf, X)."""

    __slots__ = ("closed", "alpha", "hom_module", "hom")

    def __init__(self, closed: bool, alpha: Matrix, hom_module: LeftModule, hom: HomBasis):
        self.closed = closed
        self.alpha = alpha
        self.hom_module = hom_module
        self.hom = hom

    def __bool__(self) -> bool:
        return self.closed


def closedness_map(tt: TorsionTheory, x: LeftModule) -> ClosednessResult:
    """alpha(x)(a) = a.x; X is closed exactly when alpha is invertible."""
    if x.algebra != tt.algebra:
        raise ValueError("module is over the wrong algebra")
    f = tt.algebra.field
    h_mod, h = hom_module(tt.ideal_bimodule, x)
    vecs = tt.stable_ideal.basis.vectors
    cols = []
    for k in range(x.dim):
        mat_cols = [x.action_of(v).col(k) for v in vecs]
        fk = Matrix.from_cols(f, mat_cols, rows=x.dim)
        c = h.coords(fk)
        if c is None:
            raise AssertionError("alpha image escaped Hom_R(Iinf, X)")
        cols.append(c)
    alpha = Matrix.from_cols(f, cols, rows=h.dim)
    closed = alpha.rows == alpha.cols and alpha.is_invertible()
    return ClosednessResult(closed, alpha, h_mod, h)


def is_closed(tt: TorsionTheory, x: LeftModule) -> bool:
    return closedness_map(tt, x).closed


class Localization(NamedTuple):
    module: LeftModule
    canonical: Matrix  # module.dim x X.dim
    torsion: Submodule
    hom: HomBasis


def localize(tt: TorsionTheory, x: LeftModule) -> Localization:
    """Hom_R(Iinf, X / torsion) with the canonical map x |-> (a |-> a.x̄).

    The construction's contract is asserted, not trusted: the result is
    closed, the canonical map's kernel is exactly the torsion submodule,
    and its cokernel is torsion.
    """
    t = torsion_submodule(tt, x)
    quo, proj = quotient_module(x, t.basis)
    res = closedness_map(tt, quo)
    canonical = res.alpha @ proj
    loc = res.hom_module

    if not is_closed(tt, loc):
        raise AssertionError("localization produced a non-closed module")
    if kernel_basis(canonical) != t.basis:
        raise AssertionError("canonical map kernel is not the torsion submodule")
    image = Basis.span(tt.algebra.field, loc.dim, canonical.columns())
    coker, _ = quotient_module(loc, _stable_closure(loc, image))
    if not is_torsion(tt, coker):
        raise AssertionError("localization cokernel is not torsion")
    return Localization(loc, canonical, t, res.hom)


def _stable_closure(m: LeftModule, span: Basis) -> Basis:
    # smallest submodule containing the span
    cur = span
    while True:
        vecs = list(cur.vectors)
        for act in m.action:
            vecs.extend(act.apply(v) for v in cur.vectors)
        grown = Basis.span(m.algebra.field, m.dim, vecs)
        if grown == cur:
            return cur
        cur = grown


class OracleVerdict:
    """Extension-oracle outcome; exhaustive is False when the submodule
    supply was sampled instead of enumerated."""

    __slots__ = ("verdict", "exhaustive", "failures")

    def __init__(self, verdict: bool, exhaustive: bool, failures: tuple):
        self.verdict = verdict
        self.exhaustive = exhaustive
        self.failures = failures

    def __bool__(self) -> bool:
        return self.verdict


def rel_injective_oracle(tt: TorsionTheory, target: LeftModule, ambient: LeftModule,
                         budget: int = DEFAULT_ENUM_BUDGET,
                         samples: int = DEFAULT_ORACLE_SAMPLES,
                         seed: int = 0) -> OracleVerdict:
    """Does every map into target from a dense submodule of ambient extend?

    A submodule qualifies when the quotient by it is torsion.  For each
    qualifying submodule the restriction map Hom(ambient, target) ->
    Hom(submodule, target) must be onto; a failure records the submodule
    and a map with no extension.
    """
    if target.algebra != tt.algebra or ambient.algebra != tt.algebra:
        raise ValueError("oracle modules are over the wrong algebra")
    try:
        subs = enumerate_submodules(ambient, budget=budget)
        exhaustive = True
    except BudgetExceeded:
        subs = sample_submodules(ambient, samples, seed)
        exhaustive = False
    f = tt.algebra.field
    hom_amb = hom_space(ambient, target)
    failures = []
    for sub in subs:
        quo, _ = quotient_module(ambient, sub.basis)
        if not is_torsion(tt, quo):
            continue
        sub_mod = sub.as_module()
        hom_sub = hom_space(sub_mod, target)
        if hom_sub.dim == 0:
            continue
        incl = sub.basis.matrix_cols()
        cols = []
        for beta in hom_amb.matrices:
            c = hom_sub.coords(beta @ incl)
            if c is None:
                raise AssertionError("restriction left the hom space")
            cols.append(c)
        restriction = Matrix.from_cols(f, cols, rows=hom_sub.dim)
        missed = _vector_outside_column_span(restriction)
        if missed is not None:
            failures.append((sub.basis, hom_sub.from_coords(missed)))
    return OracleVerdict(not failures, exhaustive, tuple(failures))


def _vector_outside_column_span(m: Matrix) -> Optional[tuple]:
    span = Basis.span(m.field, m.rows, m.columns())
    if span.dim == m.rows:
        return None
    # any standard vector off the span works; echelon form guarantees one
    for i in range(m.rows):
        e = tuple(m.field.one if j == i else m.field.zero for j in range(m.rows))
        if not span.contains_vector(e):
            return e
    raise AssertionError("span claims full rank but no missing vector found")


def sample_submodules(m: LeftModule, samples: int, seed: int) -> list:
    rng = random.Random(seed)
    f = m.algebra.field
    found = {Basis.zero(f, m.dim), Basis.full(f, m.dim)}
    for _ in range(samples):
        gens = []
        for _ in range(rng.choice((1, 1, 2))):
            if f.is_prime_field:
                gens.append(tuple(f.of_int(rng.randrange(f.p)) for _ in range(m.dim)))
            else:
                gens.append(tuple(f.of_int(rng.randint(-3, 3)) for _ in range(m.dim)))
        span = Basis.span(f, m.dim, gens)
        found.add(_stable_closure(m, span))
    ordered = sorted(found, key=lambda b: (b.dim, b.vectors))
    return [Submodule(m, b) for b in ordered]


def closed_via_eta(ctx: MoritaContext, x: LeftModule) -> bool:
    """Closedness relative to the context: composition with eta on the
    regular module must be a bijection Hom(R, X) -> Hom(M(x)N(x)R, X)."""
    if x.algebra != ctx.R:
        raise ValueError("module is over the wrong algebra")
    f = ctx.R.field
    u = regular_module(ctx.R)
    em = eta_map(ctx, u)
    outer_mod = em.outer.as_left_module()
    h_u = hom_space(u, x)
    h_fg = hom_space(outer_mod, x)
    if h_u.dim != h_fg.dim:
        return False
    cols = []
    for beta in h_u.matrices:
        c = h_fg.coords(beta @ em.matrix)
        if c is None:
            raise AssertionError("composition with eta left the hom space")
        cols.append(c)
    mat = Matrix.from_cols(f, cols, rows=h_fg.dim)
    return mat.rows == mat.cols and mat.is_invertible()


def ideal_power_chain(tt: TorsionTheory, x: LeftModule) -> list:
    """The descending chain X >= I.X >= I^2.X >= ... until it stabilizes,
    as a list of bases starting with the full space."""
    chain = [Basis.full(tt.algebra.field, x.dim)]
    cur = ideal_action_image(tt.ideal, x).basis
    while cur != chain[-1]:
        chain.append(cur)
        vecs = []
        for v in tt.ideal.basis.vectors:
            act = x.action_of(v)
            vecs.extend(act.apply(w) for w in cur.vectors)
        cur = Basis.span(tt.algebra.field, x.dim, vecs)
    return chain
