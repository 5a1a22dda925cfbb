"""Verification engine: runs the equivalence statements over module catalogs.

A Catalog is a finite list of modules over one algebra, one representative
per isomorphism class when built exhaustively.  Each verify_* function
walks the catalogs, records one Verdict per check with enough witness
material to re-verify it independently, and never raises on a failed
check: failures are verdicts, precondition breaks are failing verdicts
naming the reason.
"""

from __future__ import annotations

import random
from typing import NamedTuple, Optional

from .algebra import Algebra
from .context import (
    MoritaContext,
    NaturalMap,
    eta_map,
    evaluation_counit,
    rho_map,
    trace_ideals,
)
from .exactlin import Basis, Matrix
from .modules import (
    DEFAULT_ENUM_BUDGET,
    DEFAULT_LATTICE_BUDGET,
    BudgetExceeded,
    LeftModule,
    annihilator,
    direct_sum,
    enumerate_submodules,
    hom_module,
    hom_space,
    ideal_action_image,
    is_isomorphic,
    quotient_module,
    regular_module,
    submodule_lattice,
    tensor_over,
)
from .torsion import (
    OracleVerdict,
    TorsionTheory,
    is_closed,
    localize,
    sample_submodules,
)

DEFAULT_CATALOG_SAMPLES = 64
DEFAULT_NATURALITY_SAMPLES = 40


class Catalog:
    __slots__ = ("algebra", "modules", "provenance")

    def __init__(self, algebra: Algebra, modules: tuple, provenance: str):
        for m in modules:
            if m.algebra != algebra:
                raise ValueError("catalog member over the wrong algebra")
        self.algebra = algebra
        self.modules = tuple(modules)
        self.provenance = provenance

    @property
    def exhaustive(self) -> bool:
        return self.provenance.startswith("exhaustive")

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __repr__(self) -> str:
        return f"Catalog({len(self.modules)} modules, {self.provenance})"


class Verdict(NamedTuple):
    subject: str
    check: str
    passed: bool
    witness: Optional[Matrix] = None
    note: str = ""


class Report:
    """Append-only list of verdicts under a named statement."""

    __slots__ = ("statement", "verdicts", "flags", "strict_sampling")

    def __init__(self, statement: str, strict_sampling: bool = False):
        self.statement = statement
        self.verdicts = []
        self.flags = []
        self.strict_sampling = strict_sampling

    def record(self, subject: str, check: str, passed: bool,
               witness: Optional[Matrix] = None, note: str = "") -> None:
        self.verdicts.append(Verdict(subject, check, passed, witness, note))

    def flag(self, text: str) -> None:
        if text not in self.flags:
            self.flags.append(text)

    @property
    def sampled(self) -> bool:
        return any(f.startswith("sampled") for f in self.flags)

    @property
    def passed(self) -> bool:
        if not all(v.passed for v in self.verdicts):
            return False
        if self.strict_sampling and self.sampled:
            return False
        return True

    def failures(self) -> list:
        return [v for v in self.verdicts if not v.passed]

    def __repr__(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return f"Report({self.statement}: {state}, {len(self.verdicts)} checks)"


def _module_sort_key(m: LeftModule):
    return (m.dim, tuple(tuple(tuple(row) for row in a.entries) for a in m.action))


def build_catalog(algebra: Algebra, max_dim: int,
                  budget: int = DEFAULT_LATTICE_BUDGET,
                  allow_sampling: bool = False,
                  samples: int = DEFAULT_CATALOG_SAMPLES,
                  seed: int = 0) -> Catalog:
    """One module per isomorphism class of dimension <= max_dim.

    Strategy: quotients of the free modules R^1 and R^2 by their
    submodule lattices, deduplicated up to isomorphism, then closed under
    direct sums within the dimension bound (sums of three or more small
    pieces need not be quotients of R^2).  When the lattice budget is
    exceeded and sampling is allowed, submodules are sampled instead and
    the catalog is flagged.
    """
    reps = []

    def add(mod: LeftModule) -> bool:
        if mod.dim > max_dim:
            return False
        for r in reps:
            if r.dim == mod.dim and is_isomorphic(r, mod).found:
                return False
        reps.append(mod)
        return True

    reg = regular_module(algebra)
    sampled = False
    for free in (reg, direct_sum(reg, reg)):
        try:
            subs = submodule_lattice(free, budget=budget)
        except BudgetExceeded:
            if not allow_sampling:
                raise
            subs = sample_submodules(free, samples, seed)
            sampled = True
        for sub in subs:
            quo, _ = quotient_module(free, sub.basis)
            add(quo)

    changed = True
    while changed:
        changed = False
        for a in list(reps):
            for b in list(reps):
                if a.dim + b.dim <= max_dim and a.dim > 0 and b.dim > 0:
                    if add(direct_sum(a, b)):
                        changed = True

    reps.sort(key=_module_sort_key)
    provenance = f"sampled(seed={seed})" if sampled else f"exhaustive-up-to-dim({max_dim})"
    return Catalog(algebra, tuple(reps), provenance)


def user_catalog(algebra: Algebra, modules) -> Catalog:
    return Catalog(algebra, tuple(modules), "user-supplied")


def _check_precondition_strict(ctx: MoritaContext, report: Report) -> bool:
    i, j = trace_ideals(ctx)
    ok = True
    if i.dim < ctx.R.dim:
        report.record("context", "pairing into R surjective",
                      False, note=f"trace ideal has dim {i.dim} < {ctx.R.dim}")
        ok = False
    if j.dim < ctx.S.dim:
        report.record("context", "pairing into S surjective",
                      False, note=f"trace ideal has dim {j.dim} < {ctx.S.dim}")
        ok = False
    return ok


def _eta_naturality_square(e1: NaturalMap, e2: NaturalMap, f: Matrix,
                           eye_outer: Matrix, eye_inner: Matrix) -> bool:
    inner_map = e1.inner.induced_map(e2.inner, eye_inner, f)
    outer_map = e1.outer.induced_map(e2.outer, eye_outer, inner_map)
    return f @ e1.matrix == e2.matrix @ outer_map


def _random_scalar(field, rng):
    if field.is_prime_field:
        return field.of_int(rng.randrange(field.p))
    return field.of_int(rng.randint(-3, 3))


def _sample_naturality(report: Report, maps, modules, field, eye_outer, eye_inner,
                       label: str, rng, cap: int) -> None:
    pairs = [(i, j) for i in range(len(modules)) for j in range(len(modules))]
    rng.shuffle(pairs)
    done = 0
    for i, j in pairs:
        if done >= cap:
            break
        h = hom_space(modules[i], modules[j])
        if h.dim == 0:
            continue
        coeffs = [_random_scalar(field, rng) for _ in range(h.dim)]
        if all(field.is_zero(c) for c in coeffs):
            coeffs[rng.randrange(h.dim)] = field.one
        f = h.from_coords(coeffs)
        ok = _eta_naturality_square(maps[i], maps[j], f, eye_outer, eye_inner)
        report.record(f"{label}[{i}]->{label}[{j}]", "naturality square", ok, witness=f)
        done += 1


def verify_strict_equivalence(ctx: MoritaContext, catalog_r: Catalog, catalog_s: Catalog,
                              seed: int = 0, strict_sampling: bool = False,
                              naturality: int = DEFAULT_NATURALITY_SAMPLES) -> Report:
    """Surjective pairings force both composite functors to be naturally
    isomorphic to identities: eta and rho invertible on every catalog
    module, naturality on sampled morphisms."""
    report = Report("strict context equivalence", strict_sampling)
    if not _check_precondition_strict(ctx, report):
        return report
    for cat in (catalog_r, catalog_s):
        if not cat.exhaustive:
            report.flag(f"sampled catalog: {cat.provenance}")
    f = ctx.R.field
    etas = [eta_map(ctx, x) for x in catalog_r]
    rhos = [rho_map(ctx, y) for y in catalog_s]
    for i, (x, em) in enumerate(zip(catalog_r, etas)):
        ok = em.matrix.rows == em.matrix.cols and em.matrix.is_invertible()
        report.record(f"R-module[{i}] (dim {x.dim})", "eta invertible", ok, witness=em.matrix)
    for i, (y, rm) in enumerate(zip(catalog_s, rhos)):
        ok = rm.matrix.rows == rm.matrix.cols and rm.matrix.is_invertible()
        report.record(f"S-module[{i}] (dim {y.dim})", "rho invertible", ok, witness=rm.matrix)
    rng = random.Random(seed)
    eye_m = Matrix.identity(f, ctx.M.dim)
    eye_n = Matrix.identity(f, ctx.N.dim)
    _sample_naturality(report, etas, list(catalog_r), f, eye_m, eye_n, "R-module", rng, naturality)
    _sample_naturality(report, rhos, list(catalog_s), f, eye_n, eye_m, "S-module", rng, naturality)
    return report


def hom_functor_to_s(ctx: MoritaContext, x: LeftModule) -> LeftModule:
    """Hom_R(M, X) as a left S-module: (s.f)(m) = f(m.s)."""
    mod, _ = hom_module(ctx.M, x)
    return mod


def hom_functor_to_r(ctx: MoritaContext, y: LeftModule) -> LeftModule:
    """Hom_S(N, Y) as a left R-module."""
    mod, _ = hom_module(ctx.N, y)
    return mod


def context_theories(ctx: MoritaContext) -> tuple:
    i, j = trace_ideals(ctx)
    return TorsionTheory.from_ideal(ctx.R, i), TorsionTheory.from_ideal(ctx.S, j)


def _kato_muller_side(report: Report, label: str, modules, theory_here, theory_there,
                      hom_there, hom_back) -> None:
    for i, x in enumerate(modules):
        subject = f"{label}[{i}] (dim {x.dim})"
        note = ""
        if not is_closed(theory_here, x):
            x = localize(theory_here, x).module
            note = f"localized first, now dim {x.dim}"
        fx = hom_there(x)
        report.record(subject, "image under hom functor is closed",
                      is_closed(theory_there, fx), note=note)
        back = hom_back(fx)
        iso = is_isomorphic(back, x)
        report.record(subject, "round trip isomorphic", iso.found,
                      witness=iso.map_, note=note)


def verify_kato_muller(ctx: MoritaContext, catalog_r: Catalog, catalog_s: Catalog,
                       strict_sampling: bool = False) -> Report:
    """Quotient-category equivalence through the hom functors.

    Both trace ideals induce torsion theories; on each side, every closed
    catalog module must map to a closed module on the other side and come
    back isomorphic to itself.  Non-closed members are localized first, so
    the check exercises exactly the closed objects.
    """
    report = Report("quotient category equivalence", strict_sampling)
    for cat in (catalog_r, catalog_s):
        if not cat.exhaustive:
            report.flag(f"sampled catalog: {cat.provenance}")
    t_i, t_j = context_theories(ctx)
    i, j = trace_ideals(ctx)
    report.record("context", "trace ideal into R", True,
                  note=f"I = {i.dim}-dim, idempotent (exponent {t_i.exponent})")
    report.record("context", "trace ideal into S", True,
                  note=(f"J = S (dim {j.dim})" if j.dim == ctx.S.dim
                        else f"J = {j.dim}-dim, idempotent (exponent {t_j.exponent})"))
    _kato_muller_side(report, "R-module", list(catalog_r), t_i, t_j,
                      lambda x: hom_functor_to_s(ctx, x),
                      lambda y: hom_functor_to_r(ctx, y))
    _kato_muller_side(report, "S-module", list(catalog_s), t_j, t_i,
                      lambda y: hom_functor_to_r(ctx, y),
                      lambda x: hom_functor_to_s(ctx, x))
    return report


def verify_one_epi(ctx: MoritaContext, catalog_r: Catalog, catalog_s: Catalog,
                   strict_sampling: bool = False) -> Report:
    """When the pairing into R is onto, R-mod embeds in the S-side quotient:
    every R-module is closed, its hom image is closed on the S side, and
    the evaluation counit M (x) Hom_R(M, X) -> X is an isomorphism."""
    report = Report("surjective pairing embedding", strict_sampling)
    i, j = trace_ideals(ctx)
    if i.dim < ctx.R.dim:
        report.record("context", "pairing into R surjective", False,
                      note=f"trace ideal has dim {i.dim} < {ctx.R.dim}")
        return report
    for cat in (catalog_r, catalog_s):
        if not cat.exhaustive:
            report.flag(f"sampled catalog: {cat.provenance}")
    t_i, t_j = context_theories(ctx)
    for idx, x in enumerate(catalog_r):
        subject = f"R-module[{idx}] (dim {x.dim})"
        report.record(subject, "closed for the trivial theory", is_closed(t_i, x))
        fx = hom_functor_to_s(ctx, x)
        report.record(subject, "image under hom functor is closed", is_closed(t_j, fx))
        cu = evaluation_counit(ctx, x)
        ok = cu.matrix.rows == cu.matrix.cols and cu.matrix.is_invertible()
        report.record(subject, "evaluation counit invertible", ok, witness=cu.matrix)
    return report


def is_I_projective_oracle(tt: TorsionTheory, p_mod: LeftModule, catalog: Catalog,
                           budget: int = DEFAULT_ENUM_BUDGET,
                           samples: int = 64, seed: int = 0) -> OracleVerdict:
    """Does every map from p_mod lift along quotients with ideal-killed
    kernels?  For each catalog module X and submodule K killed by the
    generating ideal, Hom(p_mod, X) -> Hom(p_mod, X/K) must be onto."""
    f = tt.algebra.field
    exhaustive = True
    failures = []
    for x in catalog:
        if x.algebra != tt.algebra:
            raise ValueError("catalog module over the wrong algebra")
        ann = annihilator(x, tt.ideal.basis.vectors)
        ann_mod = ann.as_module()
        try:
            inner_subs = [s.basis for s in enumerate_submodules(ann_mod, budget=budget)]
        except BudgetExceeded:
            inner_subs = [s.basis for s in sample_submodules(ann_mod, samples, seed)]
            exhaustive = False
        hom_px = hom_space(p_mod, x)
        for kb in inner_subs:
            k_basis = Basis.span(f, x.dim, [ann.basis.from_coords(v) for v in kb.vectors])
            quo, proj = quotient_module(x, k_basis)
            hom_pq = hom_space(p_mod, quo)
            if hom_pq.dim == 0:
                continue
            cols = []
            for g in hom_px.matrices:
                c = hom_pq.coords(proj @ g)
                if c is None:
                    raise AssertionError("projection left the hom space")
                cols.append(c)
            comp = Matrix.from_cols(f, cols, rows=hom_pq.dim)
            if Basis.span(f, comp.rows, comp.columns()).dim < hom_pq.dim:
                failures.append((x, k_basis))
    return OracleVerdict(not failures, exhaustive, tuple(failures))


def _projective_class_filter(report, tt, catalog, budget):
    members = []
    ideal = tt.ideal
    for i, p in enumerate(catalog):
        full = ideal_action_image(ideal, p).basis.dim == p.dim
        if not full:
            continue
        verdict = is_I_projective_oracle(tt, p, catalog, budget=budget)
        if not verdict.exhaustive:
            report.flag("sampled projectivity oracle")
        if verdict:
            members.append((i, p))
    return members


def verify_projective_equivalence(ctx: MoritaContext, catalog_r: Catalog, catalog_s: Catalog,
                                  budget: int = DEFAULT_ENUM_BUDGET,
                                  strict_sampling: bool = False) -> Report:
    """The tensor functors restrict to an equivalence between the classes
    of ideal-full, ideal-projective modules on the two sides; units are
    the eta and rho maps."""
    report = Report("projective class equivalence", strict_sampling)
    for cat in (catalog_r, catalog_s):
        if not cat.exhaustive:
            report.flag(f"sampled catalog: {cat.provenance}")
    t_i, t_j = context_theories(ctx)
    r_members = _projective_class_filter(report, t_i, catalog_r, budget)
    s_members = _projective_class_filter(report, t_j, catalog_s, budget)
    report.record("R side", "projective class size", True,
                  note=f"{len(r_members)} of {len(catalog_r)} qualify")
    report.record("S side", "projective class size", True,
                  note=f"{len(s_members)} of {len(catalog_s)} qualify")
    for i, p in r_members:
        subject = f"R-member[{i}] (dim {p.dim})"
        gp = tensor_over(ctx.R, ctx.N, p).as_left_module()
        full = ideal_action_image(t_j.ideal, gp).basis.dim == gp.dim
        proj = is_I_projective_oracle(t_j, gp, catalog_s, budget=budget)
        if not proj.exhaustive:
            report.flag("sampled projectivity oracle")
        report.record(subject, "tensor image in the projective class", full and bool(proj))
        em = eta_map(ctx, p)
        ok = em.matrix.rows == em.matrix.cols and em.matrix.is_invertible()
        report.record(subject, "eta invertible on member", ok, witness=em.matrix)
    for i, q in s_members:
        subject = f"S-member[{i}] (dim {q.dim})"
        fq = tensor_over(ctx.S, ctx.M, q).as_left_module()
        full = ideal_action_image(t_i.ideal, fq).basis.dim == fq.dim
        proj = is_I_projective_oracle(t_i, fq, catalog_r, budget=budget)
        if not proj.exhaustive:
            report.flag("sampled projectivity oracle")
        report.record(subject, "tensor image in the projective class", full and bool(proj))
        rm = rho_map(ctx, q)
        ok = rm.matrix.rows == rm.matrix.cols and rm.matrix.is_invertible()
        report.record(subject, "rho invertible on member", ok, witness=rm.matrix)
    return report
