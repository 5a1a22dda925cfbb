"""Morita contexts between two finite-dimensional algebras.

A context is (R, S, M, N, phi, psi): M an (R,S)-bimodule, N an (S,R)-
bimodule, phi: M (x)_S N -> R an (R,R)-bimodule map, psi: N (x)_R M -> S
an (S,S)-bimodule map, subject to the two compatibility identities

    phi(m (x) n).m' = m.psi(n (x) m')      psi(n (x) m).n' = n.phi(m (x) n')

Both tensor spaces are computed once per context with the canonical basis
convention from tensor_over, and phi/psi are stored as matrices on those
computed spaces.  Workspace files and the corner construction provide the
maps on the raw product basis; from_raw_maps checks well-definedness
(vanishing on the balancing relations) before pushing down.
"""

from __future__ import annotations

import itertools
import random
from typing import NamedTuple, Optional, Sequence

from .algebra import Algebra, Ideal, subalgebra_on_basis
from .exactlin import Basis, Matrix, kernel_basis, solve, vec_add, vec_scale, zero_vector
from .modules import (
    DEFAULT_ISO_EXHAUST,
    DEFAULT_ISO_SAMPLES,
    Bimodule,
    HomBasis,
    LeftModule,
    TensorProduct,
    hom_module,
    regular_bimodule,
    tensor_over,
)


class MoritaContext:
    __slots__ = ("R", "S", "M", "N", "MN", "NM", "phi", "psi")

    def __init__(self, R: Algebra, S: Algebra, M: Bimodule, N: Bimodule, phi: Matrix, psi: Matrix):
        if M.left_algebra != R or M.right_algebra != S:
            raise ValueError("M must be an (R, S)-bimodule")
        if N.left_algebra != S or N.right_algebra != R:
            raise ValueError("N must be an (S, R)-bimodule")
        MN = tensor_over(S, M, N)
        NM = tensor_over(R, N, M)
        if phi.rows != R.dim or phi.cols != MN.dim:
            raise ValueError(f"phi is {phi.rows}x{phi.cols}, want {R.dim}x{MN.dim}")
        if psi.rows != S.dim or psi.cols != NM.dim:
            raise ValueError(f"psi is {psi.rows}x{psi.cols}, want {S.dim}x{NM.dim}")
        self.R, self.S, self.M, self.N = R, S, M, N
        self.MN, self.NM = MN, NM
        self.phi, self.psi = phi, psi

    @classmethod
    def from_raw_maps(cls, R, S, M, N, phi_raw: Matrix, psi_raw: Matrix) -> "MoritaContext":
        """Build from maps given on the raw product bases.

        phi_raw columns are indexed (i, j) |-> i*dim(N)+j against M and N
        basis pairs; psi_raw likewise with N major.  Raises ValueError if a
        map fails to vanish on the balancing relations (not well-defined on
        the tensor quotient).
        """
        MN = tensor_over(S, M, N)
        NM = tensor_over(R, N, M)
        f = R.field
        for rel in MN.relations.vectors:
            if any(not f.is_zero(x) for x in phi_raw.apply(rel)):
                raise ValueError("phi is not well-defined on the tensor quotient")
        for rel in NM.relations.vectors:
            if any(not f.is_zero(x) for x in psi_raw.apply(rel)):
                raise ValueError("psi is not well-defined on the tensor quotient")
        return cls(R, S, M, N, phi_raw @ MN.section, psi_raw @ NM.section)

    def __repr__(self) -> str:
        return f"MoritaContext(R dim {self.R.dim}, S dim {self.S.dim}, M dim {self.M.dim}, N dim {self.N.dim})"


def validate_context(ctx: MoritaContext) -> list:
    """Bimodule-map conditions for phi and psi plus the two compatibility
    identities, checked on all basis triples.  Returns failure strings."""
    out = []
    R, S, M, N = ctx.R, ctx.S, ctx.M, ctx.N
    MN, NM = ctx.MN, ctx.NM
    for r in range(R.dim):
        e = R.basis_vector(r)
        if (ctx.phi @ MN.left_action[r]) != (R.left_mult_matrix(e) @ ctx.phi):
            out.append(f"phi fails left R-linearity at basis {r}")
        if (ctx.phi @ MN.right_action[r]) != (R.right_mult_matrix(e) @ ctx.phi):
            out.append(f"phi fails right R-linearity at basis {r}")
    for s in range(S.dim):
        e = S.basis_vector(s)
        if (ctx.psi @ NM.left_action[s]) != (S.left_mult_matrix(e) @ ctx.psi):
            out.append(f"psi fails left S-linearity at basis {s}")
        if (ctx.psi @ NM.right_action[s]) != (S.right_mult_matrix(e) @ ctx.psi):
            out.append(f"psi fails right S-linearity at basis {s}")
    f = R.field
    m_left = M.left_module()
    m_right = M.right_module()
    n_left = N.left_module()
    n_right = N.right_module()
    for i in range(M.dim):
        ei = _unit(f, M.dim, i)
        for j in range(N.dim):
            ej = _unit(f, N.dim, j)
            r = ctx.phi.apply(MN.pure_tensor(ei, ej))
            for k in range(M.dim):
                ek = _unit(f, M.dim, k)
                lhs = m_left.action_of(r).apply(ek)
                s = ctx.psi.apply(NM.pure_tensor(ej, ek))
                rhs = m_right.action_of(s).apply(ei)
                if lhs != rhs:
                    out.append(f"phi/psi compatibility in M fails at ({i}, {j}, {k})")
    for j in range(N.dim):
        ej = _unit(f, N.dim, j)
        for i in range(M.dim):
            ei = _unit(f, M.dim, i)
            s = ctx.psi.apply(NM.pure_tensor(ej, ei))
            for l in range(N.dim):
                el = _unit(f, N.dim, l)
                lhs = n_left.action_of(s).apply(el)
                r = ctx.phi.apply(MN.pure_tensor(ei, el))
                rhs = n_right.action_of(r).apply(ej)
                if lhs != rhs:
                    out.append(f"psi/phi compatibility in N fails at ({j}, {i}, {l})")
    return out


def _unit(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def corner_context(a: Algebra, e: Sequence) -> MoritaContext:
    """The context (A, eAe, Ae, eA, mult, mult) for an idempotent e."""
    if a.multiply(e, e) != tuple(e):
        raise ValueError("corner element is not idempotent")
    f = a.field
    s_basis = Basis.span(f, a.dim, [a.multiply(a.multiply(e, a.basis_vector(i)), e) for i in range(a.dim)])
    S, incl_s = subalgebra_on_basis(a, s_basis, e)

    m_basis = Basis.span(f, a.dim, [a.multiply(a.basis_vector(i), e) for i in range(a.dim)])
    n_basis = Basis.span(f, a.dim, [a.multiply(e, a.basis_vector(i)) for i in range(a.dim)])

    def restrict(space: Basis, mult) -> Matrix:
        cols = []
        for v in space.vectors:
            c = space.coords(mult(v))
            if c is None:
                raise AssertionError("corner subspace is not stable")
            cols.append(c)
        return Matrix.from_cols(f, cols, rows=space.dim)

    m_left = [restrict(m_basis, lambda v, x=a.basis_vector(i): a.multiply(x, v)) for i in range(a.dim)]
    m_right = [restrict(m_basis, lambda v, x=incl_s.col(t): a.multiply(v, x)) for t in range(S.dim)]
    M = Bimodule(a, S, m_basis.dim, m_left, m_right)

    n_left = [restrict(n_basis, lambda v, x=incl_s.col(t): a.multiply(x, v)) for t in range(S.dim)]
    n_right = [restrict(n_basis, lambda v, x=a.basis_vector(i): a.multiply(v, x)) for i in range(a.dim)]
    N = Bimodule(S, a, n_basis.dim, n_left, n_right)

    phi_cols = []
    for i in range(m_basis.dim):
        for j in range(n_basis.dim):
            phi_cols.append(a.multiply(m_basis.vectors[i], n_basis.vectors[j]))
    phi_raw = Matrix.from_cols(f, phi_cols, rows=a.dim)

    psi_cols = []
    for j in range(n_basis.dim):
        for i in range(m_basis.dim):
            prod = s_basis.coords(a.multiply(n_basis.vectors[j], m_basis.vectors[i]))
            if prod is None:
                raise AssertionError("corner product left eAe")
            psi_cols.append(prod)
    psi_raw = Matrix.from_cols(f, psi_cols, rows=S.dim)

    ctx = MoritaContext.from_raw_maps(a, S, M, N, phi_raw, psi_raw)
    bad = validate_context(ctx)
    if bad:
        raise AssertionError(f"corner context failed validation: {bad[:3]}")
    return ctx


def identity_context(a: Algebra) -> MoritaContext:
    """The context (A, A, A, A, mult, mult)."""
    bim = regular_bimodule(a)
    cols = [a.mul[i][j] for i in range(a.dim) for j in range(a.dim)]
    raw = Matrix.from_cols(a.field, cols, rows=a.dim)
    ctx = MoritaContext.from_raw_maps(a, a, bim, bim, raw, raw)
    bad = validate_context(ctx)
    if bad:
        raise AssertionError(f"identity context failed validation: {bad[:3]}")
    return ctx


def reverse_context(ctx: MoritaContext) -> MoritaContext:
    """Swap the roles of the two algebras: (S, R, N, M, psi, phi)."""
    return MoritaContext(ctx.S, ctx.R, ctx.N, ctx.M, ctx.psi, ctx.phi)


def trace_ideals(ctx: MoritaContext) -> tuple:
    """(image of phi in R, image of psi in S); always two-sided ideals."""
    i_basis = Basis.span(ctx.R.field, ctx.R.dim, ctx.phi.columns())
    j_basis = Basis.span(ctx.S.field, ctx.S.dim, ctx.psi.columns())
    return Ideal(ctx.R, i_basis), Ideal(ctx.S, j_basis)


def is_strict(ctx: MoritaContext) -> bool:
    i, j = trace_ideals(ctx)
    return i.dim == ctx.R.dim and j.dim == ctx.S.dim


class NaturalMap(NamedTuple):
    """A component of eta or rho at a module X: the matrix of the canonical
    map together with the tensor plumbing needed for naturality squares."""

    matrix: Matrix  # X.dim x outer.dim
    outer: TensorProduct  # M (x) inner  (resp. N (x) inner)
    inner: TensorProduct  # N (x) X      (resp. M (x) Y)


def eta_map(ctx: MoritaContext, x: LeftModule) -> NaturalMap:
    """eta(X): M (x)_S N (x)_R X -> X sending m (x) n (x) x to phi(m (x) n).x."""
    if x.algebra != ctx.R:
        raise ValueError("eta expects a left module over R")
    inner = tensor_over(ctx.R, ctx.N, x)
    outer = tensor_over(ctx.S, ctx.M, inner.as_left_module())
    return NaturalMap(_eval_through(ctx, ctx.phi, ctx.MN, ctx.M.dim, ctx.N.dim, x, inner, outer), outer, inner)


def rho_map(ctx: MoritaContext, y: LeftModule) -> NaturalMap:
    """rho(Y): N (x)_R M (x)_S Y -> Y sending n (x) m (x) y to psi(n (x) m).y."""
    if y.algebra != ctx.S:
        raise ValueError("rho expects a left module over S")
    inner = tensor_over(ctx.S, ctx.M, y)
    outer = tensor_over(ctx.R, ctx.N, inner.as_left_module())
    return NaturalMap(_eval_through(ctx, ctx.psi, ctx.NM, ctx.N.dim, ctx.M.dim, y, inner, outer), outer, inner)


def _eval_through(ctx, pairing: Matrix, pair_tensor: TensorProduct, a_dim: int, b_dim: int,
                  x: LeftModule, inner: TensorProduct, outer: TensorProduct) -> Matrix:
    # column for each computed outer basis vector: unfold through both
    # sections, pair the first two tensor legs, act on the third
    f = x.algebra.field
    acts = {}
    for i in range(a_dim):
        ei = _unit(f, a_dim, i)
        for j in range(b_dim):
            ej = _unit(f, b_dim, j)
            acts[(i, j)] = x.action_of(pairing.apply(pair_tensor.pure_tensor(ei, ej)))
    cols = []
    for b in range(outer.dim):
        v = outer.section.col(b)
        out = zero_vector(f, x.dim)
        for i in range(a_dim):
            for c in range(inner.dim):
                coeff = v[i * inner.dim + c]
                if f.is_zero(coeff):
                    continue
                w = inner.section.col(c)
                for j in range(b_dim):
                    for k in range(x.dim):
                        co = w[j * x.dim + k]
                        if f.is_zero(co):
                            continue
                        out = vec_add(f, out, vec_scale(f, f.mul(coeff, co), acts[(i, j)].col(k)))
        cols.append(out)
    return Matrix.from_cols(f, cols, rows=x.dim)


class AdjointUnit(NamedTuple):
    """eta'(X): X -> Hom_S(N, Hom_R(M, X)) (or its rho' mirror), with the
    intermediate hom modules it factors through."""

    matrix: Matrix  # target.dim x X.dim
    target: LeftModule
    inner_module: LeftModule
    inner_hom: HomBasis
    outer_hom: HomBasis


def eta_prime_map(ctx: MoritaContext, x: LeftModule) -> AdjointUnit:
    """x |-> (n |-> (m |-> phi(m (x) n).x)), the closed-object comparison."""
    if x.algebra != ctx.R:
        raise ValueError("eta' expects a left module over R")
    f = ctx.R.field
    h1_mod, h1 = hom_module(ctx.M, x)
    h2_mod, h2 = hom_module(ctx.N, h1_mod)
    cols = []
    for k in range(x.dim):
        inner_cols = []
        for j in range(ctx.N.dim):
            ej = _unit(f, ctx.N.dim, j)
            mat_cols = []
            for i in range(ctx.M.dim):
                ei = _unit(f, ctx.M.dim, i)
                r = ctx.phi.apply(ctx.MN.pure_tensor(ei, ej))
                mat_cols.append(x.action_of(r).col(k))
            fjk = Matrix.from_cols(f, mat_cols, rows=x.dim)
            c = h1.coords(fjk)
            if c is None:
                raise AssertionError("eta' image escaped Hom_R(M, X)")
            inner_cols.append(c)
        gk = Matrix.from_cols(f, inner_cols, rows=h1.dim)
        c2 = h2.coords(gk)
        if c2 is None:
            raise AssertionError("eta' image escaped Hom_S(N, -)")
        cols.append(c2)
    return AdjointUnit(Matrix.from_cols(f, cols, rows=h2.dim), h2_mod, h1_mod, h1, h2)


def rho_prime_map(ctx: MoritaContext, y: LeftModule) -> AdjointUnit:
    """y |-> (m |-> (n |-> psi(n (x) m).y)), the S-side mirror of eta'."""
    if y.algebra != ctx.S:
        raise ValueError("rho' expects a left module over S")
    f = ctx.S.field
    k1_mod, k1 = hom_module(ctx.N, y)
    k2_mod, k2 = hom_module(ctx.M, k1_mod)
    cols = []
    for l in range(y.dim):
        inner_cols = []
        for i in range(ctx.M.dim):
            ei = _unit(f, ctx.M.dim, i)
            mat_cols = []
            for j in range(ctx.N.dim):
                ej = _unit(f, ctx.N.dim, j)
                s = ctx.psi.apply(ctx.NM.pure_tensor(ej, ei))
                mat_cols.append(y.action_of(s).col(l))
            gil = Matrix.from_cols(f, mat_cols, rows=y.dim)
            c = k1.coords(gil)
            if c is None:
                raise AssertionError("rho' image escaped Hom_S(N, Y)")
            inner_cols.append(c)
        hk = Matrix.from_cols(f, inner_cols, rows=k1.dim)
        c2 = k2.coords(hk)
        if c2 is None:
            raise AssertionError("rho' image escaped Hom_R(M, -)")
        cols.append(c2)
    return AdjointUnit(Matrix.from_cols(f, cols, rows=k2.dim), k2_mod, k1_mod, k1, k2)


class Counit(NamedTuple):
    matrix: Matrix  # X.dim x tensor.dim
    tensor: TensorProduct
    hom_module: LeftModule
    hom: HomBasis


def evaluation_counit(ctx: MoritaContext, x: LeftModule) -> Counit:
    """M (x)_S Hom_R(M, X) -> X by evaluation m (x) f |-> f(m)."""
    if x.algebra != ctx.R:
        raise ValueError("evaluation expects a left module over R")
    f = ctx.R.field
    h_mod, h = hom_module(ctx.M, x)
    t = tensor_over(ctx.S, ctx.M, h_mod)
    cols = []
    for i in range(ctx.M.dim):
        for a in range(h.dim):
            cols.append(h.matrices[a].col(i))
    raw = Matrix.from_cols(f, cols, rows=x.dim)
    return Counit(raw @ t.section, t, h_mod, h)


def compose_contexts(first: MoritaContext, second: MoritaContext) -> MoritaContext:
    """The composite context between first.R and second.S.

    Bimodules are M1 (x)_S M2 and N2 (x)_S N1 (S the shared middle
    algebra); the new pairings thread one pairing through the other.
    """
    if first.S != second.R:
        raise ValueError("contexts do not share a middle algebra")
    R, S, T = first.R, first.S, second.S
    f = R.field
    m_t = tensor_over(S, first.M, second.M)
    n_t = tensor_over(S, second.N, first.N)
    M2 = m_t.as_bimodule()
    N2 = n_t.as_bimodule()

    n1_left = first.N.left_module()
    n2_right = second.N.right_module()

    phi_cols = []
    for a in range(M2.dim):
        va = m_t.section.col(a)
        for b in range(N2.dim):
            vb = n_t.section.col(b)
            acc = zero_vector(f, R.dim)
            for i in range(first.M.dim):
                for ip in range(second.M.dim):
                    ca = va[i * second.M.dim + ip]
                    if f.is_zero(ca):
                        continue
                    for jp in range(second.N.dim):
                        for j in range(first.N.dim):
                            cb = vb[jp * first.N.dim + j]
                            if f.is_zero(cb):
                                continue
                            s = second.phi.apply(second.MN.pure_tensor(
                                _unit(f, second.M.dim, ip), _unit(f, second.N.dim, jp)))
                            nbar = n1_left.action_of(s).apply(_unit(f, first.N.dim, j))
                            r = first.phi.apply(first.MN.pure_tensor(_unit(f, first.M.dim, i), nbar))
                            acc = vec_add(f, acc, vec_scale(f, f.mul(ca, cb), r))
            phi_cols.append(acc)
    phi_raw = Matrix.from_cols(f, phi_cols, rows=R.dim)

    psi_cols = []
    for b in range(N2.dim):
        vb = n_t.section.col(b)
        for a in range(M2.dim):
            va = m_t.section.col(a)
            acc = zero_vector(f, T.dim)
            for jp in range(second.N.dim):
                for j in range(first.N.dim):
                    cb = vb[jp * first.N.dim + j]
                    if f.is_zero(cb):
                        continue
                    for i in range(first.M.dim):
                        for ip in range(second.M.dim):
                            ca = va[i * second.M.dim + ip]
                            if f.is_zero(ca):
                                continue
                            s = first.psi.apply(first.NM.pure_tensor(
                                _unit(f, first.N.dim, j), _unit(f, first.M.dim, i)))
                            nbar = n2_right.action_of(s).apply(_unit(f, second.N.dim, jp))
                            t_val = second.psi.apply(second.NM.pure_tensor(nbar, _unit(f, second.M.dim, ip)))
                            acc = vec_add(f, acc, vec_scale(f, f.mul(ca, cb), t_val))
            psi_cols.append(acc)
    psi_raw = Matrix.from_cols(f, psi_cols, rows=T.dim)

    return MoritaContext.from_raw_maps(R, T, M2, N2, phi_raw, psi_raw)


def bimodule_hom_space(a: Bimodule, b: Bimodule) -> HomBasis:
    """Maps intertwining both the left and the right actions."""
    if a.left_algebra != b.left_algebra or a.right_algebra != b.right_algebra:
        raise ValueError("bimodules over different algebra pairs")
    f = a.left_algebra.field
    sd, td = a.dim, b.dim
    nvars = sd * td
    rows = []
    for acts_a, acts_b in ((a.left_action, b.left_action), (a.right_action, b.right_action)):
        for mat_a, mat_b in zip(acts_a, acts_b):
            As, At = mat_a.entries, mat_b.entries
            for r in range(td):
                for c in range(sd):
                    row = [f.zero] * nvars
                    for k in range(td):
                        row[k * sd + c] = f.add(row[k * sd + c], At[r][k])
                    for k in range(sd):
                        row[r * sd + k] = f.sub(row[r * sd + k], As[k][c])
                    rows.append(row)
    basis = kernel_basis(Matrix(f, rows, cols=nvars)) if rows else Basis.full(f, nvars)
    return HomBasis(a.left_module(), b.left_module(), basis)


class ContextIsoResult:
    __slots__ = ("u", "v", "exhaustive")

    def __init__(self, u: Optional[Matrix], v: Optional[Matrix], exhaustive: bool):
        self.u = u
        self.v = v
        self.exhaustive = exhaustive

    @property
    def found(self) -> bool:
        return self.u is not None

    @property
    def proven_none(self) -> bool:
        return self.u is None and self.exhaustive


def contexts_isomorphic(c1: MoritaContext, c2: MoritaContext,
                        samples: int = DEFAULT_ISO_SAMPLES, seed: int = 0,
                        exhaust: int = DEFAULT_ISO_EXHAUST) -> ContextIsoResult:
    """Search for bimodule isos u: M1 -> M2, v: N1 -> N2 carrying one
    pairing pair to the other: phi2 (u (x) v) = phi1, psi2 (v (x) u) = psi1.

    Trace ideals are isomorphism invariants, so unequal trace ideals are an
    immediate proven 'none'.  For each invertible u-candidate (enumerated
    with the module iso policy) the compatibility conditions are linear in
    v, so v is solved for rather than searched.
    """
    if c1.R != c2.R or c1.S != c2.S:
        raise ValueError("context isomorphism needs matching algebra pairs")
    i1, j1 = trace_ideals(c1)
    i2, j2 = trace_ideals(c2)
    if i1.basis != i2.basis or j1.basis != j2.basis:
        return ContextIsoResult(None, None, True)
    if c1.M.dim != c2.M.dim or c1.N.dim != c2.N.dim:
        return ContextIsoResult(None, None, True)
    f = c1.R.field
    hom_u = bimodule_hom_space(c1.M, c2.M)
    hom_v = bimodule_hom_space(c1.N, c2.N)
    if hom_u.dim == 0 or hom_v.dim == 0:
        if c1.M.dim == 0 and c1.N.dim == 0:
            zero = Matrix.zeros(f, 0, 0)
            return ContextIsoResult(zero, zero, True)
        return ContextIsoResult(None, None, True)

    rng = random.Random(seed)

    def try_u(u: Matrix):
        if not u.is_invertible():
            return None
        # solve for v: stack phi2 (u (x) v_b) and psi2 (v_b (x) u) over the
        # v-basis, match against phi1 / psi1
        cols = []
        for vb in hom_v.matrices:
            left = c2.phi @ c1.MN.induced_map(c2.MN, u, vb)
            right = c2.psi @ c1.NM.induced_map(c2.NM, vb, u)
            cols.append(tuple(x for row in left.entries for x in row)
                        + tuple(x for row in right.entries for x in row))
        target = tuple(x for row in c1.phi.entries for x in row) + tuple(
            x for row in c1.psi.entries for x in row)
        system = Matrix.from_cols(f, cols, rows=len(target))
        sol = solve(system, target)
        if sol is None:
            return None
        v = hom_v.from_coords(sol)
        if v.is_invertible():
            return v
        # degenerate pairings leave slack: walk the affine solution space
        # for an invertible representative
        ker = kernel_basis(system)
        if ker.dim == 0:
            return None
        if f.is_prime_field and f.p ** ker.dim <= 256:
            scalars = [f.of_int(t) for t in range(f.p)]
            for combo in itertools.product(scalars, repeat=ker.dim):
                cand = hom_v.from_coords(vec_add(f, sol, ker.from_coords(combo)))
                if cand.is_invertible():
                    return cand
        else:
            for _ in range(64):
                if f.is_prime_field:
                    combo = [f.of_int(rng.randrange(f.p)) for _ in range(ker.dim)]
                else:
                    combo = [f.of_int(rng.randint(-3, 3)) for _ in range(ker.dim)]
                cand = hom_v.from_coords(vec_add(f, sol, ker.from_coords(combo)))
                if cand.is_invertible():
                    return cand
        return None

    d = hom_u.dim
    if f.is_prime_field and f.p ** d <= exhaust:
        scalars = [f.of_int(t) for t in range(f.p)]
        for coeffs in itertools.product(scalars, repeat=d):
            if all(f.is_zero(c) for c in coeffs):
                continue
            u = hom_u.from_coords(coeffs)
            v = try_u(u)
            if v is not None:
                return ContextIsoResult(u, v, True)
        return ContextIsoResult(None, None, True)
    for _ in range(samples):
        if f.is_prime_field:
            coeffs = [f.of_int(rng.randrange(f.p)) for _ in range(d)]
        else:
            coeffs = [f.of_int(rng.randint(-3, 3)) for _ in range(d)]
        u = hom_u.from_coords(coeffs)
        v = try_u(u)
        if v is not None:
            return ContextIsoResult(u, v, False)
    return ContextIsoResult(None, None, False)
