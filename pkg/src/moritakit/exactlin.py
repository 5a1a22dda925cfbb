"""Exact linear algebra over GF(p) and the rationals.

Everything downstream (algebras, modules, tensor products, the verification
engine) reduces to the operations in this module.  Scalars are plain Python
ints in [0, p) for GF(p) and fractions.Fraction for the rationals; there is
no floating point anywhere, so comparisons are exact equality.

Reduced row echelon form is the canonical form throughout: a Basis stores
the RREF rows of the subspace it spans, which makes subspace equality plain
entrywise equality and makes every derived construction (kernels, quotients,
hom spaces, tensor quotients) deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence, Union

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """A prime field GF(p) with p < 2**16, or the rationals (p is None)."""

    __slots__ = ("p",)

    def __init__(self, p: Optional[int] = None):
        if p is not None:
            if not 2 <= p < 2 ** 16:
                raise ValueError(f"prime field order must be in [2, 2**16), got {p}")
            if not _is_prime(p):
                raise ValueError(f"field order {p} is not prime")
        self.p = p

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def zero(self) -> Scalar:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p is not None else Fraction(1)

    def of_int(self, n: int) -> Scalar:
        return n % self.p if self.p is not None else Fraction(n)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p is not None else 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def elements(self) -> Iterator[Scalar]:
        """All field elements, for GF(p) only (used by exhaustive searches)."""
        if self.p is None:
            raise ValueError("cannot enumerate the rationals")
        return iter(range(self.p))

    def parse(self, obj) -> Scalar:
        """Read a scalar from workspace JSON: int, or 'a/b' string over Q."""
        if self.p is not None:
            if not isinstance(obj, int) or isinstance(obj, bool):
                raise ValueError(f"GF({self.p}) scalar must be an int, got {obj!r}")
            return obj % self.p
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Fraction(obj)
        if isinstance(obj, str):
            return Fraction(obj)
        raise ValueError(f"rational scalar must be an int or 'a/b' string, got {obj!r}")

    def to_json(self, a: Scalar):
        if self.p is not None:
            return int(a)
        frac = Fraction(a)
        return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.p is not None else "QQ"


QQ = Field.rationals()


# vector helpers; vectors are plain tuples of scalars

def zero_vector(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def unit_vector(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(n))


def vec_add(field: Field, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field: Field, c: Scalar, v: Sequence[Scalar]) -> tuple:
    return tuple(field.mul(c, a) for a in v)


def vec_is_zero(field: Field, v: Sequence[Scalar]) -> bool:
    return all(field.is_zero(a) for a in v)


class Matrix:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries: Sequence[Sequence[Scalar]], cols: Optional[int] = None):
        rows = len(entries)
        if rows == 0:
            if cols is None:
                raise ValueError("a 0-row matrix needs an explicit column count")
            width = cols
        else:
            width = len(entries[0])
            if cols is not None and cols != width:
                raise ValueError(f"declared {cols} columns, rows have {width}")
        ent = []
        for r in entries:
            if len(r) != width:
                raise ValueError("ragged rows")
            ent.append(tuple(r))
        self.field = field
        self.rows = rows
        self.cols = width
        self.entries = tuple(ent)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [unit_vector(field, n, i) for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, [zero_vector(field, cols)] * rows, cols=cols)

    @classmethod
    def from_cols(cls, field: Field, cols: Sequence[Sequence[Scalar]], rows: Optional[int] = None) -> "Matrix":
        if not cols:
            if rows is None:
                raise ValueError("a 0-column matrix needs an explicit row count")
            return cls(field, [()] * rows, cols=0)
        height = len(cols[0])
        return cls(field, [tuple(c[i] for c in cols) for i in range(height)], cols=len(cols))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field})"

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.col(j) for j in range(self.cols)], cols=self.rows)

    def apply(self, v: Sequence[Scalar]) -> tuple:
        """Matrix-vector product, v being coordinates of the domain."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} against {self.cols} columns")
        f = self.field
        out = []
        for r in self.entries:
            acc = f.zero
            for a, b in zip(r, v):
                if not f.is_zero(a) and not f.is_zero(b):
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        ocols = other.transpose().entries
        ent = []
        for r in self.entries:
            row = []
            for c in ocols:
                acc = f.zero
                for a, b in zip(r, c):
                    if not f.is_zero(a) and not f.is_zero(b):
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            ent.append(tuple(row))
        return Matrix(f, ent, cols=other.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(f, [vec_add(f, a, b) for a, b in zip(self.entries, other.entries)], cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(f, [vec_sub(f, a, b) for a, b in zip(self.entries, other.entries)], cols=self.cols)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [tuple(f.neg(a) for a in r) for r in self.entries], cols=self.cols)

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        return Matrix(f, [vec_scale(f, c, r) for r in self.entries], cols=self.cols)

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for r in self.entries for a in r)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices invert")
        n = self.rows
        aug = hstack(self, Matrix.identity(self.field, n))
        red, pivots = rref(aug)
        if list(pivots) != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(self.field, [r[n:] for r in red.entries], cols=n)

    def to_json(self) -> dict:
        f = self.field
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[f.to_json(a) for a in r] for r in self.entries],
        }


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    return Matrix(a.field, [ra + rb for ra, rb in zip(a.entries, b.entries)], cols=a.cols + b.cols)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.cols:
        raise ValueError("column count mismatch")
    return Matrix(a.field, list(a.entries) + list(b.entries), cols=a.cols)


def rref(m: Matrix) -> tuple:
    """Reduced row echelon form.

    Returns:
        (R, pivots): R is the RREF of m, pivots the tuple of pivot column
        indices in increasing order.  Gauss-Jordan with exact arithmetic;
        pivots are normalized to 1 and cleared above and below.
    """
    f = m.field
    ent = [list(r) for r in m.entries]
    pivots = []
    prow = 0
    for col in range(m.cols):
        if prow >= m.rows:
            break
        sel = None
        for r in range(prow, m.rows):
            if not f.is_zero(ent[r][col]):
                sel = r
                break
        if sel is None:
            continue
        ent[prow], ent[sel] = ent[sel], ent[prow]
        inv = f.inv(ent[prow][col])
        ent[prow] = [f.mul(inv, a) for a in ent[prow]]
        for r in range(m.rows):
            if r != prow and not f.is_zero(ent[r][col]):
                c = ent[r][col]
                ent[r] = [f.sub(a, f.mul(c, b)) for a, b in zip(ent[r], ent[prow])]
        pivots.append(col)
        prow += 1
    return Matrix(f, ent, cols=m.cols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> "Basis":
    """Canonical basis of the right kernel {x : m@x = 0}."""
    red, pivots = rref(m)
    f = m.field
    free = [c for c in range(m.cols) if c not in pivots]
    vecs = []
    for c in free:
        v = [f.zero] * m.cols
        v[c] = f.one
        for i, p in enumerate(pivots):
            v[p] = f.neg(red.entries[i][c])
        vecs.append(tuple(v))
    return Basis.span(f, m.cols, vecs)


def solve(a: Matrix, b: Sequence[Scalar]) -> Optional[tuple]:
    """One solution of a@x = b with free coordinates set to zero, or None."""
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    aug = hstack(a, Matrix(a.field, [(x,) for x in b], cols=1))
    red, pivots = rref(aug)
    if a.cols in pivots:
        return None
    f = a.field
    x = [f.zero] * a.cols
    for i, p in enumerate(pivots):
        x[p] = red.entries[i][a.cols]
    return tuple(x)


class Basis:
    """A subspace of k^n held in canonical form.

    vectors are the nonzero RREF rows of any spanning set, so two Basis
    objects are equal exactly when they span the same subspace.
    """

    __slots__ = ("field", "ambient_dim", "vectors", "pivots")

    def __init__(self, field: Field, ambient_dim: int, vectors: tuple, pivots: tuple):
        self.field = field
        self.ambient_dim = ambient_dim
        self.vectors = vectors
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Sequence[Sequence[Scalar]]) -> "Basis":
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dim {ambient_dim}")
        if not vectors:
            return cls(field, ambient_dim, (), ())
        red, pivots = rref(Matrix(field, [tuple(v) for v in vectors], cols=ambient_dim))
        keep = red.entries[: len(pivots)]
        return cls(field, ambient_dim, tuple(keep), pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Basis":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Basis":
        return cls.span(field, ambient_dim, [unit_vector(field, ambient_dim, i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def reduce(self, v: Sequence[Scalar]) -> tuple:
        """Residue of v after eliminating all pivot coordinates."""
        f = self.field
        r = list(v)
        for vec, p in zip(self.vectors, self.pivots):
            c = r[p]
            if not f.is_zero(c):
                for j in range(self.ambient_dim):
                    r[j] = f.sub(r[j], f.mul(c, vec[j]))
        return tuple(r)

    def contains_vector(self, v: Sequence[Scalar]) -> bool:
        return vec_is_zero(self.field, self.reduce(v))

    def coords(self, v: Sequence[Scalar]) -> Optional[tuple]:
        """Coordinates of v in this basis, or None if v is outside the span."""
        if not self.contains_vector(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, coeffs: Sequence[Scalar]) -> tuple:
        f = self.field
        out = zero_vector(f, self.ambient_dim)
        for c, vec in zip(coeffs, self.vectors):
            if not f.is_zero(c):
                out = vec_add(f, out, vec_scale(f, c, vec))
        return out

    def contains(self, other: "Basis") -> bool:
        return all(self.contains_vector(v) for v in other.vectors)

    def matrix_cols(self) -> Matrix:
        """Inclusion matrix: ambient_dim x dim, columns are the basis vectors."""
        return Matrix.from_cols(self.field, list(self.vectors), rows=self.ambient_dim)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Basis)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.vectors == other.vectors
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.vectors))

    def __repr__(self) -> str:
        return f"Basis(dim {self.dim} in k^{self.ambient_dim})"


class SubspaceOps(NamedTuple):
    sum: Basis
    intersection: Basis
    equal: bool
    contains: bool


def basis_sum(u: Basis, v: Basis) -> Basis:
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise ValueError("subspaces of different ambient spaces")
    return Basis.span(u.field, u.ambient_dim, list(u.vectors) + list(v.vectors))


def basis_intersection(u: Basis, v: Basis) -> Basis:
    """Intersection via the kernel of the stacked system [U | -V]."""
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise ValueError("subspaces of different ambient spaces")
    f = u.field
    if u.dim == 0 or v.dim == 0:
        return Basis.zero(f, u.ambient_dim)
    stacked = hstack(u.matrix_cols(), -v.matrix_cols())
    ker = kernel_basis(stacked)
    vecs = [u.matrix_cols().apply(w[: u.dim]) for w in ker.vectors]
    return Basis.span(f, u.ambient_dim, vecs)


def subspace_ops(u: Basis, v: Basis) -> SubspaceOps:
    """Sum, intersection, equality, and containment (v inside u) in one call."""
    return SubspaceOps(
        sum=basis_sum(u, v),
        intersection=basis_intersection(u, v),
        equal=u == v,
        contains=u.contains(v),
    )


class QuotientStructure(NamedTuple):
    projection: Matrix  # quotient_dim x ambient_dim
    section: Matrix  # ambient_dim x quotient_dim
    dim: int
    nonpivots: tuple


def quotient_structure(u: Basis) -> QuotientStructure:
    """Projection and section for k^n / span(u).

    Quotient coordinates are the non-pivot standard coordinates of u's RREF,
    in increasing order; the section sends them back to the corresponding
    standard basis vectors, so projection(section) is the identity and the
    kernel of the projection is exactly span(u).
    """
    f = u.field
    n = u.ambient_dim
    nonpivots = tuple(c for c in range(n) if c not in u.pivots)
    proj_cols = []
    for j in range(n):
        r = u.reduce(unit_vector(f, n, j))
        proj_cols.append(tuple(r[c] for c in nonpivots))
    projection = Matrix.from_cols(f, proj_cols, rows=len(nonpivots))
    section = Matrix.from_cols(f, [unit_vector(f, n, c) for c in nonpivots], rows=n)
    return QuotientStructure(projection, section, len(nonpivots), nonpivots)
