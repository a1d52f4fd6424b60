"""Compact Lie algebras with exact structure constants.

An algebra is stored as a basis, a structure-constant tensor over
Q(sqrt(D)), an ad-invariant positive-definite inner product, and the
factor lambda relating that inner product to minus the Killing form on
the derived subalgebra.  Two builders matter here:

* ``build_su3(k, l)`` realizes su(3) abstractly in the 8-element basis
  (Z, X0, X1..X6) attached to the weighted circle with weights
  (k, l, -k-l); the 3x3 matrix realization is used only by test oracles.
* ``build_compact_from_rootsystem`` constructs the compact form of the
  algebra of a rank <= 2 root system from Chevalley data, fixing the
  cross-plane signs by a deterministic Jacobi-validated completion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property

import numpy as np

from . import exactlinalg as ela
from . import rootsys
from .scalars import (
    Quad,
    exact_div,
    exact_sqrt,
    format_scalar,
    is_exact,
    squarefree_decompose,
)


def _fzero(x) -> bool:
    return not x


class AlgebraValidationError(ValueError):
    pass


class CompactLieAlgebra:
    """Finite-dimensional compact (reductive) Lie algebra over Q(sqrt(D)).

    structure[i][j][k] is the e_k coefficient of [e_i, e_j].  The inner
    product must be ad-invariant and positive definite; on the derived
    subalgebra it equals lambda_minus_b * (-Killing) when that factor is
    recorded.
    """

    def __init__(
        self,
        name: str,
        basis_labels,
        structure,
        inner,
        lambda_minus_b=None,
        cartan_indices=(),
        root_map=None,
        field_d: int | None = None,
        validate: bool = True,
    ):
        self.name = name
        self.basis_labels = tuple(basis_labels)
        self.dim = len(self.basis_labels)
        self.structure = tuple(
            tuple(tuple(row) for row in plane) for plane in structure
        )
        self.inner = tuple(tuple(row) for row in inner)
        self.lambda_minus_b = lambda_minus_b
        self.cartan_indices = tuple(cartan_indices)
        self.root_map = dict(root_map or {})
        self.field_d = field_d
        if validate:
            self.validate()

    # -- basic tensors ------------------------------------------------

    @cached_property
    def _sparse(self):
        """{(i, j): [(k, c), ...]} for i < j with nonzero brackets."""
        out = {}
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                ent = [
                    (k, self.structure[i][j][k])
                    for k in range(n)
                    if not _fzero(self.structure[i][j][k])
                ]
                if ent:
                    out[(i, j)] = ent
        return out

    def _basis_bracket(self, i: int, j: int):
        if i == j:
            return []
        if i < j:
            return self._sparse.get((i, j), [])
        return [(k, -c) for k, c in self._sparse.get((j, i), [])]

    @cached_property
    def killing(self):
        """Killing matrix B_ij = tr(ad e_i ad e_j), exact."""
        n = self.dim
        B = [[Q(0)] * n for _ in range(n)]
        # ad(e_i) maps e_j to sum_k c[i][j][k] e_k
        for i in range(n):
            for j in range(i, n):
                tot = Q(0)
                for a in range(n):
                    for k, cik in self._basis_bracket(i, a):
                        cj = self.structure[j][k][a]
                        if not _fzero(cj):
                            tot = tot + cik * cj
                B[i][j] = tot
                B[j][i] = tot
        return tuple(tuple(row) for row in B)

    @cached_property
    def structure_np(self) -> np.ndarray:
        n = self.dim
        c = np.zeros((n, n, n))
        for (i, j), ent in self._sparse.items():
            for k, v in ent:
                c[i, j, k] = float(v)
                c[j, i, k] = -float(v)
        return c

    @cached_property
    def inner_np(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.inner])

    @cached_property
    def inner_diag(self):
        """Diagonal of the inner product; None when it is not diagonal."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                if i != j and not _fzero(self.inner[i][j]):
                    return None
        return tuple(self.inner[i][i] for i in range(n))

    # -- operations ----------------------------------------------------

    def bracket(self, x, y):
        """[x, y] in basis coordinates, exact when both inputs are exact."""
        n = self.dim
        if ela.all_exact(x) and ela.all_exact(y):
            out = [Q(0)] * n
            for (i, j), ent in self._sparse.items():
                xi, yj, xj, yi = x[i], y[j], x[j], y[i]
                if not ((xi and yj) or (xj and yi)):
                    continue
                f = xi * yj - xj * yi
                if not _fzero(f):
                    for k, c in ent:
                        out[k] = out[k] + f * c
            return out
        xv = np.asarray([float(v) for v in x])
        yv = np.asarray([float(v) for v in y])
        return list(np.einsum("ijk,i,j->k", self.structure_np, xv, yv))

    def ad_matrix(self, x):
        """Matrix of ad(x) acting on coordinates (rows = output index)."""
        n = self.dim
        m = [[Q(0)] * n for _ in range(n)]
        for (i, j), ent in self._sparse.items():
            if not _fzero(x[i]):
                for k, c in ent:
                    m[k][j] = m[k][j] + x[i] * c
            if not _fzero(x[j]):
                for k, c in ent:
                    m[k][i] = m[k][i] - x[j] * c
        return m

    def inner_product(self, x, y):
        diag = self.inner_diag
        if diag is not None:
            # zero factors are common (sparse brackets); skip their products
            return sum((a * d * b for a, d, b in zip(x, diag, y) if a and b), Q(0))
        return sum(
            (
                x[i] * self.inner[i][j] * y[j]
                for i in range(self.dim)
                for j in range(self.dim)
                if x[i] and y[j]
            ),
            Q(0),
        )

    def killing_product(self, x, y):
        K = self.killing
        return sum(
            (x[i] * K[i][j] * y[j] for i in range(self.dim) for j in range(self.dim)),
            Q(0),
        )

    @cached_property
    def center(self) -> "Subspace":
        rows = []
        n = self.dim
        for j in range(n):
            for k in range(n):
                rows.append([self.structure[i][j][k] for i in range(n)])
        return Subspace.from_vectors(self, ela.nullspace(rows), label="center")

    @cached_property
    def derived(self) -> "Subspace":
        full = Subspace.from_indices(self, range(self.dim), label="g")
        return module_product(self, full, full, label="[g,g]")

    # -- validation -----------------------------------------------------

    def jacobi_residual(self) -> list:
        """All nonzero Jacobi defects, as (i, j, k, coefficient list)."""
        n = self.dim
        bad = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, cab in self._basis_bracket(a, b):
                            for r, cmc in self._basis_bracket(m, c):
                                acc[r] = acc.get(r, Q(0)) + cab * cmc
                    if any(not _fzero(v) for v in acc.values()):
                        bad.append((i, j, k, acc))
        return bad

    def validate(self) -> None:
        n = self.dim
        if len(self.structure) != n or len(self.inner) != n:
            raise AlgebraValidationError("tensor dimensions do not match basis")
        for i in range(n):
            for j in range(n):
                if not _fzero(self.inner[i][j] - self.inner[j][i]):
                    raise AlgebraValidationError("inner product is not symmetric")
                for k in range(n):
                    if not _fzero(self.structure[i][j][k] + self.structure[j][i][k]):
                        raise AlgebraValidationError("structure tensor not antisymmetric")
        diag = self.inner_diag
        if diag is not None:
            if any(not d > 0 for d in diag):
                raise AlgebraValidationError("inner product not positive definite")
        else:
            # leading principal minors via exact elimination
            for m in range(1, n + 1):
                sub = [list(self.inner[i][:m]) for i in range(m)]
                if ela.rank(sub) < m:
                    raise AlgebraValidationError("inner product is singular")
        if self.jacobi_residual():
            raise AlgebraValidationError("Jacobi identity fails")
        # ad-invariance of the inner product: <[x,y],z> = -<y,[x,z]>
        for (i, j), ent in self._sparse.items():
            for k in range(n):
                lhs = sum((c * self.inner[m][k] for m, c in ent), Q(0))
                rhs = sum(
                    (c * self.inner[m][j] for m, c in self._basis_bracket(i, k)),
                    Q(0),
                )
                if not _fzero(lhs + rhs):
                    raise AlgebraValidationError("inner product is not ad-invariant")
        # decomposition g = center + [g,g], Killing kernel = center
        c_dim, d_dim = self.center.dim, self.derived.dim
        if c_dim + d_dim != n:
            raise AlgebraValidationError("center + derived do not span")
        K = self.killing
        for v in self.center.basis:
            img = ela.matvec([list(row) for row in K], list(v))
            if not ela.vec_is_zero(img):
                raise AlgebraValidationError("Killing form nonzero on the center")
        if self.lambda_minus_b is not None:
            lam = self.lambda_minus_b
            for u in self.derived.basis:
                for v in self.derived.basis:
                    want = -lam * self.killing_product(u, v)
                    got = self.inner_product(u, v)
                    if not _fzero(want - got):
                        raise AlgebraValidationError(
                            "inner product is not lambda * (-Killing) on [g,g]"
                        )

    def __repr__(self):
        return f"CompactLieAlgebra({self.name}, dim={self.dim})"


@dataclass(frozen=True)
class Subspace:
    """A subspace of a CompactLieAlgebra with an inner-orthogonal basis.

    The basis is kept pairwise orthogonal but unnormalized: normalizing
    would leave Q(sqrt(D)).  A float orthonormal view is available for
    numerical work.
    """

    parent: CompactLieAlgebra
    basis: tuple
    label: str = ""

    @classmethod
    def from_vectors(cls, parent, vectors, label: str = "") -> "Subspace":
        ortho = ela.gram_schmidt(
            [list(v) for v in vectors], parent.inner_product
        )
        return cls(parent=parent, basis=tuple(tuple(v) for v in ortho), label=label)

    @classmethod
    def from_indices(cls, parent, indices, label: str = "") -> "Subspace":
        vecs = []
        for i in indices:
            v = [Q(0)] * parent.dim
            v[i] = Q(1)
            vecs.append(v)
        return cls.from_vectors(parent, vecs, label=label)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        if not all(is_exact(x) for x in v):
            return ela.in_span([list(b) for b in self.basis], list(v))
        # the basis is orthogonal, so membership is a zero projection residual
        res = [x - p for x, p in zip(v, self.project(v))]
        return ela.vec_is_zero(res)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def project(self, v):
        out = [Q(0)] * self.parent.dim
        for b in self.basis:
            c = exact_div(
                self.parent.inner_product(v, b), self.parent.inner_product(b, b)
            )
            if not _fzero(c):
                out = [x + c * y for x, y in zip(out, b)]
        return out

    def coefficients(self, v):
        """Coordinates of the projection of v in this orthogonal basis."""
        return [
            exact_div(self.parent.inner_product(v, b), self.parent.inner_product(b, b))
            for b in self.basis
        ]

    def sum(self, other: "Subspace", label: str = "") -> "Subspace":
        return Subspace.from_vectors(
            self.parent, list(self.basis) + list(other.basis), label=label
        )

    def intersect(self, other: "Subspace", label: str = "") -> "Subspace":
        vecs = ela.intersect_spans(
            [list(b) for b in self.basis], [list(b) for b in other.basis]
        )
        return Subspace.from_vectors(self.parent, vecs, label=label)

    def orthogonal_complement(self, within: "Subspace | None" = None, label: str = "") -> "Subspace":
        amb = within or Subspace.from_indices(self.parent, range(self.parent.dim))
        vecs = []
        for v in amb.basis:
            w = [x - y for x, y in zip(v, self.project(v))]
            if not ela.vec_is_zero(w):
                vecs.append(w)
        return Subspace.from_vectors(self.parent, vecs, label=label)

    @cached_property
    def onb_np(self) -> np.ndarray:
        """Columns form a float basis orthonormal w.r.t. the inner product."""
        if self.dim == 0:
            return np.zeros((self.parent.dim, 0))
        cols = np.array([[float(x) for x in b] for b in self.basis]).T
        norms = []
        for idx in range(self.dim):
            b = self.basis[idx]
            norms.append(float(self.parent.inner_product(b, b)) ** 0.5)
        return cols / np.asarray(norms)[None, :]

    def __repr__(self):
        lab = self.label or "subspace"
        return f"Subspace({lab}, dim={self.dim})"


# -- module-level operations (spec names) --------------------------------


def bracket(L: CompactLieAlgebra, x, y):
    return L.bracket(x, y)


def module_product(L: CompactLieAlgebra, p: Subspace, q: Subspace, label: str = "") -> Subspace:
    """Span of all brackets [p, q], as a Subspace."""
    vecs = []
    for a in p.basis:
        for b in q.basis:
            v = L.bracket(a, b)
            if not ela.vec_is_zero(v):
                vecs.append(v)
    return Subspace.from_vectors(L, vecs, label=label or f"[{p.label},{q.label}]")


def is_subalgebra(L: CompactLieAlgebra, p: Subspace) -> bool:
    for a, b in itertools.combinations(p.basis, 2):
        if not p.contains(L.bracket(a, b)):
            return False
    return True


def centralizer(L: CompactLieAlgebra, p: Subspace, label: str = "") -> Subspace:
    """{x in g : [x, b] = 0 for all b in p}."""
    n = L.dim
    rows = []
    for b in p.basis:
        mats = [[Q(0)] * n for _ in range(n)]  # mats[k][i]
        for (i, j), ent in L._sparse.items():
            if not _fzero(b[j]):
                for k, c in ent:
                    mats[k][i] = mats[k][i] + c * b[j]
            if not _fzero(b[i]):
                for k, c in ent:
                    mats[k][j] = mats[k][j] - c * b[i]
        rows.extend(mats)
    return Subspace.from_vectors(L, ela.nullspace(rows), label=label or f"c({p.label})")


def normalizer(L: CompactLieAlgebra, p: Subspace, label: str = "") -> Subspace:
    """{x in g : [x, p] inside p}."""
    comp = p.orthogonal_complement()
    n = L.dim
    rows = []
    for b in p.basis:
        # [e_i, b] for each i, paired against complement basis vectors
        cols = []  # cols[i] = bracket vector
        for i in range(n):
            e = [Q(0)] * n
            e[i] = Q(1)
            cols.append(L.bracket(e, b))
        for w in comp.basis:
            rows.append([L.inner_product(cols[i], w) for i in range(n)])
    return Subspace.from_vectors(L, ela.nullspace(rows), label=label or f"n({p.label})")


# -- builders -------------------------------------------------------------


def build_su3(k: int = 2, l: int = 1) -> CompactLieAlgebra:
    """su(3) in the weighted-circle basis (Z, X0, X1..X6).

    Z generates the circle with integer weights (k, l, m), m = -k-l; X0
    is the unit Cartan direction orthogonal to Z; (X1, X2), (X3, X4),
    (X5, X6) span the three coordinate root planes.  The inner product
    is the trace form with B = -12 * inner; lambda = 1/12.
    """
    if (k, l) == (0, 0):
        raise ValueError("weights (0, 0) do not define a circle subgroup")
    m = -k - l
    L = k * k + l * l + m * m
    s, rem = squarefree_decompose(6 * L)
    field_d = None if rem == 1 else rem
    f = exact_sqrt(Q(2, 3 * L), field_d)  # |X0 normalization| = sqrt(2/(3L))
    n = 8
    c = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]

    def setb(i, j, comps):
        for kk, v in comps:
            c[i][j][kk] = v
            c[j][i][kk] = -v

    # plane data: (U index, V index, rate under Z, rate under X0)
    planes = [
        (2, 3, Q(k - l), -3 * f * m),
        (4, 5, Q(k - m), 3 * f * l),
        (6, 7, Q(l - m), -3 * f * k),
    ]
    for (u, v, rz, r0) in planes:
        setb(0, u, [(v, rz)])
        setb(0, v, [(u, -rz)])
        setb(1, u, [(v, r0)])
        setb(1, v, [(u, -r0)])
        setb(u, v, [(0, 2 * rz / L), (1, r0)])
    # cross-plane table of the six off-diagonal planes
    cross = [
        (2, 4, 6, -1), (2, 5, 7, -1), (2, 6, 4, 1), (2, 7, 5, 1),
        (3, 4, 7, 1), (3, 5, 6, -1), (3, 6, 5, 1), (3, 7, 4, -1),
        (4, 6, 2, -1), (4, 7, 3, 1), (5, 6, 3, -1), (5, 7, 2, -1),
    ]
    for i, j, kk, sgn in cross:
        setb(i, j, [(kk, Q(sgn))])

    inner = [[Q(0)] * n for _ in range(n)]
    inner[0][0] = Q(L, 2)
    for i in range(1, n):
        inner[i][i] = Q(1)

    root_map = {}
    for idx, (u, v, rz, r0) in enumerate(planes):
        vec = [Q(0)] * n
        vec[0] = 2 * rz / L
        vec[1] = r0
        root_map[f"theta{idx + 1}"] = (u, v, tuple(vec))

    labels = ("Z", "X0", "X1", "X2", "X3", "X4", "X5", "X6")
    return CompactLieAlgebra(
        name=f"su3[w=({k},{l},{m})]",
        basis_labels=labels,
        structure=c,
        inner=inner,
        lambda_minus_b=Q(1, 12),
        cartan_indices=(0, 1),
        root_map=root_map,
        field_d=field_d,
    )


def _chevalley_p(rs: rootsys.RootSystem, a, b) -> int:
    """Largest p with b - p*a a root (p >= 0 when b is a root)."""
    p = 0
    cur = tuple(x - y for x, y in zip(b, a))
    while rs.is_root(cur):
        p += 1
        cur = tuple(x - y for x, y in zip(cur, a))
    return p


def build_compact_from_rootsystem(
    rs: rootsys.RootSystem, cartan_basis=None
) -> CompactLieAlgebra:
    """Compact form from root data: basis (t_i; U_g, V_g per positive g).

    Bracket relations: [H, U_g] = <g, H> V_g, [H, V_g] = -<g, H> U_g,
    [U_g, V_g] = g, with <.,.> = -B.  Cross-plane constants come from
    Chevalley structure constants N = +-(p+1); the undetermined signs on
    sum-pairs of positive roots are fixed by trying sign vectors in a
    deterministic order and keeping the first that satisfies Jacobi.
    """
    pos = list(rs.positive)
    npos = len(pos)
    if cartan_basis is None:
        cartan_basis = ela.gram_schmidt([list(a) for a in rs.simple], ela.dot)
    tbasis = [tuple(Q(x) for x in v) for v in cartan_basis]
    r = len(tbasis)
    if r != rs.rank:
        raise ValueError("cartan basis does not span the root span")
    for u, v in itertools.combinations(tbasis, 2):
        if rs.inner(u, v) != 0:
            raise ValueError("cartan basis must be orthogonal")

    # field: all root norms must live in Q or a single Q(sqrt(d))
    d_set = set()
    for g in pos:
        q = rs.inner(g, g)
        _, rem = squarefree_decompose(q.numerator * q.denominator)
        if rem != 1:
            d_set.add(rem)
    if len(d_set) > 1:
        raise ValueError(f"root norms need several radicands {sorted(d_set)}")
    field_d = d_set.pop() if d_set else None

    n_of = {g: exact_sqrt(rs.inner(g, g), field_d) / 2 for g in pos}
    idx_of = {g: i for i, g in enumerate(pos)}
    dim = r + 2 * npos

    def u_idx(g):
        return r + 2 * idx_of[g]

    def v_idx(g):
        return r + 2 * idx_of[g] + 1

    def t_coords(g):
        """Coordinates of the root vector g in the orthogonal t-basis."""
        return [rs.inner(g, t) / rs.inner(t, t) for t in tbasis]

    sum_pairs = []  # (i, j) with pos[i] + pos[j] a root, i < j
    for i, j in itertools.combinations(range(npos), 2):
        s = tuple(x + y for x, y in zip(pos[i], pos[j]))
        if rs.is_root(s):
            sum_pairs.append((i, j))

    def assemble(signs):
        """Sparse bracket table {(i, j): [(k, coeff), ...]} for the signs."""
        Npos = {}
        for (i, j), eps in zip(sum_pairs, signs):
            a, b = pos[i], pos[j]
            val = Q(eps) * (_chevalley_p(rs, a, b) + 1)
            Npos[(a, b)] = val
            Npos[(b, a)] = -val
        table: dict = {}

        def add(i, j, k, coeff):
            if _fzero(coeff):
                return
            if i > j:
                i, j, coeff = j, i, -coeff
            table.setdefault((i, j), {})
            table[(i, j)][k] = table[(i, j)].get(k, Q(0)) + coeff

        for g in pos:
            gu, gv = u_idx(g), v_idx(g)
            for ti in range(r):
                rate = rs.inner(g, tbasis[ti])
                add(ti, gu, gv, rate)
                add(ti, gv, gu, -rate)
            for ti, coeff in enumerate(t_coords(g)):
                add(gu, gv, ti, coeff)
        for i, j in itertools.combinations(range(npos), 2):
            a, b = pos[i], pos[j]
            na, nb = n_of[a], n_of[b]
            au, av, bu, bv = u_idx(a), v_idx(a), u_idx(b), v_idx(b)
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s):
                S = na * nb * Npos[(a, b)] / n_of[s]
                su, sv = u_idx(s), v_idx(s)
                add(au, bu, su, S)
                add(av, bv, su, -S)
                add(au, bv, sv, S)
                add(av, bu, sv, S)
            diff = tuple(x - y for x, y in zip(a, b))
            if rs.is_root(diff):
                if diff in idx_of:  # a - b is positive
                    g = diff
                    Nab = -(rs.inner(g, g) / rs.inner(a, a)) * Npos[(b, g)]
                    D = na * nb * Nab / n_of[g]
                    gu, gv = u_idx(g), v_idx(g)
                    add(au, bu, gu, -D)
                    add(av, bv, gu, -D)
                    add(au, bv, gv, D)
                    add(av, bu, gv, -D)
                else:  # b - a is positive
                    g = tuple(-x for x in diff)
                    Nab = (rs.inner(g, g) / rs.inner(b, b)) * Npos[(g, a)]
                    D = na * nb * Nab / n_of[g]
                    gu, gv = u_idx(g), v_idx(g)
                    add(au, bu, gu, D)
                    add(av, bv, gu, D)
                    add(au, bv, gv, D)
                    add(av, bu, gv, -D)
        return {
            key: [(k, v) for k, v in sorted(comps.items()) if not _fzero(v)]
            for key, comps in table.items()
        }

    def jacobi_ok(table) -> bool:
        def bb(i, j):
            if i == j:
                return []
            if i < j:
                return table.get((i, j), [])
            return [(k, -c) for k, c in table.get((j, i), [])]

        touched = sorted({i for key in table for i in key})
        for i, j, k in itertools.combinations(touched, 3):
            acc: dict = {}
            for a, b, cc in ((i, j, k), (j, k, i), (k, i, j)):
                for m, cab in bb(a, b):
                    for rr, cmc in bb(m, cc):
                        acc[rr] = acc.get(rr, Q(0)) + cab * cmc
            if any(not _fzero(v) for v in acc.values()):
                return False
        return True

    chosen = None
    for signs in itertools.product((1, -1), repeat=len(sum_pairs)):
        table = assemble(signs)
        if jacobi_ok(table):
            chosen = table
            break
    if chosen is None:
        raise AlgebraValidationError("no Chevalley sign assignment satisfies Jacobi")

    c = [[[Q(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), comps in chosen.items():
        for k, v in comps:
            c[i][j][k] = v
            c[j][i][k] = -v

    inner = [[Q(0)] * dim for _ in range(dim)]
    for ti in range(r):
        inner[ti][ti] = rs.inner(tbasis[ti], tbasis[ti])
    for g in pos:
        inner[u_idx(g)][u_idx(g)] = Q(1)
        inner[v_idx(g)][v_idx(g)] = Q(1)

    labels = [f"t{i + 1}" for i in range(r)]
    for g in pos:
        lab = rs.label(g)
        labels.extend([f"U[{lab}]", f"V[{lab}]"])

    root_map = {}
    for g in pos:
        vec = [Q(0)] * dim
        for ti, coeff in enumerate(t_coords(g)):
            vec[ti] = coeff
        root_map[rs.label(g)] = (u_idx(g), v_idx(g), tuple(vec))

    return CompactLieAlgebra(
        name=f"compact[{rs.name}]",
        basis_labels=labels,
        structure=c,
        inner=inner,
        lambda_minus_b=Q(1),
        cartan_indices=tuple(range(r)),
        root_map=root_map,
        field_d=field_d,
    )


def build_su2() -> CompactLieAlgebra:
    """su(2) as the compact form of the A1 root system, inner = -B."""
    return build_compact_from_rootsystem(rootsys.build_a1())


def direct_sum(a: CompactLieAlgebra, b: CompactLieAlgebra, name: str = "") -> CompactLieAlgebra:
    if a.field_d is not None and b.field_d is not None and a.field_d != b.field_d:
        raise ValueError("cannot mix quadratic fields in a direct sum")
    n, m = a.dim, b.dim
    dim = n + m
    c = [[[Q(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), ent in a._sparse.items():
        for k, v in ent:
            c[i][j][k] = v
            c[j][i][k] = -v
    for (i, j), ent in b._sparse.items():
        for k, v in ent:
            c[n + i][n + j][n + k] = v
            c[n + j][n + i][n + k] = -v
    inner = [[Q(0)] * dim for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            inner[i][j] = a.inner[i][j]
    for i in range(m):
        for j in range(m):
            inner[n + i][n + j] = b.inner[i][j]
    lam = a.lambda_minus_b if a.lambda_minus_b == b.lambda_minus_b else None
    labels = [f"a.{x}" for x in a.basis_labels] + [f"b.{x}" for x in b.basis_labels]
    return CompactLieAlgebra(
        name=name or f"{a.name}(+){b.name}",
        basis_labels=labels,
        structure=c,
        inner=inner,
        lambda_minus_b=lam,
        field_d=a.field_d if a.field_d is not None else b.field_d,
    )


def abelian(n: int, name: str = "") -> CompactLieAlgebra:
    """Abelian algebra (torus factor) with identity inner product."""
    c = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
    inner = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
    return CompactLieAlgebra(
        name=name or f"torus{n}",
        basis_labels=[f"c{i + 1}" for i in range(n)],
        structure=c,
        inner=inner,
        lambda_minus_b=None,
    )


# -- exports ---------------------------------------------------------------


def bracket_table_csv(L: CompactLieAlgebra) -> str:
    """CSV rows i,j,k,c_ijk for the nonzero entries with i < j."""
    lines = ["i,j,k,c"]
    for (i, j) in sorted(L._sparse):
        for k, v in L._sparse[(i, j)]:
            lines.append(f"{i},{j},{k},{format_scalar(v)}")
    return "\n".join(lines) + "\n"


def to_json_dict(L: CompactLieAlgebra) -> dict:
    entries = []
    for (i, j) in sorted(L._sparse):
        for k, v in L._sparse[(i, j)]:
            entries.append([i, j, k, format_scalar(v)])
    return {
        "schema": "1",
        "name": L.name,
        "dim": L.dim,
        "field_radicand": L.field_d,
        "basis": list(L.basis_labels),
        "cartan_indices": list(L.cartan_indices),
        "inner": [[format_scalar(x) for x in row] for row in L.inner],
        "lambda_minus_b": (
            format_scalar(L.lambda_minus_b) if L.lambda_minus_b is not None else None
        ),
        "structure": entries,
    }
