"""Geodesic-orbit feasibility checks.

For a reductive homogeneous space with invariant metric g(u, v) =
<A u, v>, a direction X in the tangent space is a geodesic-orbit
direction iff a compensator Z in the isotropy algebra exists with

    <[X + Z, Y]_m, A X> = 0   for all Y in m.

That is a linear system in Z, so feasibility is decided by linear
algebra: exactly (rank comparison over Q(sqrt(D))) when the inputs are
exact, numerically (least squares plus singular-value analysis)
otherwise, with an arbitrary-precision retry in the ambiguous band.

Three equivalent front-ends are provided: the direct system over the
isotropy algebra, a reduced system that may include extra isometry
generators, and the normal-form system that searches for a bracket
compensator in the centralizer of the isotropy algebra.  A left-
invariant metric on the group itself is handled by
``lie_group_go_check`` via the commutation kernel of the metric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q

import mpmath as mp
import numpy as np

from . import exactlinalg as ela
from .liealg import CompactLieAlgebra, Subspace, centralizer, is_subalgebra
from .metrics import MetricEndomorphism, ModuleDecomposition, max_right_isometry_algebra
from .scalars import format_scalar, is_exact


class SpaceValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Decision thresholds for float feasibility.

    A system counts as feasible when the relative residual of the least
    squares solution is at most ``feasible_rel``; as infeasible when the
    relative residual is at least ``infeasible_rel`` and the singular
    value spectrum is trustworthy (smallest kept singular value at least
    ``sigma_ratio`` times the largest).  Anything between is retried at
    ``escalate_dps`` decimal digits, and stays indeterminate if the
    retry still lands in the gap.
    """

    feasible_rel: float = 1e-9
    infeasible_rel: float = 1e-3
    sigma_ratio: float = 1e-6
    escalate_dps: int = 50


@dataclass(frozen=True)
class ReductiveSpace:
    """Homogeneous-space data: algebra, isotropy subalgebra, complement.

    The complement must satisfy [isotropy, complement] inside complement
    and span the algebra together with the isotropy.
    """

    algebra: CompactLieAlgebra
    isotropy: Subspace
    complement: Subspace
    name: str = ""

    def __post_init__(self):
        L = self.algebra
        h, m = self.isotropy, self.complement
        if h.parent is not L or m.parent is not L:
            raise SpaceValidationError("subspaces belong to a different algebra")
        if h.dim + m.dim != L.dim:
            raise SpaceValidationError("isotropy and complement do not sum to g")
        joint = list(h.basis) + list(m.basis)
        if ela.span_rank([list(v) for v in joint]) != L.dim:
            raise SpaceValidationError("isotropy and complement overlap")
        if h.dim and not is_subalgebra(L, h):
            raise SpaceValidationError("isotropy is not a subalgebra")
        for w in h.basis:
            for y in m.basis:
                if not m.contains(L.bracket(w, y)):
                    raise SpaceValidationError("complement is not ad(isotropy)-invariant")

    @property
    def is_orthogonal(self) -> bool:
        for u in self.isotropy.basis:
            for v in self.complement.basis:
                if self.algebra.inner_product(u, v):
                    return False
        return True


@dataclass(frozen=True)
class FeasibilityResult:
    status: str  # "feasible" | "infeasible" | "indeterminate"
    residual_rel: float
    witness: tuple | None
    method: str  # "exact" | "float" | "mpmath"
    sigma_ratio: float | None = None
    detail: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def _float_rows(rows):
    return np.array([[float(x) for x in r] for r in rows], dtype=float)


def _lstsq_stats(Mf: np.ndarray, bf: np.ndarray, scale_hint: float = 0.0):
    z, *_ = np.linalg.lstsq(Mf, bf, rcond=None)
    resid = Mf @ z - bf
    mnorm = float(np.linalg.norm(Mf, "fro")) if Mf.size else 0.0
    # residuals are judged against the natural magnitude of the system,
    # not just |b|: b can be pure rounding noise (e.g. bi-invariant
    # metrics, where the exact right side vanishes identically)
    denom = max(
        float(np.linalg.norm(bf)),
        mnorm * float(np.linalg.norm(z)),
        mnorm * scale_hint,
    )
    rel = float(np.linalg.norm(resid)) / denom if denom > 0 else 0.0
    s = np.linalg.svd(Mf, compute_uv=False) if Mf.size else np.array([])
    if s.size and s[0] > 0:
        cutoff = max(Mf.shape) * np.finfo(float).eps * s[0]
        kept = s[s > cutoff]
        sratio = float(kept[-1] / s[0]) if kept.size else None
    else:
        sratio = None
    return z, rel, sratio


def _mpmath_retry(Mf: np.ndarray, bf: np.ndarray, dps: int, scale_hint: float = 0.0):
    """Least squares through an SVD at dps digits; returns (z, rel)."""
    old = mp.mp.dps
    try:
        mp.mp.dps = dps
        A = mp.matrix(Mf.tolist())
        b = mp.matrix([[v] for v in bf.tolist()])
        U, S, V = mp.svd_r(A)
        smax = max((S[i] for i in range(S.rows)), default=mp.mpf(0))
        z = mp.matrix(A.cols, 1)
        if smax > 0:
            cut = smax * mp.mpf(10) ** (-(dps - 10))
            Utb = U.T * b
            y = mp.matrix(S.rows, 1)
            for i in range(S.rows):
                y[i] = Utb[i] / S[i] if S[i] > cut else mp.mpf(0)
            z = V.T * y
        r = A * z - b
        rnorm = mp.norm(r)
        mnorm = mp.mnorm(A, "f")
        denom = max(mp.norm(b), mnorm * mp.norm(z), mnorm * mp.mpf(scale_hint))
        rel = float(rnorm / denom) if denom > 0 else 0.0
        return [float(z[i]) for i in range(z.rows)], rel
    finally:
        mp.mp.dps = old


def solve_linear_feasibility(
    rows, rhs, tolerances: Tolerances | None = None, scale_hint: float = 0.0
) -> FeasibilityResult:
    """Decide solvability of (rows) z = rhs.

    Exact inputs get an exact rank decision.  Float inputs go through
    least squares with the threshold policy from ``tolerances``;
    scale_hint carries the natural magnitude of the unknowns (for the
    geodesic systems, the background norm of the sampled direction) so
    the relative residual is invariant under scaling the direction or
    the metric.
    """
    tol = tolerances or Tolerances()
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    exact = all(ela.all_exact(r) for r in rows) and ela.all_exact(rhs)
    if nrows == 0:
        return FeasibilityResult("feasible", 0.0, tuple([Q(0)] * ncols), "exact" if exact else "float")
    if exact:
        sol = ela.solve([list(r) for r in rows], list(rhs))
        if sol is not None:
            return FeasibilityResult(
                "feasible", 0.0, tuple(sol), "exact",
                detail={"certificate": "exact-solution"},
            )
        rank_m = ela.rank([list(r) for r in rows])
        aug = [list(r) + [v] for r, v in zip(rows, rhs)]
        rank_aug = ela.rank(aug)
        # informative float residual for the report
        _, rel, sratio = _lstsq_stats(
            _float_rows(rows), np.array([float(v) for v in rhs]), scale_hint
        )
        return FeasibilityResult(
            "infeasible", rel, None, "exact", sigma_ratio=sratio,
            detail={"certificate": "exact-rank", "rank": rank_m, "rank_augmented": rank_aug},
        )
    Mf = _float_rows(rows)
    bf = np.array([float(v) for v in rhs], dtype=float)
    if not np.linalg.norm(bf):
        return FeasibilityResult("feasible", 0.0, tuple([0.0] * ncols), "float")
    z, rel, sratio = _lstsq_stats(Mf, bf, scale_hint)
    if rel <= tol.feasible_rel:
        return FeasibilityResult("feasible", rel, tuple(float(v) for v in z), "float", sigma_ratio=sratio)
    trusted = sratio is None or sratio >= tol.sigma_ratio
    if rel >= tol.infeasible_rel and trusted:
        return FeasibilityResult("infeasible", rel, None, "float", sigma_ratio=sratio)
    z2, rel2 = _mpmath_retry(Mf, bf, tol.escalate_dps, scale_hint)
    if rel2 <= tol.feasible_rel:
        return FeasibilityResult("feasible", rel2, tuple(z2), "mpmath", sigma_ratio=sratio)
    if rel2 >= tol.infeasible_rel and trusted:
        return FeasibilityResult("infeasible", rel2, None, "mpmath", sigma_ratio=sratio)
    return FeasibilityResult("indeterminate", rel2, None, "mpmath", sigma_ratio=sratio)


def _metric_apply(metric: MetricEndomorphism, x):
    return metric.apply(x)


def _norm_hint(L: CompactLieAlgebra, x) -> float:
    return float(L.inner_product([float(v) for v in x], [float(v) for v in x])) ** 0.5


def _generator_columns(space: ReductiveSpace, metric, ax, generators):
    """Columns <proj_m [W, Y], A X> over Y in the complement basis."""
    L = space.algebra
    m = space.complement
    cols = []
    for w in generators:
        col = []
        for y in m.basis:
            br = m.project(L.bracket(w, y))
            col.append(L.inner_product(br, ax))
        cols.append(col)
    return cols


def go_feasible_reduced(
    space: ReductiveSpace,
    metric: MetricEndomorphism,
    X,
    extra: Subspace | None = None,
    tolerances: Tolerances | None = None,
) -> FeasibilityResult:
    """Geodesic system for X with compensators from isotropy plus extra.

    Extra generators must act on the complement by metric-skew
    operators, which holds exactly when their adjoint action preserves
    the complement and commutes with A there; this is validated.
    """
    L = space.algebra
    m = space.complement
    if ela.all_exact(X) and not m.contains(X):
        raise ValueError("X must lie in the complement")
    gens = list(space.isotropy.basis)
    if extra is not None:
        for u in extra.basis:
            _validate_skew_generator(space, metric, u)
            gens.append(u)
    ax = _metric_apply(metric, X)
    cols = _generator_columns(space, metric, ax, gens)
    rhs = []
    for y in m.basis:
        br = m.project(L.bracket(X, y))
        rhs.append(-L.inner_product(br, ax))
    rows = [[cols[j][i] for j in range(len(gens))] for i in range(len(rhs))]
    return solve_linear_feasibility(rows, rhs, tolerances, scale_hint=_norm_hint(L, X))


def go_feasible_direct(
    space: ReductiveSpace,
    metric: MetricEndomorphism,
    X,
    tolerances: Tolerances | None = None,
) -> FeasibilityResult:
    """Geodesic system for X with compensators from the isotropy only."""
    return go_feasible_reduced(space, metric, X, extra=None, tolerances=tolerances)


def _validate_skew_generator(space: ReductiveSpace, metric: MetricEndomorphism, u) -> None:
    L = space.algebra
    m = space.complement
    exact = metric.is_exact and ela.all_exact(u)
    for y in m.basis:
        img = L.bracket(u, y)
        if ela.all_exact(img) and not m.contains(img):
            raise SpaceValidationError("extra generator does not preserve the complement")
        lhs = m.project(L.bracket(u, metric.apply(y)))
        rhs = metric.apply(m.project(img))
        diff = [a - b for a, b in zip(lhs, rhs)]
        if exact:
            if not ela.vec_is_zero(diff):
                raise SpaceValidationError("extra generator is not metric-skew")
        elif max(abs(float(t)) for t in diff) > 1e-10:
            raise SpaceValidationError("extra generator is not metric-skew")


def go_feasible_normal_transitive(
    space: ReductiveSpace,
    metric: MetricEndomorphism,
    X,
    tolerances: Tolerances | None = None,
) -> FeasibilityResult:
    """Bracket-compensator system: find V in the isotropy algebra and W
    in its centralizer intersected with the complement such that
    [A X, X + V + W] falls back into the isotropy algebra.
    """
    L = space.algebra
    h, m = space.isotropy, space.complement
    cm = centralizer(L, h).intersect(m, label="centralizer-in-complement")
    ax = _metric_apply(metric, X)
    gens = list(h.basis) + list(cm.basis)
    mperp = h.orthogonal_complement(label="h-perp")
    rows = []
    rhs_vec = L.bracket(ax, X)
    rhs = []
    for u in mperp.basis:
        row = [L.inner_product(L.bracket(ax, w), u) for w in gens]
        rows.append(row)
        rhs.append(-L.inner_product(rhs_vec, u))
    return solve_linear_feasibility(rows, rhs, tolerances, scale_hint=_norm_hint(L, X))


def lie_group_go_check(
    L: CompactLieAlgebra,
    metric: MetricEndomorphism,
    X,
    kernel: Subspace | None = None,
    tolerances: Tolerances | None = None,
) -> FeasibilityResult:
    """Left-invariant case: X is geodesic-orbit iff some W with
    [ad W, A] = 0 satisfies [A X, X + W] = 0.

    The kernel subspace (all such W) is computed once per metric unless
    provided.  Infeasibility over the kernel certifies that X is not a
    geodesic-orbit direction for any presentation of the isometry group.
    """
    if kernel is None:
        kernel = max_right_isometry_algebra(L, metric)
    ax = _metric_apply(metric, X)
    rhs_vec = L.bracket(ax, X)
    rows = []
    rhs = []
    cols = [L.bracket(ax, w) for w in kernel.basis]
    for k in range(L.dim):
        rows.append([c[k] for c in cols])
        rhs.append(-rhs_vec[k])
    return solve_linear_feasibility(rows, rhs, tolerances, scale_hint=_norm_hint(L, X))


def sample_tangent_vectors(
    decomposition: ModuleDecomposition,
    count: int,
    seed: int = 0,
    strategy: str = "sphere",
    exact: bool = False,
):
    """Deterministic tangent samples from the span of a decomposition.

    Strategies: "sphere" (dense directions), "per_block" (one block at a
    time), "cross_block" (pairs of blocks), "generic" (dense with small
    integer coordinates; always exact).  With exact=True coordinates are
    small integers over the exact block bases, so downstream checks stay
    in exact arithmetic.
    """
    rng = np.random.default_rng(seed)
    blocks = decomposition.blocks
    amb = decomposition.ambient
    n = decomposition.parent.dim
    out = []

    def exact_combo(subspaces):
        v = [Q(0)] * n
        nonzero = False
        for s in subspaces:
            for b in s.basis:
                c = int(rng.integers(-9, 10))
                if c:
                    nonzero = True
                    v = [x + Q(c) * y for x, y in zip(v, b)]
        if not nonzero:
            b = subspaces[0].basis[0]
            v = [x + y for x, y in zip(v, b)]
        return v

    def float_combo(subspaces):
        v = np.zeros(n)
        for s in subspaces:
            coeff = rng.standard_normal(s.dim)
            v += s.onb_np @ coeff
        nv = np.linalg.norm(v)
        if nv == 0:
            v = subspaces[0].onb_np[:, 0]
            nv = 1.0
        return list(v / nv)

    for i in range(count):
        if strategy == "sphere":
            out.append(exact_combo([amb]) if exact else float_combo([amb]))
        elif strategy == "per_block":
            blk = blocks[i % len(blocks)]
            out.append(exact_combo([blk]) if exact else float_combo([blk]))
        elif strategy == "cross_block":
            if len(blocks) < 2:
                pair = [blocks[0]]
            else:
                combos = list(itertools.combinations(range(len(blocks)), 2))
                a, b = combos[i % len(combos)]
                pair = [blocks[a], blocks[b]]
            out.append(exact_combo(pair) if exact else float_combo(pair))
        elif strategy == "generic":
            out.append(exact_combo([amb]))
        else:
            raise ValueError(f"unknown sampling strategy {strategy!r}")
    return out


@dataclass(frozen=True)
class GOCertificate:
    """Aggregated geodesic-orbit verdict over a sample of directions.

    verdict: "go-consistent" when every sampled direction admitted a
    compensator, "non-go-certified" when at least one direction was
    certified infeasible, "indeterminate" otherwise.
    """

    target: str
    formulation: str
    metric_coefficients: tuple
    verdict: str
    results: tuple
    samples: tuple
    seed: int
    strategy: str
    tolerances: Tolerances

    def to_json_dict(self) -> dict:
        def fmt_vec(v):
            return [format_scalar(x) if is_exact(x) else float(x) for x in v]

        entries = []
        for x, r in zip(self.samples, self.results):
            entries.append(
                {
                    "direction": fmt_vec(x),
                    "status": r.status,
                    "residual_rel": r.residual_rel,
                    "method": r.method,
                    "sigma_ratio": r.sigma_ratio,
                    "witness": fmt_vec(r.witness) if r.witness is not None else None,
                    "detail": {
                        k: v for k, v in r.detail.items()
                    },
                }
            )
        return {
            "schema": "1",
            "kind": "go-certificate",
            "target": self.target,
            "formulation": self.formulation,
            "metric_coefficients": fmt_vec(self.metric_coefficients),
            "verdict": self.verdict,
            "seed": self.seed,
            "strategy": self.strategy,
            "tolerances": {
                "feasible_rel": self.tolerances.feasible_rel,
                "infeasible_rel": self.tolerances.infeasible_rel,
                "sigma_ratio": self.tolerances.sigma_ratio,
                "escalate_dps": self.tolerances.escalate_dps,
            },
            "checks": entries,
        }


def go_check(
    target,
    metric: MetricEndomorphism,
    formulation: str = "auto",
    count: int = 24,
    seed: int = 0,
    strategy: str = "sphere",
    exact: bool = False,
    samples=None,
    extra: Subspace | None = None,
    kernel: Subspace | None = None,
    tolerances: Tolerances | None = None,
) -> GOCertificate:
    """Run a feasibility sweep and aggregate the verdict.

    target is either a CompactLieAlgebra (left-invariant case) or a
    ReductiveSpace.  Directions come from ``samples`` when given,
    otherwise from ``sample_tangent_vectors`` with the stated seed and
    strategy, so reports are reproducible byte for byte.
    """
    tol = tolerances or Tolerances()
    group_mode = isinstance(target, CompactLieAlgebra)
    if formulation == "auto":
        formulation = "lie_group" if group_mode else "normal_transitive"
    if samples is None:
        samples = sample_tangent_vectors(
            metric.decomposition, count, seed=seed, strategy=strategy, exact=exact
        )
    samples = [list(x) for x in samples]
    results = []
    for x in samples:
        if formulation == "lie_group":
            if not group_mode:
                raise ValueError("lie_group formulation needs an algebra target")
            if kernel is None:
                kernel = max_right_isometry_algebra(target, metric)
            results.append(lie_group_go_check(target, metric, x, kernel=kernel, tolerances=tol))
        elif formulation == "direct":
            results.append(go_feasible_direct(target, metric, x, tolerances=tol))
        elif formulation == "reduced":
            results.append(go_feasible_reduced(target, metric, x, extra=extra, tolerances=tol))
        elif formulation == "normal_transitive":
            results.append(go_feasible_normal_transitive(target, metric, x, tolerances=tol))
        else:
            raise ValueError(f"unknown formulation {formulation!r}")
    statuses = {r.status for r in results}
    if "infeasible" in statuses:
        verdict = "non-go-certified"
    elif "indeterminate" in statuses:
        verdict = "indeterminate"
    else:
        verdict = "go-consistent"
    name = target.name if group_mode else (target.name or target.algebra.name)
    return GOCertificate(
        target=name,
        formulation=formulation,
        metric_coefficients=tuple(metric.coefficients),
        verdict=verdict,
        results=tuple(results),
        samples=tuple(tuple(x) for x in samples),
        seed=seed,
        strategy=strategy,
        tolerances=tol,
    )
