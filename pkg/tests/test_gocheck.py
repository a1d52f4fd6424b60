"""Feasibility solver, reductive-space validation, and GO sweeps."""

import json
from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gometrics import (
    ModuleDecomposition,
    ReductiveSpace,
    Subspace,
    Tolerances,
    aloff_wallach,
    aw_metric,
    build_su2,
    go_check,
    go_feasible_direct,
    go_feasible_normal_transitive,
    go_feasible_reduced,
    lie_group_go_check,
    make_metric,
    max_right_isometry_algebra,
    sample_tangent_vectors,
)
from gometrics.gocheck import SpaceValidationError, solve_linear_feasibility

SU2 = build_su2()


def su2_metric(a1, a2, a3):
    blocks = tuple(
        Subspace.from_indices(SU2, [i], label=f"axis{i}") for i in range(3)
    )
    return make_metric(ModuleDecomposition(parent=SU2, blocks=blocks), [a1, a2, a3])


def basis_vec(i, n=3):
    v = [Q(0)] * n
    v[i] = Q(1)
    return v


# ---------------------------------------------------------------- solver


def test_solver_exact_feasible():
    rows = [[Q(1), Q(0)], [Q(0), Q(2)]]
    res = solve_linear_feasibility(rows, [Q(3), Q(4)])
    assert res.feasible and res.method == "exact"
    assert res.witness == (Q(3), Q(2))
    assert res.residual_rel == 0.0


def test_solver_exact_infeasible_has_rank_certificate():
    rows = [[Q(1)], [Q(1)]]
    res = solve_linear_feasibility(rows, [Q(1), Q(2)])
    assert res.status == "infeasible" and res.method == "exact"
    assert res.witness is None
    assert res.detail["certificate"] == "exact-rank"
    assert res.detail["rank_augmented"] == res.detail["rank"] + 1


def test_solver_float_thresholds():
    ok = solve_linear_feasibility([[1.0], [0.0]], [2.0, 0.0])
    assert ok.feasible and ok.method == "float"
    bad = solve_linear_feasibility([[1.0], [0.0]], [1.0, 1.0])
    assert bad.status == "infeasible"
    assert bad.residual_rel >= 1e-3


def test_solver_gap_escalates_to_mpmath_then_indeterminate():
    # residual sits between the feasible and infeasible thresholds, so
    # the high-precision retry runs and the verdict stays open.
    res = solve_linear_feasibility([[1.0], [0.0]], [1.0, 1e-6])
    assert res.status == "indeterminate"
    assert res.method == "mpmath"


def test_solver_zero_rhs_float_feasible():
    res = solve_linear_feasibility([[1.0], [2.0]], [0.0, 0.0])
    assert res.feasible and res.residual_rel == 0.0


def test_solver_respects_custom_tolerances():
    loose = Tolerances(feasible_rel=1e-2, infeasible_rel=0.5)
    res = solve_linear_feasibility([[1.0], [0.0]], [1.0, 1e-3], tolerances=loose)
    assert res.feasible


# ------------------------------------------------- reductive space checks


def test_reductive_space_accepts_axis_isotropy():
    h = Subspace.from_indices(SU2, [0], label="h")
    m = Subspace.from_indices(SU2, [1, 2], label="m")
    sp = ReductiveSpace(algebra=SU2, isotropy=h, complement=m)
    assert sp.is_orthogonal


def test_reductive_space_rejects_wrong_dimensions():
    h = Subspace.from_indices(SU2, [0], label="h")
    m = Subspace.from_indices(SU2, [2], label="m")
    with pytest.raises(SpaceValidationError):
        ReductiveSpace(algebra=SU2, isotropy=h, complement=m)


def test_reductive_space_rejects_overlap():
    h = Subspace.from_indices(SU2, [0], label="h")
    m = Subspace(SU2, ([Q(1), Q(0), Q(0)], [Q(0), Q(0), Q(1)]), label="m")
    with pytest.raises(SpaceValidationError):
        ReductiveSpace(algebra=SU2, isotropy=h, complement=m)


def test_reductive_space_rejects_non_subalgebra_isotropy():
    h = Subspace.from_indices(SU2, [0, 1], label="h")
    m = Subspace.from_indices(SU2, [2], label="m")
    with pytest.raises(SpaceValidationError):
        ReductiveSpace(algebra=SU2, isotropy=h, complement=m)


def test_reductive_space_rejects_non_invariant_complement():
    h = Subspace.from_indices(SU2, [2], label="h")
    m = Subspace(SU2, ([Q(1), Q(0), Q(0)], [Q(0), Q(1), Q(1)]), label="m")
    with pytest.raises(SpaceValidationError):
        ReductiveSpace(algebra=SU2, isotropy=h, complement=m)


# ------------------------------------------------------ left-invariant GO


def test_su2_round_metric_every_direction_feasible():
    metric = su2_metric(Q(1), Q(1), Q(1))
    for i in range(3):
        res = lie_group_go_check(SU2, metric, basis_vec(i))
        assert res.feasible and res.method == "exact"


def test_su2_two_equal_coefficients_is_go():
    cert = go_check(SU2, su2_metric(Q(2), Q(1), Q(1)), count=12, exact=True)
    assert cert.verdict == "go-consistent"
    assert all(r.method == "exact" for r in cert.results)


def test_su2_three_distinct_coefficients_is_not_go():
    cert = go_check(SU2, su2_metric(Q(1), Q(2), Q(3)), count=12, exact=True)
    assert cert.verdict == "non-go-certified"


def test_su2_distinct_axes_stay_feasible_mixed_directions_fail():
    metric = su2_metric(Q(1), Q(2), Q(3))
    kernel = max_right_isometry_algebra(SU2, metric)
    assert kernel.dim == 0
    for i in range(3):
        assert lie_group_go_check(SU2, metric, basis_vec(i), kernel=kernel).feasible
    mixed = [Q(1), Q(1), Q(0)]
    res = lie_group_go_check(SU2, metric, mixed, kernel=kernel)
    assert res.status == "infeasible"
    assert res.detail["certificate"] == "exact-rank"


def test_float_infeasible_metric_flags_residual_and_sigma():
    metric = su2_metric(1.0, 2.0, 3.0)
    res = lie_group_go_check(SU2, metric, [1.0, 1.0, 0.0])
    assert res.status == "infeasible" and res.method == "float"
    assert res.residual_rel >= 1e-3
    assert res.sigma_ratio is None or res.sigma_ratio >= 1e-6


def test_kernel_precomputation_matches_internal():
    metric = su2_metric(Q(2), Q(1), Q(1))
    kernel = max_right_isometry_algebra(SU2, metric)
    x = [Q(1), Q(2), Q(3)]
    with_k = lie_group_go_check(SU2, metric, x, kernel=kernel)
    without = lie_group_go_check(SU2, metric, x)
    assert with_k.status == without.status
    assert with_k.witness == without.witness


@given(
    scale=st.sampled_from([Q(1, 3), Q(1, 2), Q(2), Q(5), Q(7, 2)]),
    xs=st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(any),
)
@settings(max_examples=25, deadline=None)
def test_feasibility_invariant_under_metric_and_direction_scaling(scale, xs):
    metric = su2_metric(Q(1), Q(2), Q(3))
    x = [Q(v) for v in xs]
    base = lie_group_go_check(SU2, metric, x)
    scaled_metric = lie_group_go_check(SU2, metric.scaled(scale), x)
    scaled_x = lie_group_go_check(SU2, metric, [scale * v for v in x])
    assert base.status == scaled_metric.status == scaled_x.status


# ------------------------------------------------------------- sampling


def aw_setup():
    aw = aloff_wallach(2, 1)
    return aw, aw_metric(aw, Q(1), Q(1), Q(1), Q(1))


def test_samples_are_deterministic_per_seed():
    aw, metric = aw_setup()
    a = sample_tangent_vectors(metric.decomposition, 6, seed=3)
    b = sample_tangent_vectors(metric.decomposition, 6, seed=3)
    c = sample_tangent_vectors(metric.decomposition, 6, seed=4)
    assert a == b
    assert a != c


def test_exact_samples_stay_exact():
    aw, metric = aw_setup()
    xs = sample_tangent_vectors(metric.decomposition, 5, seed=0, exact=True)
    for x in xs:
        assert all(isinstance(v, Q) for v in x)


def test_per_block_samples_lie_in_single_blocks():
    aw, metric = aw_setup()
    dec = metric.decomposition
    xs = sample_tangent_vectors(dec, len(dec.blocks), seed=1, strategy="per_block", exact=True)
    for i, x in enumerate(xs):
        assert dec.blocks[i % len(dec.blocks)].contains(x)


def test_cross_block_samples_span_two_blocks():
    aw, metric = aw_setup()
    dec = metric.decomposition
    xs = sample_tangent_vectors(dec, 4, seed=1, strategy="cross_block", exact=True)
    import itertools

    combos = list(itertools.combinations(range(len(dec.blocks)), 2))
    for i, x in enumerate(xs):
        a, b = combos[i % len(combos)]
        joined = dec.blocks[a].sum(dec.blocks[b], label="pair")
        assert joined.contains(x)


def test_generic_strategy_is_always_exact():
    aw, metric = aw_setup()
    xs = sample_tangent_vectors(metric.decomposition, 3, seed=9, strategy="generic")
    for x in xs:
        assert all(isinstance(v, Q) for v in x)


def test_unknown_strategy_rejected():
    aw, metric = aw_setup()
    with pytest.raises(ValueError):
        sample_tangent_vectors(metric.decomposition, 1, strategy="bogus")


# ------------------------------------------------- sweeps and aggregation


def test_verdict_aggregation_prefers_infeasible():
    metric = su2_metric(Q(1), Q(2), Q(3))
    samples = [basis_vec(0), [Q(1), Q(1), Q(0)]]
    cert = go_check(SU2, metric, samples=samples)
    assert cert.verdict == "non-go-certified"
    assert [r.status for r in cert.results] == ["feasible", "infeasible"]


def test_go_check_json_reports_are_byte_identical():
    aw, metric = aw_setup()
    out = []
    for _ in range(2):
        cert = go_check(aw.space, metric, count=6, seed=11, exact=True)
        out.append(json.dumps(cert.to_json_dict(), sort_keys=True, indent=2))
    assert out[0] == out[1]


def test_formulations_agree_on_aw_normal_metric():
    aw, metric = aw_setup()
    xs = sample_tangent_vectors(metric.decomposition, 5, seed=7, exact=True)
    for x in xs:
        d = go_feasible_direct(aw.space, metric, x)
        r = go_feasible_reduced(aw.space, metric, x)
        n = go_feasible_normal_transitive(aw.space, metric, x)
        assert d.status == r.status == n.status == "feasible"


def test_direct_requires_complement_membership():
    aw, metric = aw_setup()
    bad = [Q(1)] + [Q(0)] * (aw.algebra.dim - 1)  # the isotropy line
    with pytest.raises(ValueError):
        go_feasible_direct(aw.space, metric, bad)


def test_lie_group_formulation_rejects_space_target():
    aw, metric = aw_setup()
    with pytest.raises(ValueError):
        go_check(aw.space, metric, formulation="lie_group", count=1)


def test_certificate_json_shape():
    cert = go_check(SU2, su2_metric(Q(2), Q(1), Q(1)), count=3, exact=True, seed=2)
    doc = cert.to_json_dict()
    assert doc["schema"] == "1" and doc["kind"] == "go-certificate"
    assert doc["verdict"] == "go-consistent"
    assert len(doc["checks"]) == 3
    for entry in doc["checks"]:
        assert entry["status"] == "feasible"
        assert isinstance(entry["direction"], list)
    json.dumps(doc)
