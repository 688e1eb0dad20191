import json

import numpy as np
import pytest

from taufin.algebra import (
    build_nakayama,
    build_truncated_polynomial,
    compute_algebra,
    linear_path_algebra,
    path_algebra,
    radical_square_truncation,
    triangular_matrix,
)
from taufin.quiver import Arrow, Quiver, build_linear_quiver
from taufin.repmod import brick_quotient, is_brick
from taufin.tautilt import (
    canonical_key,
    degree_multisets,
    explore,
    final_pair,
    g_det,
    g_matrix,
    hasse_dot,
    hasse_json,
    initial_pair,
    leq,
    mutate,
)


def alg(p):
    return compute_algebra(p)


@pytest.fixture(scope="module")
def ka2():
    return alg(linear_path_algebra(2))


def test_initial_and_final_g_matrices(ka2):
    assert (g_matrix(initial_pair(ka2)) == np.eye(2, dtype=int)).all()
    assert (g_matrix(final_pair(ka2)) == -np.eye(2, dtype=int)).all()


def test_s1_p2_pair(ka2):
    p = initial_pair(ka2)
    # Hom(P1, P2) = 0, so P1 is replaced by the support vertex 1
    q = mutate(p, p.position_of((1, 0)))
    assert sorted(q.columns()) == [(-1, 0), (0, 1)]
    # P2 -> P1 has cokernel S1
    q = mutate(p, p.position_of((0, 1)))
    assert sorted(q.columns()) == [(1, -1), (1, 0)]
    # then P1 -> S1 is onto, leaving (S1 | P2)
    r = mutate(q, q.position_of((1, 0)))
    assert sorted(r.columns()) == [(0, -1), (1, -1)]
    assert r.support == (1,)


def test_mutation_involution_small(ka2):
    for p in explore(ka2).pairs:
        for k in range(p.size):
            q = mutate(p, k)
            col = [c for c in q.columns() if c not in p.columns()]
            assert len(col) == 1
            assert mutate(q, q.position_of(col[0])) == p


def test_leq_orients_edges(ka2):
    r = explore(ka2)
    for a, b in r.edges:
        assert leq(r.pairs[b], r.pairs[a])
        assert not leq(r.pairs[a], r.pairs[b])


@pytest.mark.parametrize(
    "pres, count",
    [
        (path_algebra(build_linear_quiver(1)), 2),
        (build_truncated_polynomial(2), 2),
        (linear_path_algebra(2), 5),
        (linear_path_algebra(3), 14),
        (radical_square_truncation(linear_path_algebra(3)), 12),
        (build_nakayama(2, True, 2), 6),
        (triangular_matrix(linear_path_algebra(2), 2), 46),
    ],
)
def test_counts(pres, count):
    r = explore(alg(pres))
    assert r.finite and r.count == count
    n = len(pres.quiver.vertices)
    assert len(r.edges) == n * count // 2


def test_budget_semantics():
    a = alg(linear_path_algebra(3))
    r = explore(a, budget=5)
    assert r.status == "BudgetExceeded" and r.stopped_by == "pairs"
    with pytest.raises(ValueError):
        explore(a, budget=0)
    with pytest.raises(ValueError):
        explore(a, max_seconds=0)
    with pytest.raises(ValueError):
        explore(a, max_module_dim=0)


def kronecker():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    return alg(path_algebra(q))


def test_module_dimension_budget():
    # preprojective Kronecker modules grow without bound along the search
    r = explore(kronecker(), max_module_dim=9)
    assert r.status == "BudgetExceeded" and r.stopped_by == "module_dim"
    assert json.loads(r.dumps())["stopped_by"] == "module_dim"
    assert all(m.dim <= 9 for p in r.pairs for m in p.module_summands)
    a = alg(linear_path_algebra(3))
    assert explore(a, max_module_dim=1).stopped_by == "module_dim"
    full = explore(a, max_module_dim=None)
    assert full.finite and full.count == explore(a).count == 14
    assert full.stopped_by is None and json.loads(full.dumps())["max_module_dim"] is None


def test_module_dimension_budget_with_workers():
    a = alg(triangular_matrix(path_algebra(Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))), 2))
    one = explore(a, max_module_dim=40, workers=1)
    many = explore(a, max_module_dim=40, workers=4)
    assert one.stopped_by == many.stopped_by == "module_dim"


def test_report_json_and_exports():
    r = explore(alg(linear_path_algebra(2)), seed=4)
    data = json.loads(r.dumps())
    assert data["status"] == "Finite" and data["count"] == 5 and data["seed"] == 4
    assert data["field"] == "fp:32003" and data["budget"] == 50000
    assert "elapsed" in data and "elapsed" not in r.to_json(include_elapsed=False)
    h = hasse_json(r)
    assert len(h["nodes"]) == 5 and len(h["edges"]) == 5
    dot = hasse_dot(r)
    assert dot == hasse_dot(r) and dot.count("->") == 5
    indeg, outdeg = degree_multisets(r)
    assert sum(indeg) == sum(outdeg) == 5


def test_g_det_and_keys():
    r = explore(alg(build_nakayama(3, True, 2)))
    assert r.finite
    keys = [canonical_key(p) for p in r.pairs]
    assert len(set(keys)) == len(keys)
    assert all(abs(g_det(p)) == 1 for p in r.pairs)


def test_seed_independence():
    a = linear_path_algebra(3)
    r1 = explore(alg(a), seed=0)
    r2 = explore(alg(a), seed=17)
    assert r1.keys() == r2.keys() and r1.edges == r2.edges


@pytest.mark.parametrize(
    "pres",
    [
        build_truncated_polynomial(3),
        triangular_matrix(build_nakayama(2, True, 3), 2),
        triangular_matrix(linear_path_algebra(3), 2),
    ],
)
def test_tau_rigid_modules_have_brick_quotients(pres):
    sp = explore(alg(pres)).pairs[0].space
    for g, m in sp.modules.items():
        assert is_brick(brick_quotient(m.rep)), g


def test_projective_of_dual_numbers_is_not_a_brick():
    sp = explore(alg(build_truncated_polynomial(2))).pairs[0].space
    (m,) = sp.modules.values()
    assert not is_brick(m.rep)
    assert is_brick(brick_quotient(m.rep))
