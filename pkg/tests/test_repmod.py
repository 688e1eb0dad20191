import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from taufin.algebra import (
    build_nakayama,
    build_truncated_polynomial,
    compute_algebra,
    linear_path_algebra,
    triangular_matrix,
)
from taufin.field import Field
from taufin.repmod import (
    Representation,
    ar_translate,
    cokernel,
    decompose,
    direct_sum,
    dual,
    end_radical,
    g_vector,
    hom_dim,
    hom_space,
    in_fac,
    indecomposable_summands,
    injective,
    is_brick,
    is_homomorphism,
    is_isomorphic,
    is_projective,
    kernel,
    minimal_projective_presentation,
    projective,
    regular_module,
    simple,
    top_dims,
    zero_rep,
)
from taufin.repmod import _hom_system


@pytest.fixture(scope="module")
def ka2():
    return compute_algebra(linear_path_algebra(2))


@pytest.fixture(scope="module")
def dual_numbers():
    return compute_algebra(build_truncated_polynomial(2))


def test_projectives_and_injectives(ka2):
    assert projective(ka2, 0).dims == (1, 1)
    assert projective(ka2, 1).dims == (0, 1)
    assert injective(ka2, 0).dims == (1, 0)
    assert injective(ka2, 1).dims == (1, 1)
    assert is_isomorphic(projective(ka2, 0), injective(ka2, 1))
    assert regular_module(ka2).dim == 3


def test_homs(ka2):
    p1, s1, s2 = projective(ka2, 0), simple(ka2, 0), simple(ka2, 1)
    assert hom_dim(p1, s2) == 0
    assert hom_dim(p1, s1) == 1
    assert hom_dim(s2, p1) == 1
    for h in hom_space(s2, p1):
        assert is_homomorphism(h, s2, p1)


def test_invalid_representation(dual_numbers):
    with pytest.raises(ValueError):
        Representation(dual_numbers, (1,), [[[1]]], check=True)  # x acts invertibly, x^2 != 0


def test_presentation_and_g_vectors(ka2):
    s1 = simple(ka2, 0)
    pres = minimal_projective_presentation(s1)
    assert pres.p0 == [0] and pres.p1 == [1]
    assert g_vector(s1) == (1, -1)
    assert g_vector(projective(ka2, 1)) == (0, 1)
    assert pres.g_vector(2) == g_vector(s1)


def test_ar_translate(ka2, dual_numbers):
    assert ar_translate(simple(ka2, 0)).dims == (0, 1)
    assert ar_translate(projective(ka2, 0)).is_zero()
    s = simple(dual_numbers, 0)
    assert is_isomorphic(ar_translate(s), s)


def test_self_injective_nakayama():
    a = compute_algebra(build_nakayama(2, True, 3))
    injectives = [injective(a, j) for j in range(2)]
    for i in range(2):
        assert any(is_isomorphic(projective(a, i), inj) for inj in injectives)


def test_kernel_cokernel(ka2):
    s2, p1 = simple(ka2, 1), projective(ka2, 0)
    (f,) = hom_space(s2, p1)
    ker, _ = kernel(f, s2)
    assert ker.is_zero()
    coker, _ = cokernel(f, p1)
    assert is_isomorphic(coker, simple(ka2, 0))


def test_decompose(ka2):
    m = direct_sum([projective(ka2, 0), simple(ka2, 0), projective(ka2, 0), simple(ka2, 1)])
    parts = sorted((x.dims, k) for x, k in decompose(m, seed=3))
    assert parts == [((0, 1), 1), ((1, 0), 1), ((1, 1), 2)]


def test_decompose_over_rationals():
    a = compute_algebra(linear_path_algebra(3, Field(None)))
    m = regular_module(a)
    assert sorted(x.dims for x in indecomposable_summands(m)) == [(0, 0, 1), (0, 1, 1), (1, 1, 1)]


def test_end_radical(dual_numbers, ka2):
    assert end_radical(projective(dual_numbers, 0)) is not None
    assert end_radical(direct_sum([simple(ka2, 0), simple(ka2, 1)])) is None


def test_brick(dual_numbers, ka2):
    assert not is_brick(regular_module(dual_numbers))
    assert is_brick(simple(dual_numbers, 0))
    assert is_brick(projective(ka2, 0))
    with pytest.raises(ValueError):
        is_brick(zero_rep(ka2))


def test_in_fac(ka2):
    p1, s1, s2 = projective(ka2, 0), simple(ka2, 0), simple(ka2, 1)
    assert in_fac(p1, s1)
    assert not in_fac(p1, s2)
    assert in_fac(p1, zero_rep(ka2))


def test_is_projective(ka2):
    assert is_projective(projective(ka2, 1))
    assert not is_projective(simple(ka2, 0))


def test_dual(ka2):
    op = ka2.opposite()
    d = dual(projective(ka2, 0), op)
    assert d.dims == (1, 1)
    assert is_isomorphic(d, injective(op, 1)) or is_isomorphic(d, injective(op, 0))


def test_json_round_trip(ka2):
    m = projective(ka2, 0)
    back = Representation.from_json(ka2, m.to_json())
    assert back.dims == m.dims and all((x == y).all() for x, y in zip(back.maps, m.maps))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_direct_sums_split(seed):
    a = compute_algebra(linear_path_algebra(3))
    rng = np.random.default_rng(seed)
    pool = [projective(a, i) for i in range(3)] + [simple(a, i) for i in range(3)] + [injective(a, 0)]
    picks = [pool[k] for k in rng.integers(0, len(pool), size=rng.integers(1, 5))]
    m = direct_sum(picks)
    parts = indecomposable_summands(m, seed=int(seed % 1000))
    assert sorted(p.dims for p in parts) == sorted(p.dims for p in picks)
    assert sum(p.dim for p in parts) == m.dim


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_g_vector_matches_presentation(seed):
    a = compute_algebra(triangular_matrix(linear_path_algebra(2), 2))
    rng = np.random.default_rng(seed)
    i = int(rng.integers(0, 4))
    j = int(rng.integers(0, 4))
    m = direct_sum([projective(a, i), simple(a, j)])
    pres = minimal_projective_presentation(m)
    assert g_vector(m) == pres.g_vector(4)
    assert top_dims(m)[i] >= 1


def _random_module(a, rng):
    """Cokernel of a random map between sums of projectives."""
    fld = a.field
    n = len(a.vertices)
    src = direct_sum([projective(a, int(i)) for i in rng.integers(0, n, size=rng.integers(1, 3))])
    tgt = direct_sum([projective(a, int(i)) for i in rng.integers(0, n, size=rng.integers(1, 4))])
    homs = hom_space(src, tgt)
    if not homs:
        return tgt
    f = homs[0]
    for h in homs[1:]:
        c = int(rng.integers(0, 3))
        f = tuple(fld.reduce(x + c * y) for x, y in zip(f, h))
    return cokernel(f, tgt)[0]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_hom_matches_direct_system(seed):
    rng = np.random.default_rng(seed)
    pres = [triangular_matrix(linear_path_algebra(2), 2), build_nakayama(2, True, 3)][seed % 2]
    a = compute_algebra(pres)
    m, n = _random_module(a, rng), _random_module(a, rng)
    system, offs = _hom_system(m, n)
    direct = int(offs[-1]) - (a.field.rank(system) if system.size else 0)
    homs = hom_space(m, n)
    assert hom_dim(m, n) == len(homs) == direct
    assert all(is_homomorphism(h, m, n) for h in homs)
    if homs:
        vecs = np.stack([np.concatenate([x.reshape(-1) for x in h]) for h in homs], axis=1)
        assert a.field.rank(vecs) == len(homs)
