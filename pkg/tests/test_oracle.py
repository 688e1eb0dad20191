import numpy as np
import pytest

from taufin.algebra import (
    build_nakayama,
    build_truncated_polynomial,
    compute_algebra,
    linear_path_algebra,
    path_algebra,
    radical_square_truncation,
)
from taufin.field import Field
from taufin.oracle import OracleDomainError, brute_force_stau_count, gf2_nullspace, gf2_rank, tau_rigid_indecomposables
from taufin.quiver import build_linear_quiver

F2 = Field(2)


def alg(p):
    return compute_algebra(p)


def test_gf2_linear_algebra():
    a = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert gf2_rank(a) == 2
    ns = gf2_nullspace(a)
    assert ns.shape == (1, 3)
    assert not ((a.astype(int) @ ns.T.astype(int)) % 2).any()


@pytest.mark.parametrize(
    "pres, count",
    [
        (path_algebra(build_linear_quiver(1), fld=F2), 2),
        (build_truncated_polynomial(2, F2), 2),
        (build_truncated_polynomial(3, F2), 2),
        (linear_path_algebra(2, F2), 5),
        (radical_square_truncation(linear_path_algebra(3, F2)), 12),
        (linear_path_algebra(3, F2), 14),
        (build_nakayama(2, True, 2, F2), 6),
    ],
)
def test_known_counts(pres, count):
    assert brute_force_stau_count(alg(pres)) == count


def test_rigid_modules_of_ka2():
    dims = sorted(d for d, _ in tau_rigid_indecomposables(alg(linear_path_algebra(2, F2))))
    assert dims == [(0, 1), (1, 0), (1, 1)]


def test_domain_limits():
    with pytest.raises(OracleDomainError):
        brute_force_stau_count(alg(linear_path_algebra(2)))
    with pytest.raises(OracleDomainError):
        brute_force_stau_count(alg(linear_path_algebra(4, F2)))
