import pytest
from hypothesis import given, strategies as st

from wforms.core_arith import (
    RHO_VALUES,
    eps,
    eta,
    lam,
    lambda_closed,
    lambda_rho,
    residues,
    rho,
    rho_closed,
)

ints = st.integers(min_value=-10**6, max_value=10**6)


def brute_lambda_rho(n):
    hits = [(l, r) for r in RHO_VALUES for l in range(-abs(n) - 7, abs(n) + 8) if 6 * l + r == n]
    assert len(hits) == 1
    return hits[0]


@pytest.mark.parametrize("n", range(-30, 60))
def test_lambda_rho_matches_search(n):
    assert tuple(lambda_rho(n)) == brute_lambda_rho(n)


@given(ints)
def test_decomposition_and_closed_forms(n):
    l, r = lambda_rho(n)
    assert 6 * l + r == n
    assert r in RHO_VALUES
    assert rho_closed(n) == r == rho(n)
    assert lambda_closed(n) == l == lam(n)


@given(ints)
def test_residues(n):
    e, h = residues(n)
    assert (e, h) == (eps(n), eta(n))
    assert e in (0, 1) and h in (0, 1, 2)
    assert (n - e) % 2 == 0 and (n - h) % 3 == 0


def test_known_values():
    assert lambda_rho(0) == (1, -6)
    assert lambda_rho(1) == (0, 1)
    assert lambda_rho(6) == (2, -6)
    assert lambda_rho(7) == (1, 1)
    # lambda(6n+1) = n and lambda(6n) = n+1
    for n in range(20):
        assert lam(6 * n + 1) == n and lam(6 * n) == n + 1


def test_parity_indicator_is_not_lambda():
    # ceil((n+1)/2) - ceil(n/2) is 1 for even n, 0 for odd n; not lambda.
    ind = lambda n: -(-(n + 1) // 2) - (-(-n // 2))  # noqa: E731
    assert [ind(n) for n in range(6)] == [1, 0, 1, 0, 1, 0]
    assert any(ind(n) != lam(n) for n in range(12))
