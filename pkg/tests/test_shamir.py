"""Secret sharing: known vectors, exhaustive small-field checks, hiding."""

import itertools
import random

import pytest

from dirsig.shamir import (
    Share,
    ShareIdError,
    SharingPolynomial,
    ThresholdRangeError,
    lagrange_coefficient_at_zero,
    reconstruct,
    split,
)


def _ids(group, *values):
    return [group.scalar(v) for v in values]


def test_split_known_polynomial(toy_group):
    # f(x) = 9 + 3x over Z11: f(1)=1, f(2)=4, f(3)=7
    shares = split(toy_group.scalar(9), 2, _ids(toy_group, 1, 2, 3), polynomial=(9, 3))
    assert [(s.u.value, s.v.value) for s in shares] == [(1, 1), (2, 4), (3, 7)]


def test_threshold_one_shares_equal_secret(toy_group):
    rng = random.Random(5)
    shares = split(toy_group.scalar(6), 1, _ids(toy_group, 1, 4, 9), rng)
    assert all(s.v.value == 6 for s in shares)


def test_full_threshold_needs_every_share(toy_group):
    # f(x) = 1 + x^2: any 2-subset interpolates a line whose value at zero
    # differs from f(0) by the quadratic term
    shares = split(toy_group.scalar(1), 3, _ids(toy_group, 1, 2, 3), polynomial=(1, 0, 1))
    assert reconstruct(shares).value == 1
    assert reconstruct(shares[:2]).value != 1


def test_lagrange_known_coefficients(toy_group):
    quorum = _ids(toy_group, 1, 2)
    assert lagrange_coefficient_at_zero(quorum, 0).value == 2
    assert lagrange_coefficient_at_zero(quorum, 1).value == 10


def test_lagrange_singleton_is_one(toy_group):
    assert lagrange_coefficient_at_zero(_ids(toy_group, 7), 0).value == 1


def test_reconstruct_known_quorum(toy_group):
    shares = [
        Share(u=toy_group.scalar(1), v=toy_group.scalar(1)),
        Share(u=toy_group.scalar(2), v=toy_group.scalar(4)),
    ]
    assert reconstruct(shares).value == 9


def test_alternate_quorum_consistency(toy_group):
    # quorum (2,3): lambda_2 = -3/(2-3) = 3, lambda_3 = -2/(3-2) = 9
    quorum = _ids(toy_group, 2, 3)
    assert lagrange_coefficient_at_zero(quorum, 0).value == 3
    assert lagrange_coefficient_at_zero(quorum, 1).value == 9
    shares = [
        Share(u=toy_group.scalar(2), v=toy_group.scalar(4)),
        Share(u=toy_group.scalar(3), v=toy_group.scalar(7)),
    ]
    assert reconstruct(shares).value == 9


def test_split_input_validation(toy_group):
    secret = toy_group.scalar(3)
    with pytest.raises(ShareIdError):
        split(secret, 2, _ids(toy_group, 1, 1, 2))
    with pytest.raises(ShareIdError):
        split(secret, 1, _ids(toy_group, 0, 1))
    with pytest.raises(ThresholdRangeError):
        split(secret, 4, _ids(toy_group, 1, 2, 3))
    with pytest.raises(ThresholdRangeError):
        split(secret, 0, _ids(toy_group, 1, 2, 3))


def test_reconstruct_rejects_duplicate_ids(toy_group):
    share = Share(u=toy_group.scalar(1), v=toy_group.scalar(1))
    with pytest.raises(ShareIdError):
        reconstruct([share, share])


def test_injected_polynomial_must_match(toy_group):
    with pytest.raises(ValueError):
        split(toy_group.scalar(9), 2, _ids(toy_group, 1, 2), polynomial=(8, 3))


def test_every_quorum_reconstructs(toy_group, big_group):
    rng = random.Random(17)
    for group in (toy_group, big_group):
        for _ in range(6):
            n = rng.randrange(2, 11)
            k = rng.randrange(1, min(n, 5) + 1)
            secret = group.random_scalar(rng)
            id_values = set()
            while len(id_values) < n:
                id_values.add(rng.randrange(1, group.q))
            shares = split(secret, k, _ids(group, *id_values), rng)
            for quorum in itertools.combinations(shares, k):
                assert reconstruct(list(quorum)) == secret


def test_exhaustive_small_field_threshold_boundary(toy_group):
    """All degree-<=2 polynomials over Z11, ids (1,2,3): 3-subsets always
    recover f(0); 2-subsets recover it exactly when the quadratic term
    vanishes (the interpolating line at 0 is f(0) - b2*u1*u2)."""
    q = toy_group.q
    ids = _ids(toy_group, 1, 2, 3)
    for a0 in range(q):
        for b1 in range(q):
            for b2 in range(q):
                poly = SharingPolynomial(tuple(toy_group.scalar(c) for c in (a0, b1, b2)))
                shares = split(toy_group.scalar(a0), 3, ids, polynomial=poly)
                assert reconstruct(shares).value == a0
                for pair in itertools.combinations(shares, 2):
                    matches = reconstruct(list(pair)).value == a0
                    assert matches == (b2 == 0), (a0, b1, b2)


def test_single_share_hides_everything(toy_group):
    """q=11, k=2: fixing one share, every secret stays consistent with
    exactly one polynomial (exhaustive over all lines)."""
    q = toy_group.q
    u, v = 3, 8  # an arbitrary fixed share
    for secret in range(q):
        consistent = [
            b for b in range(q) if (secret + b * u) % q == v
        ]
        assert len(consistent) == 1, secret
