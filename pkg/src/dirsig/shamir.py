"""(k, n) secret sharing over Z_q with Lagrange reconstruction at zero."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .group import Scalar, SchnorrGroup


class ShareIdError(ValueError):
    """Share identities must be distinct and nonzero."""


class ThresholdRangeError(ValueError):
    """The threshold must satisfy 1 <= k <= number of identities."""


@dataclass(frozen=True)
class Share:
    u: Scalar  # public identity
    v: Scalar  # polynomial value f(u)


@dataclass(frozen=True)
class SharingPolynomial:
    """f(x) = secret + b_1*x + ... + b_{k-1}*x^{k-1} over Z_q."""

    coefficients: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a sharing polynomial needs at least one coefficient")

    @property
    def threshold(self) -> int:
        return len(self.coefficients)

    @property
    def secret(self) -> Scalar:
        return self.coefficients[0]

    def evaluate(self, u: Scalar) -> Scalar:
        acc = self.coefficients[-1]
        for coeff in reversed(self.coefficients[:-1]):
            acc = acc * u + coeff
        return acc

    @classmethod
    def random(
        cls, secret: Scalar, k: int, rng: Optional[random.Random] = None
    ) -> "SharingPolynomial":
        """Uniform degree-(k-1) polynomial with f(0) = secret.

        Coefficients are drawn from all of [0, q-1]; zero is allowed, so
        the effective degree may be lower.
        """
        group = secret.group
        coeffs = [secret] + [group.random_scalar(rng) for _ in range(k - 1)]
        return cls(tuple(coeffs))


def _check_ids(ids: Sequence[Scalar]) -> None:
    if not ids:
        raise ShareIdError("at least one identity is required")
    values = [u.value for u in ids]
    if any(v == 0 for v in values):
        raise ShareIdError("identity 0 would leak the secret directly")
    if len(set(values)) != len(values):
        raise ShareIdError("identities must be distinct")


def _coerce_polynomial(
    secret: Scalar,
    k: int,
    polynomial: Union[SharingPolynomial, Sequence[int], None],
    rng: Optional[random.Random],
) -> SharingPolynomial:
    if polynomial is None:
        return SharingPolynomial.random(secret, k, rng)
    if not isinstance(polynomial, SharingPolynomial):
        group = secret.group
        polynomial = SharingPolynomial(tuple(group.scalar(c) for c in polynomial))
    if polynomial.secret != secret or polynomial.threshold != k:
        raise ValueError("injected polynomial does not match (secret, k)")
    return polynomial


def split(
    secret: Scalar,
    k: int,
    ids: Sequence[Scalar],
    rng: Optional[random.Random] = None,
    *,
    polynomial: Union[SharingPolynomial, Sequence[int], None] = None,
) -> list[Share]:
    """Deal one share per identity; any k of them reconstruct the secret.

    `polynomial` injects fixed coefficients for deterministic replay; it
    must already encode the secret and threshold.
    """
    _check_ids(ids)
    if not 1 <= k <= len(ids):
        raise ThresholdRangeError(f"threshold {k} outside [1, {len(ids)}]")
    poly = _coerce_polynomial(secret, k, polynomial, rng)
    return [Share(u=u, v=poly.evaluate(u)) for u in ids]


def lagrange_coefficient_at_zero(quorum_ids: Sequence[Scalar], index: int) -> Scalar:
    """Weight for quorum member `index`: prod over j != i of -u_j / (u_i - u_j).

    With these weights, sum(lambda_i * f(u_i)) = f(0). The empty product
    (a single-member quorum) is 1. Differences are invertible because the
    identities are distinct and q is prime.
    """
    _check_ids(quorum_ids)
    if not 0 <= index < len(quorum_ids):
        raise IndexError(f"index {index} outside quorum of size {len(quorum_ids)}")
    u_i = quorum_ids[index]
    group: SchnorrGroup = u_i.group
    lam = group.scalar(1)
    for j, u_j in enumerate(quorum_ids):
        if j == index:
            continue
        lam = lam * (-u_j) * (u_i - u_j).inverse()
    return lam


def reconstruct(quorum: Sequence[Share]) -> Scalar:
    """Interpolate the quorum's shares at zero.

    The result equals the dealt secret exactly when the quorum reaches the
    sharing's threshold; below threshold it is some other point-consistent
    value. The threshold itself is not carried by the shares.
    """
    ids = [share.u for share in quorum]
    _check_ids(ids)
    group = ids[0].group
    total = group.scalar(0)
    for i, share in enumerate(quorum):
        total = total + lagrange_coefficient_at_zero(ids, i) * share.v
    return total
