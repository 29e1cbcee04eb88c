"""Directed signatures with k-of-n threshold verification.

The signer deals one-time shares of the commitment nonce to a designated
group, each share masked under the owning member's public key. Any k
members can unmask their shares, scale them by Lagrange weights, and hand
g^(scaled share) to a combiner, whose product rebuilds the commitment
g^k1 and feeds the ordinary verification equation. No trusted dealer or
fixed setup exists: everything is decided per signature.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .group import GroupElement, KeyPair, Scalar, SchnorrGroup
from .hashing import DEFAULT_HASH, HashFunction
from .shamir import (
    Share,
    SharingPolynomial,
    ThresholdRangeError,
    _check_ids,
    lagrange_coefficient_at_zero,
    split,
)


class MemberNotFoundError(ValueError):
    """No masked share exists for the requested identity."""


class QuorumSizeError(ValueError):
    """A quorum has the wrong number of members for the threshold."""


class QuorumMembershipError(ValueError):
    """A share's identity is not among the quorum identities."""


@dataclass(frozen=True)
class GroupMember:
    u: Scalar  # public identity
    y: GroupElement  # public key


@dataclass(frozen=True)
class GroupDirectory:
    """The designated group: public identities and keys of its n members."""

    members: Tuple[GroupMember, ...]

    def __post_init__(self) -> None:
        _check_ids([m.u for m in self.members])

    @property
    def n(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class MaskedShare:
    """A share value blinded by y_i^k2 mod p.

    The blinded value lives in Z_p, not in the subgroup; the embedded
    share value is an integer below q and a zero share masks to zero.
    """

    u: Scalar
    v: int

    def __post_init__(self) -> None:
        if not 0 <= self.v < self.u.group.p:
            raise ValueError(f"masked share {self.v} outside [0, p-1]")


@dataclass(frozen=True)
class ThresholdSignature:
    """The broadcast (s, w, message, masked shares, threshold)."""

    s: Scalar
    w: GroupElement
    message: bytes
    masked_shares: Tuple[MaskedShare, ...]
    threshold: int

    def __post_init__(self) -> None:
        if not 1 <= self.threshold <= len(self.masked_shares):
            raise ThresholdRangeError(
                f"threshold {self.threshold} outside [1, {len(self.masked_shares)}]"
            )


@dataclass(frozen=True)
class ModifiedShadow:
    """A recovered share scaled by its Lagrange weight at zero."""

    u: Scalar
    value: Scalar


@dataclass(frozen=True)
class PartialResult:
    """One member's contribution g^shadow to the combiner's product."""

    u: Scalar
    value: GroupElement


def _deal_masked_shares(
    group: SchnorrGroup,
    directory: GroupDirectory,
    k: int,
    k1: Scalar,
    k2: Scalar,
    rng: Optional[random.Random],
    polynomial: Union[SharingPolynomial, Sequence[int], None],
) -> Tuple[GroupElement, GroupElement, Tuple[MaskedShare, ...]]:
    """Common construction of (w, commitment, masked shares) from fresh nonces."""
    if not 1 <= k <= directory.n:
        raise ThresholdRangeError(f"threshold {k} outside [1, {directory.n}]")
    w = group.generator ** -k2
    commitment = group.generator ** k1
    shares = split(k1, k, [m.u for m in directory.members], rng, polynomial=polynomial)
    masked = tuple(
        MaskedShare(u=share.u, v=share.v.value * (member.y ** k2).value % group.p)
        for share, member in zip(shares, directory.members)
    )
    return w, commitment, masked


def sign_for_group(
    group: SchnorrGroup,
    signer: KeyPair,
    directory: GroupDirectory,
    k: int,
    message: bytes,
    rng: Optional[random.Random] = None,
    h: HashFunction = DEFAULT_HASH,
    *,
    nonces: Optional[Tuple[int, int]] = None,
    polynomial: Union[SharingPolynomial, Sequence[int], None] = None,
) -> ThresholdSignature:
    """Sign `message` so that any k of the directory's members can verify.

    The commitment nonce k1 doubles as the shared secret: f(0) = k1, and
    each member's share f(u_i) is masked by y_i^k2. `nonces` and
    `polynomial` inject fixed values for deterministic replay.
    """
    if nonces is not None:
        k1, k2 = (group.scalar(n) for n in nonces)
    else:
        k1 = group.random_scalar(rng, nonzero=True)
        k2 = group.random_scalar(rng, nonzero=True)
    w, commitment, masked = _deal_masked_shares(group, directory, k, k1, k2, rng, polynomial)
    r_hash = h.hash_to_scalar(commitment, message)
    s = k1 + signer.x * r_hash
    return ThresholdSignature(s=s, w=w, message=message, masked_shares=masked, threshold=k)


def recover_share(
    group: SchnorrGroup,
    sig: ThresholdSignature,
    member: KeyPair,
    u: Scalar,
) -> Share:
    """Unmask the member's own share: f(u) = v_u * w^x mod p.

    w^x cancels exactly the y^k2 blinding of the key the share was masked
    under. The result is reduced into Z_q; honest values already lie below
    q, while a wrong key or tampered share yields an arbitrary residue
    that fails downstream combination.
    """
    for masked in sig.masked_shares:
        if masked.u == u:
            raw = masked.v * (sig.w ** member.x).value % group.p
            return Share(u=u, v=group.scalar(raw))
    raise MemberNotFoundError(f"identity {u.value} has no masked share")


def modify_shadow(share: Share, quorum_ids: Sequence[Scalar]) -> ModifiedShadow:
    """Scale the share by its Lagrange weight over the acting quorum.

    The quorum must have exactly the sharing's threshold members; that is
    the caller's contract, since shares do not carry the threshold.
    """
    for index, u in enumerate(quorum_ids):
        if u == share.u:
            lam = lagrange_coefficient_at_zero(quorum_ids, index)
            return ModifiedShadow(u=share.u, value=share.v * lam)
    raise QuorumMembershipError(f"identity {share.u.value} not in quorum")


def partial_result(group: SchnorrGroup, shadow: ModifiedShadow) -> PartialResult:
    """Lift the shadow into the group: g^shadow mod p.

    The lift must happen mod p — the combiner multiplies these together
    to rebuild a group element.
    """
    return PartialResult(u=shadow.u, value=group.generator ** shadow.value)


def combine_and_verify(
    group: SchnorrGroup,
    sig: ThresholdSignature,
    partials: Sequence[PartialResult],
    signer_pub: GroupElement,
    h: HashFunction = DEFAULT_HASH,
) -> bool:
    """Multiply the partials into R and run the verification equation.

    For an honest quorum R = g^(sum of shadows) = g^k1, so acceptance is
    exactly the directed scheme's check. The combiner holds no secrets;
    everything here is public input plus the submitted partials.
    """
    if len(partials) != sig.threshold:
        raise QuorumSizeError(
            f"got {len(partials)} partial results, threshold is {sig.threshold}"
        )
    _check_ids([p.u for p in partials])
    r_elem = partials[0].value
    for partial in partials[1:]:
        r_elem = r_elem * partial.value
    r_hash = h.hash_to_scalar(r_elem, sig.message)
    return group.generator ** sig.s == r_elem * signer_pub ** r_hash
