"""Directed signatures: only the designated receiver can verify directly.

The signer masks the hash commitment g^k1 under the receiver's public key,
so recovering it takes the receiver's private key. Either party can later
re-mask the commitment for a chosen third party, who then runs the
ordinary verification equation on the substituted components.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .group import GroupElement, KeyPair, Scalar, SchnorrGroup
from .hashing import DEFAULT_HASH, HashFunction


@dataclass(frozen=True)
class DirectedSignature:
    """The tuple (s, w, v, message) sent to the designated receiver.

    s is the exponent-domain response, w the receiver mask g^-k2, and v
    the commitment g^k1 blinded by the receiver's key.
    """

    s: Scalar
    w: GroupElement
    v: GroupElement
    message: bytes


@dataclass(frozen=True)
class SignerNonceState:
    """The signer's secret nonces, retained per signature.

    Without k1 and k2 the signer cannot re-mask the commitment for a third
    party, so signing returns this state alongside the signature. It is
    secret material: anyone holding it can unmask the commitment.
    """

    k1: Scalar
    k2: Scalar
    signature: DirectedSignature


@dataclass(frozen=True)
class RecoveredCommitment:
    """The unmasked commitment R = g^k1 and its message hash."""

    r_elem: GroupElement
    r_hash: Scalar


@dataclass(frozen=True)
class SignerProof:
    """The commitment re-masked by the signer for a third party."""

    v_c: GroupElement


@dataclass(frozen=True)
class ReceiverProof:
    """The commitment re-masked by the receiver for a third party."""

    w_c: GroupElement
    v_c: GroupElement


def sign_directed(
    group: SchnorrGroup,
    signer: KeyPair,
    receiver_pub: GroupElement,
    message: bytes,
    rng: Optional[random.Random] = None,
    h: HashFunction = DEFAULT_HASH,
    *,
    nonces: Optional[Tuple[int, int]] = None,
) -> Tuple[DirectedSignature, SignerNonceState]:
    """Produce a signature on `message` directed at `receiver_pub`.

    Fresh nonces are drawn from [1, q-1]: k2 = 0 would set w = 1 and let
    anyone unmask the commitment, voiding the designation property (and
    k1 = 0 would fix the commitment at the identity). Injecting `nonces`
    bypasses that guard for vector replay.
    """
    if nonces is not None:
        k1, k2 = (group.scalar(n) for n in nonces)
    else:
        k1 = group.random_scalar(rng, nonzero=True)
        k2 = group.random_scalar(rng, nonzero=True)
    commitment = group.generator ** k1
    w = group.generator ** -k2
    v = commitment * receiver_pub ** k2
    r_hash = h.hash_to_scalar(commitment, message)
    s = k1 + signer.x * r_hash
    sig = DirectedSignature(s=s, w=w, v=v, message=message)
    return sig, SignerNonceState(k1=k1, k2=k2, signature=sig)


def verify_directed(
    group: SchnorrGroup,
    sig: DirectedSignature,
    receiver: KeyPair,
    signer_pub: GroupElement,
    h: HashFunction = DEFAULT_HASH,
) -> Tuple[bool, RecoveredCommitment]:
    """Unmask R = v * w^x and accept iff g^s = R * y_signer^h(R, m).

    Only the designated receiver's x cancels the mask; any other key
    recovers a different R and the equation fails (up to the hash's
    collision behaviour). The recovered commitment is returned so the
    receiver can later prove validity to a third party.
    """
    r_elem = sig.v * sig.w ** receiver.x
    r_hash = h.hash_to_scalar(r_elem, sig.message)
    accept = group.generator ** sig.s == r_elem * signer_pub ** r_hash
    return accept, RecoveredCommitment(r_elem=r_elem, r_hash=r_hash)


def prove_by_signer(
    group: SchnorrGroup,
    nonces: SignerNonceState,
    third_party_pub: GroupElement,
) -> SignerProof:
    """Re-mask the commitment under the third party's key: v_c = g^k1 * y_c^k2.

    The third party keeps the original w; only v is substituted.
    """
    return SignerProof(v_c=(group.generator ** nonces.k1) * third_party_pub ** nonces.k2)


def prove_by_receiver(
    group: SchnorrGroup,
    commitment: RecoveredCommitment,
    receiver: KeyPair,
    third_party_pub: GroupElement,
    rng: Optional[random.Random] = None,
    *,
    nonce: Optional[int] = None,
) -> ReceiverProof:
    """Re-mask the recovered commitment with a fresh nonce K.

    Requires a commitment obtained from a successful verify_directed; the
    receiver's key pair marks who runs the protocol, the computation only
    consumes the recovered R. Both w and v are substituted: w_c = g^-K,
    v_c = R * y_c^K.
    """
    del receiver  # prover role only; R is already unmasked
    k = group.scalar(nonce) if nonce is not None else group.random_scalar(rng, nonzero=True)
    w_c = group.generator ** -k
    v_c = commitment.r_elem * third_party_pub ** k
    return ReceiverProof(w_c=w_c, v_c=v_c)


def verify_as_third_party(
    group: SchnorrGroup,
    sig: DirectedSignature,
    proof: Union[SignerProof, ReceiverProof],
    third_party: KeyPair,
    signer_pub: GroupElement,
    h: HashFunction = DEFAULT_HASH,
) -> bool:
    """Verify with the proof's components substituted into the signature.

    A signer proof replaces v only; a receiver proof replaces both w and
    v. The acceptance rule is verify_directed's, run under the third
    party's own key.
    """
    if isinstance(proof, SignerProof):
        substituted = DirectedSignature(s=sig.s, w=sig.w, v=proof.v_c, message=sig.message)
    elif isinstance(proof, ReceiverProof):
        substituted = DirectedSignature(s=sig.s, w=proof.w_c, v=proof.v_c, message=sig.message)
    else:
        raise TypeError(f"expected SignerProof or ReceiverProof, got {type(proof).__name__}")
    accept, _ = verify_directed(group, substituted, third_party, signer_pub, h)
    return accept
