"""Directed signatures over Schnorr groups, with threshold verification
and group-directed encryption.

A directed signature can be verified directly only by its designated
receiver; the signer or the receiver can independently enable any third
party to verify. The same masking construction extends to k-of-n
threshold verification and to a threshold cryptosystem where the session
secret is fresh per message and no trusted dealer exists.
"""

from .directed import (
    DirectedSignature,
    ReceiverProof,
    RecoveredCommitment,
    SignerNonceState,
    SignerProof,
    prove_by_receiver,
    prove_by_signer,
    sign_directed,
    verify_as_third_party,
    verify_directed,
)
from .group import (
    BadGeneratorError,
    CompositeModulusError,
    CompositeOrderError,
    GenerationError,
    GroupElement,
    GroupParameterError,
    KeyPair,
    NonInvertibleError,
    NotInSubgroupError,
    OrderNotDividingError,
    Scalar,
    SchnorrGroup,
    generate_group,
    is_probable_prime,
    keygen,
    mod_inv,
    validate_group,
)
from .hashing import (
    DEFAULT_HASH,
    FixtureHash,
    FixtureMissError,
    HashFunction,
    Sha256Hash,
    canonical_encode,
)
from .keystore import Keystore, KeystoreError
from .schnorr import SchnorrSignature, schnorr_sign, schnorr_verify
from .shamir import (
    Share,
    ShareIdError,
    SharingPolynomial,
    ThresholdRangeError,
    lagrange_coefficient_at_zero,
    reconstruct,
    split,
)
from .threshold import (
    GroupDirectory,
    GroupMember,
    MaskedShare,
    MemberNotFoundError,
    ModifiedShadow,
    PartialResult,
    QuorumMembershipError,
    QuorumSizeError,
    ThresholdSignature,
    combine_and_verify,
    modify_shadow,
    partial_result,
    recover_share,
    sign_for_group,
)
from .threshold_crypto import (
    DecryptionAuthenticationError,
    SenderAuthenticationError,
    ThresholdCiphertext,
    decrypt_with_quorum,
    encrypt_to_group,
)

__version__ = "0.1.0"
