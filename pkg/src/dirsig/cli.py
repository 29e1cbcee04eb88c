"""Command-line front end: one command per protocol step.

The threshold steps are split per party on purpose — each member's view
(recover, shadow, partial) runs as its own command so multi-party flows
can be simulated honestly from files.

Exit codes: 0 success, 2 verification failure, 3 input error, 4 internal
error. Failures print `error: <code>: <detail>` on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import serialize
from .directed import (
    prove_by_receiver,
    prove_by_signer,
    sign_directed,
    verify_as_third_party,
    verify_directed,
)
from .group import (
    GenerationError,
    GroupParameterError,
    KeyPair,
    NonInvertibleError,
    NotInSubgroupError,
    SchnorrGroup,
    generate_group,
    keygen,
)
from .hashing import DEFAULT_HASH, FixtureHash, FixtureMissError, HashFunction
from .keystore import Keystore, KeystoreError
from .serialize import MalformedSignatureError, SerializationError
from .shamir import ShareIdError, ThresholdRangeError
from .threshold import (
    GroupDirectory,
    GroupMember,
    MemberNotFoundError,
    QuorumMembershipError,
    QuorumSizeError,
    combine_and_verify,
    modify_shadow,
    partial_result,
    recover_share,
    sign_for_group,
)
from .threshold_crypto import (
    DecryptionAuthenticationError,
    SenderAuthenticationError,
    decrypt_with_quorum,
    encrypt_to_group,
)

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

_DEMO_MESSAGE = b"message"


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise _UsageError(message)


@dataclass
class CliConfig:
    """Resolved per-invocation configuration."""

    group: Optional[SchnorrGroup]
    keystore: Keystore
    hash_fn: HashFunction
    rng: random.Random
    out_format: str


def _config(args) -> CliConfig:
    group = None
    if getattr(args, "group", None):
        group = serialize.group_from_dict(serialize.load_json(args.group))
    hash_spec = getattr(args, "hash", "sha256")
    if hash_spec == "sha256":
        hash_fn: HashFunction = DEFAULT_HASH
    elif hash_spec.startswith("fixture:") and hash_spec[len("fixture:"):]:
        hash_fn = FixtureHash.from_file(hash_spec[len("fixture:"):])
    else:
        raise _UsageError(f"--hash must be sha256 or fixture:FILE, got {hash_spec!r}")
    seed = getattr(args, "seed", None)
    rng = random.Random(int(seed, 16)) if seed else random.SystemRandom()
    return CliConfig(
        group=group,
        keystore=Keystore(getattr(args, "keystore", ".")),
        hash_fn=hash_fn,
        rng=rng,
        out_format=getattr(args, "format", "json"),
    )


def _require_group(cfg: CliConfig) -> SchnorrGroup:
    if cfg.group is None:
        raise _UsageError("--group FILE is required for this command")
    return cfg.group


def _emit(cfg: CliConfig, args, data: dict, *, private: bool = False) -> None:
    out = getattr(args, "out", None)
    if out:
        serialize.save_json(out, data)
        if private:
            os.chmod(out, 0o600)
    elif cfg.out_format == "hex":
        for key, value in data.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, separators=(",", ":"))
            print(f"{key}={value}")
    else:
        print(json.dumps(data, indent=2, sort_keys=True))


def _fail_verification(code: str, detail: str) -> int:
    print(f"error: {code}: {detail}", file=sys.stderr)
    return EXIT_VERIFY


def _read_message(path: str) -> bytes:
    return Path(path).read_bytes()


def _parse_quorum_ids(group: SchnorrGroup, text: str):
    ids = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise _UsageError("empty identity in quorum list")
        ids.append(group.scalar(serialize.hex_to_int(chunk)))
    return ids


def _directory_from_args(cfg: CliConfig, group: SchnorrGroup, args) -> GroupDirectory:
    if getattr(args, "directory", None):
        return serialize.directory_from_dict(group, serialize.load_json(args.directory))
    if getattr(args, "member", None):
        members = []
        for entry in args.member:
            name, _, u_hex = entry.partition("=")
            if not name or not u_hex:
                raise _UsageError(f"--member expects NAME=UHEX, got {entry!r}")
            members.append(
                GroupMember(
                    u=group.scalar(serialize.hex_to_int(u_hex)),
                    y=cfg.keystore.load_public(group, name),
                )
            )
        return GroupDirectory(members=tuple(members))
    raise _UsageError("provide --directory FILE or --member NAME=UHEX entries")


# -- commands -----------------------------------------------------------------

def cmd_paramgen(args) -> int:
    cfg = _config(args)
    group = generate_group(args.p_bits, args.q_bits, cfg.rng)
    _emit(cfg, args, serialize.group_to_dict(group))
    return EXIT_OK


def cmd_keygen(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    keypair = keygen(group, cfg.rng)
    cfg.keystore.save_keypair(args.name, keypair)
    print(f"wrote {cfg.keystore.keypair_path(args.name)} and {cfg.keystore.public_path(args.name)}")
    return EXIT_OK


def cmd_sign(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    signer = cfg.keystore.load_keypair(group, args.signer)
    receiver_pub = cfg.keystore.load_public(group, args.receiver)
    message = _read_message(args.message_file)
    sig, nonces = sign_directed(group, signer, receiver_pub, message, cfg.rng, cfg.hash_fn)
    serialize.save_json(args.out, serialize.directed_signature_to_dict(sig))
    nonce_out = args.nonce_out or f"{args.out}.nonces"
    serialize.save_json(nonce_out, serialize.nonce_state_to_dict(nonces))
    os.chmod(nonce_out, 0o600)
    print(f"wrote {args.out} (nonce state: {nonce_out})")
    return EXIT_OK


def cmd_dverify(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    sig = serialize.directed_signature_from_dict(group, serialize.load_json(args.sig))
    receiver = cfg.keystore.load_keypair(group, args.receiver)
    signer_pub = cfg.keystore.load_public(group, args.signer)
    accept, commitment = verify_directed(group, sig, receiver, signer_pub, cfg.hash_fn)
    if args.commitment_out:
        serialize.save_json(args.commitment_out, serialize.commitment_to_dict(commitment))
        os.chmod(args.commitment_out, 0o600)
    if not accept:
        return _fail_verification("verification-failed", "directed signature rejected")
    print("accept")
    return EXIT_OK


def cmd_prove_signer(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    nonces = serialize.nonce_state_from_dict(group, serialize.load_json(args.nonces))
    third_pub = cfg.keystore.load_public(group, args.third_party)
    proof = prove_by_signer(group, nonces, third_pub)
    _emit(cfg, args, serialize.proof_to_dict(proof))
    return EXIT_OK


def cmd_prove_receiver(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    commitment = serialize.commitment_from_dict(group, serialize.load_json(args.commitment))
    receiver = cfg.keystore.load_keypair(group, args.receiver)
    third_pub = cfg.keystore.load_public(group, args.third_party)
    proof = prove_by_receiver(group, commitment, receiver, third_pub, cfg.rng)
    _emit(cfg, args, serialize.proof_to_dict(proof))
    return EXIT_OK


def cmd_cverify(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    sig = serialize.directed_signature_from_dict(group, serialize.load_json(args.sig))
    proof = serialize.proof_from_dict(group, serialize.load_json(args.proof))
    third = cfg.keystore.load_keypair(group, args.third_party)
    signer_pub = cfg.keystore.load_public(group, args.signer)
    if not verify_as_third_party(group, sig, proof, third, signer_pub, cfg.hash_fn):
        return _fail_verification("verification-failed", "third-party verification rejected")
    print("accept")
    return EXIT_OK


def cmd_tsign(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    signer = cfg.keystore.load_keypair(group, args.signer)
    directory = _directory_from_args(cfg, group, args)
    message = _read_message(args.message_file)
    sig = sign_for_group(group, signer, directory, args.k, message, cfg.rng, cfg.hash_fn)
    serialize.save_json(args.out, serialize.threshold_signature_to_dict(sig))
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_trecover(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    sig = serialize.threshold_signature_from_dict(group, serialize.load_json(args.sig))
    member = cfg.keystore.load_keypair(group, args.member)
    u = group.scalar(serialize.hex_to_int(args.u))
    share = recover_share(group, sig, member, u)
    _emit(cfg, args, serialize.share_to_dict(share), private=True)
    return EXIT_OK


def cmd_tshadow(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    share = serialize.share_from_dict(group, serialize.load_json(args.share))
    quorum_ids = _parse_quorum_ids(group, args.quorum)
    shadow = modify_shadow(share, quorum_ids)
    _emit(cfg, args, serialize.shadow_to_dict(shadow), private=True)
    return EXIT_OK


def cmd_tpartial(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    shadow = serialize.shadow_from_dict(group, serialize.load_json(args.shadow))
    partial = partial_result(group, shadow)
    _emit(cfg, args, serialize.partial_to_dict(partial))
    return EXIT_OK


def cmd_tcombine(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    sig = serialize.threshold_signature_from_dict(group, serialize.load_json(args.sig))
    partials = [
        serialize.partial_from_dict(group, serialize.load_json(path)) for path in args.partials
    ]
    signer_pub = cfg.keystore.load_public(group, args.signer)
    accept = combine_and_verify(group, sig, partials, signer_pub, cfg.hash_fn)
    combined = partials[0].value
    for partial in partials[1:]:
        combined = combined * partial.value
    print(f"R={serialize.int_to_hex(combined.value)}")
    if not accept:
        return _fail_verification("verification-failed", "threshold verification rejected")
    print("accept")
    return EXIT_OK


def cmd_gencrypt(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    sender = cfg.keystore.load_keypair(group, args.sender)
    directory = _directory_from_args(cfg, group, args)
    message = _read_message(args.message_file)
    ct = encrypt_to_group(group, sender, directory, args.k, message, cfg.rng, cfg.hash_fn)
    serialize.save_json(args.out, serialize.ciphertext_to_dict(ct))
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_gdecrypt(args) -> int:
    cfg = _config(args)
    group = _require_group(cfg)
    ct = serialize.ciphertext_from_dict(group, serialize.load_json(args.ct))
    sender_pub = cfg.keystore.load_public(group, args.sender)
    quorum = []
    for entry in args.member:
        name, _, u_hex = entry.partition("=")
        if not name or not u_hex:
            raise _UsageError(f"--member expects NAME=UHEX, got {entry!r}")
        member = cfg.keystore.load_keypair(group, name)
        quorum.append((member, group.scalar(serialize.hex_to_int(u_hex))))
    message = decrypt_with_quorum(group, ct, quorum, sender_pub, cfg.hash_fn)
    if args.out:
        Path(args.out).write_bytes(message)
        print(f"wrote {args.out}")
    else:
        print(serialize.bytes_to_hex(message))
    return EXIT_OK


def cmd_replay_example(args) -> int:
    """Deterministic walkthrough of the built-in toy example.

    Tiny textbook parameters (p=23, q=11, g=3), fixed keys and nonces, and
    a table-driven hash make every intermediate value reproducible.
    """
    del args
    group = SchnorrGroup(23, 11, 3)
    signer = KeyPair.from_private(group, 4)
    receiver = KeyPair.from_private(group, 7)
    third = KeyPair.from_private(group, 6)
    h = FixtureHash({(18, _DEMO_MESSAGE): 10})

    print(f"group: p={group.p} q={group.q} g={group.g}")
    print(
        f"keys: signer y={signer.y.value}, receiver y={receiver.y.value}, "
        f"third party y={third.y.value}"
    )
    print(f"message: {_DEMO_MESSAGE.decode()} ({_DEMO_MESSAGE.hex()})")

    sig, nonces = sign_directed(group, signer, receiver.y, _DEMO_MESSAGE, h=h, nonces=(9, 5))
    print("signing with nonces k1=9 k2=5:")
    print(f"  W_B = {sig.w.value}")
    print(f"  V_B = {sig.v.value}")
    print(f"  S_A = {sig.s.value}")

    accept, commitment = verify_directed(group, sig, receiver, signer.y, h)
    print(
        f"receiver verification: R = {commitment.r_elem.value}, "
        f"r_A = {commitment.r_hash.value} -> {'accept' if accept else 'reject'}"
    )

    signer_proof = prove_by_signer(group, nonces, third.y)
    print(f"signer proof: V_C = {signer_proof.v_c.value}")
    accept_signer = verify_as_third_party(group, sig, signer_proof, third, signer.y, h)
    print(f"third-party verification (signer proof): {'accept' if accept_signer else 'reject'}")

    receiver_proof = prove_by_receiver(group, commitment, receiver, third.y, nonce=8)
    print(f"receiver proof: W_C = {receiver_proof.w_c.value}, V_C = {receiver_proof.v_c.value}")
    accept_receiver = verify_as_third_party(group, sig, receiver_proof, third, signer.y, h)
    print(
        f"third-party verification (receiver proof): "
        f"{'accept' if accept_receiver else 'reject'}"
    )

    if not (accept and accept_signer and accept_receiver):
        return _fail_verification("verification-failed", "replay did not verify")
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="dirsig",
        description="Directed signatures with threshold verification and group encryption.",
    )
    common = _ArgumentParser(add_help=False)
    common.add_argument("--group", metavar="FILE", help="group parameter file")
    common.add_argument("--keystore", metavar="DIR", default=".", help="key directory")
    common.add_argument(
        "--hash", metavar="MODE", default="sha256", help="sha256 or fixture:FILE"
    )
    common.add_argument("--seed", metavar="HEX", help="deterministic rng seed (testing only)")
    common.add_argument("--format", choices=("json", "hex"), default="json")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("paramgen", parents=[common], help="generate group parameters")
    p.add_argument("--p-bits", type=int, default=512)
    p.add_argument("--q-bits", type=int, default=160)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_paramgen)

    p = sub.add_parser("keygen", parents=[common], help="generate a named key pair")
    p.add_argument("name")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("sign", parents=[common], help="directed-sign a message")
    p.add_argument("--signer", required=True, metavar="NAME")
    p.add_argument("--receiver", required=True, metavar="NAME")
    p.add_argument("--message-file", required=True, metavar="FILE")
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--nonce-out", metavar="FILE", help="default OUT.nonces")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("dverify", parents=[common], help="verify as the designated receiver")
    p.add_argument("--receiver", required=True, metavar="NAME")
    p.add_argument("--signer", required=True, metavar="NAME")
    p.add_argument("--sig", required=True, metavar="FILE")
    p.add_argument("--commitment-out", metavar="FILE")
    p.set_defaults(func=cmd_dverify)

    p = sub.add_parser("prove-signer", parents=[common], help="signer proof for a third party")
    p.add_argument("--nonces", required=True, metavar="FILE")
    p.add_argument("--third-party", required=True, metavar="NAME")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_prove_signer)

    p = sub.add_parser(
        "prove-receiver", parents=[common], help="receiver proof for a third party"
    )
    p.add_argument("--commitment", required=True, metavar="FILE")
    p.add_argument("--receiver", required=True, metavar="NAME")
    p.add_argument("--third-party", required=True, metavar="NAME")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_prove_receiver)

    p = sub.add_parser("cverify", parents=[common], help="verify as a third party")
    p.add_argument("--sig", required=True, metavar="FILE")
    p.add_argument("--proof", required=True, metavar="FILE")
    p.add_argument("--third-party", required=True, metavar="NAME")
    p.add_argument("--signer", required=True, metavar="NAME")
    p.set_defaults(func=cmd_cverify)

    p = sub.add_parser("tsign", parents=[common], help="sign for k-of-n group verification")
    p.add_argument("--signer", required=True, metavar="NAME")
    p.add_argument("--directory", metavar="FILE")
    p.add_argument("--member", action="append", metavar="NAME=UHEX")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--message-file", required=True, metavar="FILE")
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=cmd_tsign)

    p = sub.add_parser("trecover", parents=[common], help="recover one member's share")
    p.add_argument("--sig", required=True, metavar="FILE")
    p.add_argument("--member", required=True, metavar="NAME")
    p.add_argument("--u", required=True, metavar="HEX")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_trecover)

    p = sub.add_parser("tshadow", parents=[common], help="scale a share for a quorum")
    p.add_argument("--share", required=True, metavar="FILE")
    p.add_argument("--quorum", required=True, metavar="HEX,HEX,...")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_tshadow)

    p = sub.add_parser("tpartial", parents=[common], help="lift a shadow to a partial result")
    p.add_argument("--shadow", required=True, metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_tpartial)

    p = sub.add_parser("tcombine", parents=[common], help="combine partials and verify")
    p.add_argument("--sig", required=True, metavar="FILE")
    p.add_argument("--signer", required=True, metavar="NAME")
    p.add_argument("--partials", required=True, nargs="+", metavar="FILE")
    p.set_defaults(func=cmd_tcombine)

    p = sub.add_parser("gencrypt", parents=[common], help="encrypt to a k-of-n group")
    p.add_argument("--sender", required=True, metavar="NAME")
    p.add_argument("--directory", metavar="FILE")
    p.add_argument("--member", action="append", metavar="NAME=UHEX")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--message-file", required=True, metavar="FILE")
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=cmd_gencrypt)

    p = sub.add_parser("gdecrypt", parents=[common], help="decrypt with a quorum of members")
    p.add_argument("--ct", required=True, metavar="FILE")
    p.add_argument("--sender", required=True, metavar="NAME")
    p.add_argument("--member", action="append", required=True, metavar="NAME=UHEX")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_gdecrypt)

    p = sub.add_parser(
        "replay-example", parents=[common], help="print the deterministic toy walkthrough"
    )
    p.set_defaults(func=cmd_replay_example)

    return parser


_ERROR_CODES = (
    (SenderAuthenticationError, EXIT_VERIFY, "sender-authentication-failed"),
    (DecryptionAuthenticationError, EXIT_VERIFY, "decryption-authentication-failed"),
    (FileNotFoundError, EXIT_INPUT, "file-not-found"),
    (IsADirectoryError, EXIT_INPUT, "file-not-found"),
    (MalformedSignatureError, EXIT_INPUT, "malformed-signature"),
    (SerializationError, EXIT_INPUT, "parse-error"),
    (KeystoreError, EXIT_INPUT, "keystore-error"),
    (FixtureMissError, EXIT_INPUT, "fixture-miss"),
    (GroupParameterError, EXIT_INPUT, "invalid-group"),
    (NotInSubgroupError, EXIT_INPUT, "invalid-element"),
    (MemberNotFoundError, EXIT_INPUT, "member-not-found"),
    (QuorumSizeError, EXIT_INPUT, "quorum-size"),
    (QuorumMembershipError, EXIT_INPUT, "quorum-membership"),
    (ShareIdError, EXIT_INPUT, "share-id"),
    (ThresholdRangeError, EXIT_INPUT, "threshold-range"),
    (NonInvertibleError, EXIT_INPUT, "non-invertible"),
    (GenerationError, EXIT_INTERNAL, "generation-timeout"),
    (_UsageError, EXIT_INPUT, "bad-arguments"),
    (ValueError, EXIT_INPUT, "bad-arguments"),
)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            parser.print_help(sys.stderr)
            return EXIT_INPUT
        return args.func(args)
    except Exception as exc:  # mapped to the documented exit codes
        for klass, code, slug in _ERROR_CODES:
            if isinstance(exc, klass):
                print(f"error: {slug}: {exc}", file=sys.stderr)
                return code
        print(f"error: internal-error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
