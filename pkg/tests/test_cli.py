"""Command-line workflows driven end-to-end from files."""

import json
import subprocess
import sys

import pytest

from dirsig import serialize
from dirsig.cli import main
from dirsig.keystore import Keystore

from conftest import MSG


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture()
def toy_env(tmp_path, toy_group, toy_keys):
    """Keystore with the fixed toy keys plus group and message files."""
    store = Keystore(tmp_path)
    store.save_keypair("alice", toy_keys["signer"])
    store.save_keypair("bob", toy_keys["receiver"])
    store.save_keypair("carol", toy_keys["third"])
    store.save_keypair("dave", toy_keys["extra"])
    group_file = tmp_path / "group.json"
    serialize.save_json(group_file, serialize.group_to_dict(toy_group))
    message_file = tmp_path / "message.bin"
    message_file.write_bytes(MSG)
    return tmp_path, group_file, message_file


def test_full_directed_workflow_at_production_size(tmp_path):
    group_file = tmp_path / "group.json"
    message = tmp_path / "m.bin"
    message.write_bytes(b"wire the funds")
    sig = tmp_path / "sig.json"
    commitment = tmp_path / "commitment.json"
    proof = tmp_path / "proof.json"

    assert run("paramgen", "--p-bits", 512, "--q-bits", 160, "--out", group_file) == 0
    for name in ("alice", "bob", "carol"):
        assert run("keygen", name, "--group", group_file, "--keystore", tmp_path) == 0
    assert run(
        "sign", "--group", group_file, "--keystore", tmp_path,
        "--signer", "alice", "--receiver", "bob",
        "--message-file", message, "--out", sig,
    ) == 0
    assert run(
        "dverify", "--group", group_file, "--keystore", tmp_path,
        "--receiver", "bob", "--signer", "alice", "--sig", sig,
        "--commitment-out", commitment,
    ) == 0
    assert run(
        "prove-receiver", "--group", group_file, "--keystore", tmp_path,
        "--commitment", commitment, "--receiver", "bob",
        "--third-party", "carol", "--out", proof,
    ) == 0
    assert run(
        "cverify", "--group", group_file, "--keystore", tmp_path,
        "--sig", sig, "--proof", proof, "--third-party", "carol", "--signer", "alice",
    ) == 0

    # the signer can prove independently via the retained nonce state
    signer_proof = tmp_path / "signer_proof.json"
    assert run(
        "prove-signer", "--group", group_file, "--keystore", tmp_path,
        "--nonces", f"{sig}.nonces", "--third-party", "carol", "--out", signer_proof,
    ) == 0
    assert run(
        "cverify", "--group", group_file, "--keystore", tmp_path,
        "--sig", sig, "--proof", signer_proof, "--third-party", "carol",
        "--signer", "alice",
    ) == 0


def test_replay_example_prints_all_intermediates(capsys):
    assert run("replay-example") == 0
    out = capsys.readouterr().out
    for line in (
        "W_B = 16", "V_B = 1", "r_A = 10", "S_A = 5", "R = 18",
        "V_C = 16", "W_C = 4", "V_C = 9",
    ):
        assert line in out
    assert out.count("accept") == 3
    assert "reject" not in out


def test_tampered_signature_fails_dverify(toy_env, capsys):
    tmp_path, group_file, message_file = toy_env
    sig = tmp_path / "sig.json"
    assert run(
        "sign", "--group", group_file, "--keystore", tmp_path,
        "--signer", "alice", "--receiver", "bob",
        "--message-file", message_file, "--out", sig,
    ) == 0
    import stat

    nonce_mode = stat.S_IMODE((tmp_path / "sig.json.nonces").stat().st_mode)
    assert nonce_mode == 0o600  # signer nonce state is secret material
    data = json.loads(sig.read_text())
    data["s"] = format((int(data["s"], 16) + 1) % 11, "x")
    sig.write_text(json.dumps(data))
    assert run(
        "dverify", "--group", group_file, "--keystore", tmp_path,
        "--receiver", "bob", "--signer", "alice", "--sig", sig,
    ) == 2
    assert "verification-failed" in capsys.readouterr().err


def test_seeded_commands_are_reproducible(tmp_path):
    out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out_a, out_b):
        assert run(
            "paramgen", "--p-bits", 96, "--q-bits", 32, "--seed", "c0ffee", "--out", out
        ) == 0
    assert out_a.read_bytes() == out_b.read_bytes()

    store_a, store_b = tmp_path / "ks_a", tmp_path / "ks_b"
    for store in (store_a, store_b):
        assert run(
            "keygen", "alice", "--group", out_a, "--keystore", store, "--seed", "1234"
        ) == 0
    assert (store_a / "alice.key").read_bytes() == (store_b / "alice.key").read_bytes()

    message = tmp_path / "m.bin"
    message.write_bytes(b"deterministic")
    assert run("keygen", "bob", "--group", out_a, "--keystore", store_a, "--seed", "99") == 0
    for sig_name in ("s1.json", "s2.json"):
        assert run(
            "sign", "--group", out_a, "--keystore", store_a,
            "--signer", "alice", "--receiver", "bob",
            "--message-file", message, "--out", tmp_path / sig_name, "--seed", "abcd",
        ) == 0
    assert (tmp_path / "s1.json").read_bytes() == (tmp_path / "s2.json").read_bytes()

    for name in ("t1.json", "t2.json"):
        assert run(
            "tsign", "--group", out_a, "--keystore", store_a,
            "--signer", "alice", "--k", 1, "--member", "bob=1",
            "--message-file", message, "--out", tmp_path / name, "--seed", "f00d",
        ) == 0
        assert run(
            "gencrypt", "--group", out_a, "--keystore", store_a,
            "--sender", "alice", "--k", 1, "--member", "bob=1",
            "--message-file", message, "--out", tmp_path / ("ct_" + name),
            "--seed", "f00d",
        ) == 0
    assert (tmp_path / "t1.json").read_bytes() == (tmp_path / "t2.json").read_bytes()
    assert (tmp_path / "ct_t1.json").read_bytes() == (tmp_path / "ct_t2.json").read_bytes()


def test_threshold_workflow_two_quorums(toy_env, capsys):
    tmp_path, group_file, message_file = toy_env
    tsig = tmp_path / "tsig.json"
    assert run(
        "tsign", "--group", group_file, "--keystore", tmp_path,
        "--signer", "alice", "--k", 2,
        "--member", "bob=1", "--member", "carol=2", "--member", "dave=3",
        "--message-file", message_file, "--out", tsig,
    ) == 0

    members = {1: "bob", 2: "carol", 3: "dave"}
    recovered_r = []
    for quorum in ((1, 2), (2, 3)):
        quorum_arg = ",".join(format(u, "x") for u in quorum)
        partial_files = []
        for u in quorum:
            share = tmp_path / f"share_{u}.json"
            shadow = tmp_path / f"shadow_{u}.json"
            partial = tmp_path / f"partial_{u}.json"
            assert run(
                "trecover", "--group", group_file, "--keystore", tmp_path,
                "--sig", tsig, "--member", members[u], "--u", format(u, "x"),
                "--out", share,
            ) == 0
            assert run(
                "tshadow", "--group", group_file, "--share", share,
                "--quorum", quorum_arg, "--out", shadow,
            ) == 0
            assert run(
                "tpartial", "--group", group_file, "--shadow", shadow, "--out", partial
            ) == 0
            partial_files.append(partial)
        assert run(
            "tcombine", "--group", group_file, "--keystore", tmp_path,
            "--sig", tsig, "--signer", "alice", "--partials", *partial_files,
        ) == 0
        out = capsys.readouterr().out
        assert "accept" in out
        recovered_r.append([l for l in out.splitlines() if l.startswith("R=")][0])
    assert recovered_r[0] == recovered_r[1]


def test_group_encryption_workflow(toy_env, tmp_path):
    _, group_file, message_file = toy_env
    ct = tmp_path / "ct.json"
    plain = tmp_path / "plain.bin"
    assert run(
        "gencrypt", "--group", group_file, "--keystore", tmp_path,
        "--sender", "alice", "--k", 2,
        "--member", "bob=1", "--member", "carol=2", "--member", "dave=3",
        "--message-file", message_file, "--out", ct,
    ) == 0
    assert run(
        "gdecrypt", "--group", group_file, "--keystore", tmp_path,
        "--ct", ct, "--sender", "alice",
        "--member", "carol=2", "--member", "dave=3", "--out", plain,
    ) == 0
    assert plain.read_bytes() == MSG


def test_gdecrypt_undersized_quorum(toy_env, tmp_path, capsys):
    _, group_file, message_file = toy_env
    ct = tmp_path / "ct.json"
    assert run(
        "gencrypt", "--group", group_file, "--keystore", tmp_path,
        "--sender", "alice", "--k", 2,
        "--member", "bob=1", "--member", "carol=2",
        "--message-file", message_file, "--out", ct,
    ) == 0
    assert run(
        "gdecrypt", "--group", group_file, "--keystore", tmp_path,
        "--ct", ct, "--sender", "alice", "--member", "bob=1",
    ) == 3
    assert "quorum-size" in capsys.readouterr().err


def test_fixture_hash_mode(toy_env, tmp_path, capsys):
    """dverify accepts the fixed toy signature under a fixture-table hash."""
    _, group_file, _ = toy_env
    fixture = tmp_path / "fixture.json"
    fixture.write_text(
        json.dumps({"entries": [{"element": "12", "message": MSG.hex(), "scalar": "10"}]})
    )
    sig = tmp_path / "sig.json"
    sig.write_text(json.dumps({"s": "5", "w": "10", "v": "1", "m": MSG.hex()}))
    assert run(
        "dverify", "--group", group_file, "--keystore", tmp_path,
        "--receiver", "bob", "--signer", "alice", "--sig", sig,
        "--hash", f"fixture:{fixture}",
    ) == 0
    assert "accept" in capsys.readouterr().out


def test_input_error_paths(toy_env, tmp_path, capsys):
    _, group_file, _ = toy_env
    assert run(
        "dverify", "--group", group_file, "--keystore", tmp_path,
        "--receiver", "bob", "--signer", "alice", "--sig", tmp_path / "missing.json",
    ) == 3
    assert "file-not-found" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(
        "dverify", "--group", group_file, "--keystore", tmp_path,
        "--receiver", "bob", "--signer", "alice", "--sig", bad,
    ) == 3
    assert "parse-error" in capsys.readouterr().err

    bad_group = tmp_path / "bad_group.json"
    bad_group.write_text(json.dumps({"p": "16", "q": "b", "g": "3"}))
    assert run("keygen", "x", "--group", bad_group, "--keystore", tmp_path) == 3
    assert "invalid-group" in capsys.readouterr().err

    assert run("tsign", "--k", "1") == 3  # missing required flags
    assert "bad-arguments" in capsys.readouterr().err


def test_terse_hex_output_format(toy_env, tmp_path, capsys):
    tmp_path_env, group_file, message_file = toy_env
    tsig = tmp_path_env / "tsig.json"
    assert run(
        "tsign", "--group", group_file, "--keystore", tmp_path_env,
        "--signer", "alice", "--k", 1, "--member", "bob=1",
        "--message-file", message_file, "--out", tsig,
    ) == 0
    capsys.readouterr()
    assert run(
        "trecover", "--group", group_file, "--keystore", tmp_path_env,
        "--sig", tsig, "--member", "bob", "--u", "1", "--format", "hex",
    ) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert sorted(line.split("=")[0] for line in lines) == ["u", "v"]


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "dirsig", "replay-example"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "S_A = 5" in proc.stdout
