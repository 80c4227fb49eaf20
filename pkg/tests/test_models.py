"""Tests for parameter, biometric and record models."""

from random import Random

import numpy as np
import pytest
from pydantic import ValidationError

from chebauth.crypto.chebyshev import DEFAULT_PRIME
from chebauth.crypto.fuzzy import fe_gen, random_vector
from chebauth.crypto.hashing import h
from chebauth.errors import ParameterError
from chebauth.models.attack import ActionKind, AdversaryAction, AdversaryScript
from chebauth.models.biometric import BiometricVector, HelperData
from chebauth.models.params import ChebParams, CodeParams
from chebauth.models.records import EnrollmentRecord
from chebauth.models.session import SessionKey


def test_code_params_defaults():
    code = CodeParams()
    assert (code.k, code.r, code.n, code.t, code.n_bytes) == (128, 5, 640, 2, 80)


@pytest.mark.parametrize(("k", "r"), [(0, 3), (8, 1), (8, 4), (8, 2), (30_000, 3)])
def test_code_params_invalid(k, r):
    with pytest.raises(ParameterError):
        CodeParams(k=k, r=r)


def test_cheb_params_validation():
    ChebParams(p=11, s=2, spub=4)
    with pytest.raises(ParameterError):
        ChebParams(p=12, s=2, spub=4)
    with pytest.raises(ParameterError):
        ChebParams(p=11, s=11, spub=4)


def test_biometric_vector_conversions():
    v = BiometricVector.from_bitstring("1010000011")
    assert v.n_bits == 10
    assert len(v) == 10
    assert v.bits == bytes([0b10100000, 0b11000000])
    assert v.to_bitstring() == "1010000011"
    assert BiometricVector.from_hex(v.to_hex(), 10) == v
    assert v.array().tolist() == [1, 0, 1, 0, 0, 0, 0, 0, 1, 1]
    assert BiometricVector.from_array(np.array(v.array())) == v


def test_biometric_vector_rejects_bad_packing():
    with pytest.raises(ParameterError):
        BiometricVector(bits=b"\x00\x00", n_bits=20)
    with pytest.raises(ParameterError):
        BiometricVector(bits=b"\xff", n_bits=4)
    with pytest.raises(ParameterError):
        BiometricVector.from_hex("zz", 8)


def test_helper_data_bytes(code):
    rng = Random(31)
    _, hd = fe_gen(random_vector(code, rng), b"pw", code, rng)
    data = hd.to_bytes()
    assert len(data) == 3 + code.n_bytes + 32
    assert data[:3] == b"\x00\x80\x05"
    assert HelperData.from_bytes(data) == hd
    with pytest.raises(ParameterError):
        HelperData.from_bytes(data[:-1])


def test_enrollment_record_checks_o1(code):
    rng = Random(32)
    bb_t = random_vector(code, rng)
    user_id = rng.randbytes(16)
    record = EnrollmentRecord(id=user_id, bb_t=bb_t, x_s=5, s=3, o1=h(bb_t.bits, user_id))
    assert record.o1 == h(bb_t.bits, user_id)

    with pytest.raises(ParameterError):
        EnrollmentRecord(id=user_id, bb_t=bb_t, x_s=5, s=3, o1=b"\x00" * 32)
    with pytest.raises(ParameterError):
        EnrollmentRecord(id=user_id, bb_t=bb_t, x_s=1, s=3, o1=h(bb_t.bits, user_id))


def test_session_key_fingerprint():
    key = SessionKey(key=b"\x01" * 32)
    assert key.fingerprint == h(b"\x01" * 32).hex()[:8]
    assert len(key.fingerprint) == 8


def test_credential_params_use_default_prime(enrolled):
    cred, _, _ = enrolled
    assert cred.params.p == DEFAULT_PRIME
    assert cred.code == CodeParams()


def test_adversary_action_validation():
    with pytest.raises(ParameterError):
        AdversaryAction(kind=ActionKind.REPLAY)
    with pytest.raises(ParameterError):
        AdversaryAction(kind=ActionKind.TAMPER, mask=0)
    with pytest.raises(ValidationError):
        AdversaryAction(kind="explode")


def test_adversary_script_from_yaml(tmp_path):
    path = tmp_path / "script.yaml"
    path.write_text("actions:\n  - kind: pass\n  - kind: tamper\n    offset: 3\n    mask: 0x80\n")
    script = AdversaryScript.from_yaml(path)
    assert script.action_for(1).kind == ActionKind.TAMPER
    assert script.action_for(1).mask == 0x80
    assert script.action_for(5).kind == ActionKind.PASS

    bare = tmp_path / "bare.yaml"
    bare.write_text("- kind: drop\n")
    assert AdversaryScript.from_yaml(bare).action_for(0).kind == ActionKind.DROP

    broken = tmp_path / "broken.yaml"
    broken.write_text("actions: [\n")
    with pytest.raises(ParameterError):
        AdversaryScript.from_yaml(broken)
