"""Tests for the enrollment stores and the credential file."""

from random import Random

import pytest

from chebauth.crypto.chebyshev import DEFAULT_PRIME
from chebauth.crypto.fuzzy import random_vector
from chebauth.crypto.hashing import h
from chebauth.errors import StoreConflictError, StoreError, StoreIntegrityError
from chebauth.models.params import CodeParams
from chebauth.models.records import EnrollmentRecord
from chebauth.store.credential import (
    decode_credential,
    encode_credential,
    load_credential,
    save_credential,
)
from chebauth.store.file import HEADER_SIZE, FileStore, decode_record, encode_record, record_size
from chebauth.store.memory import MemoryStore

P = DEFAULT_PRIME


def _record(code: CodeParams, rng: Random) -> EnrollmentRecord:
    bb_t = random_vector(code, rng)
    user_id = rng.randbytes(16)
    return EnrollmentRecord(
        id=user_id,
        bb_t=bb_t,
        x_s=rng.randrange(2, 1 << 255),
        s=rng.randrange(P),
        o1=h(bb_t.bits, user_id),
    )


def test_memory_store_put_get(small_code):
    rng = Random(41)
    store = MemoryStore()
    record = _record(small_code, rng)
    store.put(record)
    assert store.get(record.o1) == record
    assert store.get(b"\x00" * 32) is None
    assert record.o1 in store
    assert len(store) == 1
    with pytest.raises(StoreConflictError):
        store.put(record)


def test_record_codec(small_code):
    record = _record(small_code, Random(42))
    data = encode_record(record)
    assert len(data) == record_size(small_code) == 16 + 6 + 32 + 32 + 32
    assert decode_record(data, small_code, P) == record
    with pytest.raises(StoreIntegrityError):
        decode_record(data[:-1], small_code, P)


def test_file_store_survives_reopen(store_path, small_code):
    rng = Random(43)
    records = [_record(small_code, rng) for _ in range(5)]
    store = FileStore(store_path, small_code, P)
    for record in records:
        store.put(record)

    reopened = FileStore(store_path, small_code, P)
    assert len(reopened) == 5
    assert list(reopened.records()) == records
    for record in records:
        assert reopened.get(record.o1) == record
    assert store_path.stat().st_size == HEADER_SIZE + 5 * record_size(small_code)


def test_file_store_conflict(store_path, small_code):
    record = _record(small_code, Random(44))
    store = FileStore(store_path, small_code, P)
    store.put(record)
    with pytest.raises(StoreConflictError):
        store.put(record)
    assert len(FileStore(store_path, small_code, P)) == 1


def test_header_mismatch(store_path, small_code):
    FileStore(store_path, small_code, P)
    with pytest.raises(StoreIntegrityError) as exc:
        FileStore(store_path, CodeParams(k=16, r=5), P)
    assert exc.value.offset == 0

    store_path.write_bytes(b"JUNK" + b"\x00" * 60)
    with pytest.raises(StoreIntegrityError):
        FileStore(store_path, small_code, P)


def test_truncated_tail_strict_and_lenient(store_path, small_code):
    rng = Random(45)
    store = FileStore(store_path, small_code, P)
    records = [_record(small_code, rng) for _ in range(3)]
    for record in records:
        store.put(record)

    size = record_size(small_code)
    data = store_path.read_bytes()
    store_path.write_bytes(data[: HEADER_SIZE + 2 * size + 10])

    with pytest.raises(StoreIntegrityError) as exc:
        FileStore(store_path, small_code, P)
    assert exc.value.offset == HEADER_SIZE + 2 * size

    lenient = FileStore(store_path, small_code, P, strict=False)
    assert len(lenient) == 2
    assert lenient.damage is not None
    assert lenient.get(records[2].o1) is None

    extra = _record(small_code, rng)
    lenient.put(extra)
    assert store_path.stat().st_size == HEADER_SIZE + 3 * size

    healed = FileStore(store_path, small_code, P)
    assert [r.o1 for r in healed.records()] == [records[0].o1, records[1].o1, extra.o1]


def test_corrupted_record_is_reported(store_path, small_code):
    rng = Random(46)
    store = FileStore(store_path, small_code, P)
    store.put(_record(small_code, rng))

    data = bytearray(store_path.read_bytes())
    data[HEADER_SIZE + 3] ^= 0xFF  # inside the id, so o1 no longer matches
    store_path.write_bytes(bytes(data))
    with pytest.raises(StoreIntegrityError) as exc:
        FileStore(store_path, small_code, P)
    assert exc.value.offset == HEADER_SIZE


def test_credential_file(tmp_path, enrolled):
    cred, _, _ = enrolled
    path = tmp_path / "nested" / "alice.cbc"
    save_credential(path, cred)
    assert load_credential(path) == cred
    assert path.read_bytes()[:4] == b"CBC1"
    assert not path.with_suffix(".cbc.tmp").exists()


def test_credential_decode_errors(enrolled, tmp_path):
    cred, _, _ = enrolled
    data = encode_credential(cred)
    assert decode_credential(data) == cred
    with pytest.raises(StoreIntegrityError):
        decode_credential(b"XXXX" + data[4:])
    with pytest.raises(StoreIntegrityError):
        decode_credential(data[:-5])
    with pytest.raises(StoreError):
        load_credential(tmp_path / "missing.cbc")


def test_credential_with_out_of_range_public_values(enrolled, tmp_path):
    cred, _, _ = enrolled
    data = bytearray(encode_credential(cred))
    spub_at = 5 + 3 * 32
    data[spub_at : spub_at + 32] = b"\xff" * 32
    path = tmp_path / "corrupt.cbc"
    path.write_bytes(bytes(data))

    with pytest.raises(StoreIntegrityError) as exc:
        load_credential(path)
    assert exc.value.offset == 5 + 2 * 32
