"""Append-only binary enrollment database.

Layout (big-endian):

    header:  "CBA1" | version u8 | k u16 | r u8 | p (32 bytes)
    record:  id (16) | bb_t (ceil(N/8)) | x_s (32) | s (32) | o1 (32)

Records are fixed width, so a file cut at any record boundary is still a
valid database. An in-memory index by o1 is rebuilt on open.
"""

import logging
import os
import threading
from collections.abc import Iterator
from pathlib import Path

from pydantic import ValidationError

from chebauth.crypto.chebyshev import FIELD_BYTES, field_from_bytes, field_to_bytes
from chebauth.crypto.hashing import DIGEST_BYTES
from chebauth.errors import (
    ParameterError,
    StoreConflictError,
    StoreError,
    StoreIntegrityError,
)
from chebauth.models.biometric import BiometricVector
from chebauth.models.params import CodeParams
from chebauth.models.records import ID_BYTES, EnrollmentRecord
from chebauth.store.base import BaseStore

logger = logging.getLogger(__name__)

MAGIC = b"CBA1"
VERSION = 1
HEADER_SIZE = len(MAGIC) + 1 + 2 + 1 + FIELD_BYTES


def record_size(code: CodeParams) -> int:
    return ID_BYTES + code.n_bytes + 2 * FIELD_BYTES + DIGEST_BYTES


def encode_header(code: CodeParams, p: int) -> bytes:
    return (
        MAGIC
        + VERSION.to_bytes(1, "big")
        + code.k.to_bytes(2, "big")
        + code.r.to_bytes(1, "big")
        + field_to_bytes(p)
    )


def encode_record(record: EnrollmentRecord) -> bytes:
    return (
        record.id
        + record.bb_t.bits
        + field_to_bytes(record.x_s)
        + field_to_bytes(record.s)
        + record.o1
    )


def decode_record(data: bytes, code: CodeParams, p: int, offset: int = 0) -> EnrollmentRecord:
    """
    Decode one fixed-width record.

    Raises:
        StoreIntegrityError: If the bytes do not form a valid record
    """
    if len(data) != record_size(code):
        raise StoreIntegrityError(
            offset, f"record is {len(data)} bytes, expected {record_size(code)}"
        )

    pos = 0

    def take(size: int) -> bytes:
        nonlocal pos
        chunk = data[pos : pos + size]
        pos += size
        return chunk

    try:
        record = EnrollmentRecord(
            id=take(ID_BYTES),
            bb_t=BiometricVector(bits=take(code.n_bytes), n_bits=code.n),
            x_s=field_from_bytes(take(FIELD_BYTES)),
            s=field_from_bytes(take(FIELD_BYTES)),
            o1=take(DIGEST_BYTES),
        )
    except (ParameterError, ValidationError) as e:
        raise StoreIntegrityError(offset, f"invalid record: {e}") from e

    if record.s >= p:
        raise StoreIntegrityError(offset, "base point s is not below p")
    return record


class FileStore(BaseStore):
    """Single-file append-only store with an o1 index held in memory."""

    def __init__(self, path: Path, code: CodeParams, p: int, strict: bool = True):
        """
        Open (or create) a store file.

        Args:
            path: Database file
            code: Code parameters; must match the file header
            p: Prime modulus; must match the file header
            strict: Raise on a damaged tail instead of keeping the complete prefix

        Raises:
            StoreIntegrityError: On header mismatch, or on damage when strict
        """
        self.path = Path(path)
        self.code = code
        self.p = p
        self.damage: StoreIntegrityError | None = None

        self._index: dict[bytes, EnrollmentRecord] = {}
        self._good_end = HEADER_SIZE
        self._lock = threading.Lock()

        if self.path.exists() and self.path.stat().st_size > 0:
            self._load(strict)
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "wb") as f:
                f.write(encode_header(code, p))
                f.flush()
                os.fsync(f.fileno())

    def _load(self, strict: bool) -> None:
        data = self.path.read_bytes()

        header = data[:HEADER_SIZE]
        if header != encode_header(self.code, self.p):
            if header[: len(MAGIC)] != MAGIC:
                raise StoreIntegrityError(0, "bad magic, not a chebauth store")
            raise StoreIntegrityError(0, "header does not match configured code parameters / prime")

        size = record_size(self.code)
        offset = HEADER_SIZE
        while offset < len(data):
            chunk = data[offset : offset + size]
            try:
                if len(chunk) < size:
                    raise StoreIntegrityError(
                        offset, f"truncated record ({len(chunk)} of {size} bytes)"
                    )
                record = decode_record(chunk, self.code, self.p, offset)
                if record.o1 in self._index:
                    raise StoreIntegrityError(offset, "duplicate o1")
            except StoreIntegrityError as e:
                if strict:
                    raise
                logger.warning(
                    "Store %s damaged, keeping %d records: %s", self.path, len(self._index), e
                )
                self.damage = e
                break
            self._index[record.o1] = record
            offset += size
            self._good_end = offset

        logger.info("Loaded %d enrollment records from %s", len(self._index), self.path)

    def put(self, record: EnrollmentRecord) -> None:
        if record.bb_t.n_bits != self.code.n:
            raise ParameterError("record template length does not match store code parameters")

        with self._lock:
            if record.o1 in self._index:
                raise StoreConflictError(f"o1 {record.o1.hex()[:16]}... already enrolled")

            try:
                with open(self.path, "r+b") as f:
                    if self.damage is not None:
                        f.truncate(self._good_end)
                    f.seek(self._good_end)
                    f.write(encode_record(record))
                    f.flush()
                    os.fsync(f.fileno())
            except OSError as e:
                raise StoreError(f"failed to write {self.path}: {e}") from e

            self.damage = None
            self._good_end += record_size(self.code)
            self._index[record.o1] = record

    def get(self, o1: bytes) -> EnrollmentRecord | None:
        with self._lock:
            return self._index.get(o1)

    def records(self) -> Iterator[EnrollmentRecord]:
        with self._lock:
            snapshot = list(self._index.values())
        return iter(snapshot)

    def __len__(self) -> int:
        return len(self._index)
