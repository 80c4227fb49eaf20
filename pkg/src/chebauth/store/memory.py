"""In-memory store for simulations and the attack harness."""

import threading
from collections.abc import Iterator

from chebauth.errors import StoreConflictError
from chebauth.models.records import EnrollmentRecord
from chebauth.store.base import BaseStore


class MemoryStore(BaseStore):
    """Dictionary-backed store; nothing survives the process."""

    def __init__(self) -> None:
        self._records: dict[bytes, EnrollmentRecord] = {}
        self._lock = threading.Lock()

    def put(self, record: EnrollmentRecord) -> None:
        with self._lock:
            if record.o1 in self._records:
                raise StoreConflictError(f"o1 {record.o1.hex()[:16]}... already enrolled")
            self._records[record.o1] = record

    def get(self, o1: bytes) -> EnrollmentRecord | None:
        with self._lock:
            return self._records.get(o1)

    def records(self) -> Iterator[EnrollmentRecord]:
        with self._lock:
            snapshot = list(self._records.values())
        return iter(snapshot)

    def __len__(self) -> int:
        return len(self._records)
