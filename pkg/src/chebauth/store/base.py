"""Base enrollment store interface."""

from abc import ABC, abstractmethod
from collections.abc import Iterator

from chebauth.models.records import EnrollmentRecord


class BaseStore(ABC):
    """Server-side enrollment database keyed by the O1 digest."""

    @abstractmethod
    def put(self, record: EnrollmentRecord) -> None:
        """
        Persist a record. Must be durable before returning.

        Args:
            record: Record to store

        Raises:
            StoreConflictError: If a record with the same o1 exists
            StoreError: If the record could not be written
        """
        pass

    @abstractmethod
    def get(self, o1: bytes) -> EnrollmentRecord | None:
        """
        Look up a record by its O1 digest.

        Args:
            o1: 32-byte lookup digest

        Returns:
            The exact record, or None if absent
        """
        pass

    @abstractmethod
    def records(self) -> Iterator[EnrollmentRecord]:
        """Iterate over all stored records in insertion order."""
        pass

    def __len__(self) -> int:
        return sum(1 for _ in self.records())

    def __contains__(self, o1: bytes) -> bool:
        return self.get(o1) is not None
