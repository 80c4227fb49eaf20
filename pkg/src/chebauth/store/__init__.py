"""Enrollment database and credential files."""

from chebauth.store.base import BaseStore
from chebauth.store.credential import load_credential, save_credential
from chebauth.store.file import FileStore
from chebauth.store.memory import MemoryStore

__all__ = ["BaseStore", "FileStore", "MemoryStore", "load_credential", "save_credential"]
