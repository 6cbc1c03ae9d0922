"""Storage backends for experiment run records"""

from .json_store import RunRecordStore

__all__ = ["RunRecordStore"]
