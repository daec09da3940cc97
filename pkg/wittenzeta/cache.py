import hashlib
import json
from pathlib import Path
from typing import List, Optional

from .linalg import ExactMatrix
from .logging import debug, warn


class ResultCache:
    """Content-addressed store of computed invariant sets, one JSON record per key"""

    def __init__(self, directory: Path):
        self.directory = Path(directory)


    @staticmethod
    def key(kind: str, matrix: ExactMatrix) -> str:
        """Hash of the canonical text of the matrix and the invariant kind"""
        canonical = json.dumps(
            dict(kind=kind, rows=[[str(e) for e in matrix.row(i)] for i in range(matrix.rows)]),
            sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"


    def load(self, key: str, kind: str) -> Optional[List[int]]:
        path = self.path(key)
        if not path.exists():
            debug(f"Cache miss for {kind} ({key[:12]})")
            return None
        try:
            with open(path, "r") as f:
                record = json.load(f)
            if record["kind"] != kind or record["key"] != key:
                raise ValueError("record does not match its key")
            values = [int(v) for v in record["values"]]
        except (ValueError, KeyError, TypeError) as ex:
            warn(f"Ignoring corrupt cache record {path}: {ex}")
            return None
        debug(f"Cache hit for {kind} ({key[:12]})")
        return values


    def store(self, key: str, kind: str, values: List[int],
              family: Optional[str] = None, rank: Optional[int] = None) -> None:
        Path.mkdir(self.directory, parents=True, exist_ok=True)
        record = dict(key=key, kind=kind, family=family, rank=rank, values=sorted(values))
        with open(self.path(key), "w+") as f:
            f.write(json.dumps(record, sort_keys=True, indent=2))
