"""On-disk cache of triangle rows.

One text file per triangle kind, ``<dir>/<kind-key>.rows``::

    # stirlab-triangle/1 second-restricted-3
    1
    0,1
    0,1,1
    ...
    # rows=12 sha256=<hex digest of every byte above this line>

Files only ever grow: a save keeps the stored rows as a verified prefix and
adds the new ones. A file whose footer, digest or row shapes do not check
out is ignored and later overwritten.
"""

from __future__ import annotations

import fcntl
import hashlib
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

from .triangles import Triangle, TriangleKind

ENV_VAR = "STIRLAB_CACHE_DIR"
FORMAT_TAG = "stirlab-triangle/1"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "stirlab"


class RowCache:
    def __init__(self, directory: Optional[Path] = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, kind: TriangleKind) -> Path:
        return self.directory / f"{kind.key}.rows"

    @contextmanager
    def _locked(self, kind: TriangleKind):
        self.directory.mkdir(parents=True, exist_ok=True)
        with open(self.directory / f"{kind.key}.lock", "w") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def load(self, kind: TriangleKind) -> List[List[int]]:
        """Stored rows, or ``[]`` if the file is absent or fails any check."""
        p = self.path(kind)
        try:
            data = p.read_bytes()
        except OSError:
            return []
        return _parse(data, kind) or []

    def save(self, tri: Triangle) -> int:
        """Persist ``tri``'s rows; returns the number of rows now on disk."""
        kind = tri.kind
        rows = tri.rows
        with self._locked(kind):
            stored = self.load(kind)
            if len(stored) >= len(rows):
                return len(stored)
            if stored != rows[: len(stored)]:
                stored = []  # disagrees with a fresh computation: do not trust it
            body = bytearray(f"# {FORMAT_TAG} {kind.key}\n".encode())
            for r in rows:
                body += (",".join(map(str, r)) + "\n").encode()
            digest = hashlib.sha256(bytes(body)).hexdigest()
            body += f"# rows={len(rows)} sha256={digest}\n".encode()
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=f".{kind.key}.")
            try:
                with os.fdopen(fd, "wb") as fh:
                    fh.write(body)
                os.replace(tmp, self.path(kind))
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        return len(rows)

    def warm(self, tri: Triangle) -> int:
        """Seed an empty triangle from disk; returns rows loaded."""
        if len(tri):
            return 0
        rows = self.load(tri.kind)
        rows = rows[: tri.n_max + 1]
        tri.rows.extend(rows)
        return len(rows)


def _parse(data: bytes, kind: TriangleKind) -> Optional[List[List[int]]]:
    if not data.endswith(b"\n"):
        return None
    cut = data.rfind(b"\n", 0, len(data) - 1)
    if cut < 0:
        return None
    body, footer = data[: cut + 1], data[cut + 1 :].decode("ascii", "replace").split()
    if len(footer) != 3 or footer[0] != "#":
        return None
    try:
        n_rows = int(footer[1].removeprefix("rows="))
    except ValueError:
        return None
    if footer[2] != "sha256=" + hashlib.sha256(body).hexdigest():
        return None
    lines = body.decode("ascii", "replace").splitlines()
    if not lines or lines[0] != f"# {FORMAT_TAG} {kind.key}":
        return None
    lines = lines[1:]
    if len(lines) != n_rows:
        return None
    rows = []
    for n, line in enumerate(lines):
        try:
            row = [int(x) for x in line.split(",")]
        except ValueError:
            return None
        if len(row) != n + 1 or any(v < 0 for v in row):
            return None
        rows.append(row)
    return rows
