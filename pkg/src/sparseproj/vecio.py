"""Vector file I/O for the command-line tools.

Two interchangeable formats:

* ``text``: UTF-8, whitespace/newline-separated decimal literals.
* ``binary``: 8-byte magic ``SPRJVEC1``, an unsigned 64-bit little-endian
  length, then that many IEEE-754 binary64 little-endian values.
"""

from __future__ import annotations

import struct
import sys

import numpy as np

__all__ = ["MAGIC", "FORMATS", "read_vector", "write_vector"]

MAGIC = b"SPRJVEC1"
FORMATS = ("text", "binary")


def _open_in(path: str):
    if path == "-":
        return sys.stdin.buffer, False
    return open(path, "rb"), True


def _open_out(path: str):
    if path == "-":
        return sys.stdout.buffer, False
    return open(path, "wb"), True


def read_vector(path: str, fmt: str = "text") -> np.ndarray:
    """Read a float64 vector from ``path`` (``-`` for stdin).

    Raises ``ValueError`` on malformed content (bad literal, bad magic,
    truncated payload).
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown vector format {fmt!r}")
    stream, owned = _open_in(path)
    try:
        data = stream.read()
    finally:
        if owned:
            stream.close()
    if fmt == "text":
        tokens = data.decode("utf-8").split()
        try:
            return np.array([float(t) for t in tokens], dtype=np.float64)
        except ValueError as exc:
            raise ValueError(f"malformed text vector: {exc}") from None
    if len(data) < 16:
        raise ValueError("malformed binary vector: truncated header")
    if data[:8] != MAGIC:
        raise ValueError(f"malformed binary vector: bad magic {data[:8]!r}")
    (count,) = struct.unpack("<Q", data[8:16])
    payload = data[16:]
    if len(payload) != 8 * count:
        raise ValueError(
            f"malformed binary vector: expected {8 * count} payload bytes, got {len(payload)}"
        )
    return np.frombuffer(payload, dtype="<f8").astype(np.float64)


def write_vector(path: str, values, fmt: str = "text") -> None:
    """Write a float64 vector to ``path`` (``-`` for stdout).

    The text form uses shortest round-trip decimal representations, so a
    text write/read cycle is bit-exact, like the binary one.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown vector format {fmt!r}")
    v = np.asarray(values, dtype=np.float64)
    if fmt == "text":
        body = (" ".join(repr(float(t)) for t in v) + "\n").encode("utf-8")
    else:
        body = MAGIC + struct.pack("<Q", v.size) + v.astype("<f8").tobytes()
    stream, owned = _open_out(path)
    try:
        stream.write(body)
        stream.flush()
    finally:
        if owned:
            stream.close()
