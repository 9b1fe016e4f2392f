"""Reader and writer for MLCW weight files.

Layout (little-endian): b"MLCW", u32 version, u32 record count, then per
record u16 name length, name bytes, u8 rank, u32 dims[rank], float32
payload; a trailing u32 CRC32 (zlib) covers everything before it.
"""

from __future__ import annotations

import struct
import zlib
from collections import OrderedDict
from pathlib import Path

import numpy as np

MAGIC = b"MLCW"
VERSION = 1


class MLCWError(ValueError):
    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, count: int, what: str) -> bytes:
        if self.pos + count > len(self.data):
            raise MLCWError("truncated payload", f"file ends inside {what}")
        out = self.data[self.pos : self.pos + count]
        self.pos += count
        return out

    def unpack(self, fmt: str, what: str):
        return struct.unpack("<" + fmt, self.take(struct.calcsize("<" + fmt), what))[0]


def loads(data: bytes) -> "OrderedDict[str, np.ndarray]":
    """Parses MLCW bytes into name -> float32 array. Structure is checked
    before the checksum, as in the C++ reader."""
    rd = _Reader(data)
    if rd.take(4, "magic") != MAGIC:
        raise MLCWError("bad magic", "not an MLCW weight file")
    version = rd.unpack("I", "version")
    if version != VERSION:
        raise MLCWError("version mismatch", f"weight format version {version}, expected {VERSION}")
    records: OrderedDict[str, np.ndarray] = OrderedDict()
    for _ in range(rd.unpack("I", "record count")):
        name = rd.take(rd.unpack("H", "name length"), "record name").decode("utf-8")
        rank = rd.unpack("B", "rank")
        shape = tuple(rd.unpack("I", "dims") for _ in range(rank))
        count = int(np.prod(shape, dtype=np.uint64)) if shape else 1
        if count * 4 > len(data) - rd.pos:
            raise MLCWError("truncated payload", f"payload of {name} runs past the end of the file")
        payload = np.frombuffer(rd.take(count * 4, "payload"), dtype="<f4").astype(np.float32)
        records[name] = payload.reshape(shape)
    body = rd.pos
    stored = rd.unpack("I", "checksum")
    if rd.pos != len(data):
        raise MLCWError("shape inconsistency", f"{len(data) - rd.pos} stray bytes after the checksum")
    if zlib.crc32(data[:body]) != stored:
        raise MLCWError("checksum mismatch", "weight file checksum mismatch")
    return records


def dumps(records) -> bytes:
    out = bytearray(MAGIC)
    out += struct.pack("<II", VERSION, len(records))
    for name, value in records.items():
        arr = np.asarray(value, dtype="<f4")
        encoded = name.encode("utf-8")
        out += struct.pack("<H", len(encoded)) + encoded
        out += struct.pack("<B", arr.ndim)
        out += struct.pack(f"<{arr.ndim}I", *arr.shape)
        out += np.ascontiguousarray(arr).tobytes()
    out += struct.pack("<I", zlib.crc32(bytes(out)))
    return bytes(out)


def read(path) -> "OrderedDict[str, np.ndarray]":
    return loads(Path(path).read_bytes())


def write(path, records) -> None:
    Path(path).write_bytes(dumps(records))
