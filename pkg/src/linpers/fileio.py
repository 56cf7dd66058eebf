"""Reading samples from CSV or raw little-endian float64, writing diagram CSV."""

from __future__ import annotations

import contextlib
import os
import sys
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from .core import Diagram, InputError, Topology

__all__ = ["InputSpec", "read_values", "iter_raw_chunks", "write_diagram", "write_raw"]

CSV = "csv"
RAW = "raw"
FORMATS = (CSV, RAW)
CHUNK_VALUES = 1 << 20
_RAW_DTYPE = np.dtype("<f8")


@dataclass(frozen=True)
class InputSpec:
    """Where the samples come from; ``path`` may be ``"-"`` for stdin."""

    path: str
    format: str = CSV
    topology: Topology = Topology.LINE

    def __post_init__(self):
        if self.format not in FORMATS:
            raise InputError(f"unknown format {self.format!r}")


@contextlib.contextmanager
def _open_binary(path: str):
    if path == "-":
        yield sys.stdin.buffer
        return
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    with fh:
        yield fh


def _parse_csv(fh: IO[bytes], path: str) -> np.ndarray:
    out: list[float] = []
    for lineno, raw in enumerate(fh, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            out.append(float(text))
        except ValueError:
            shown = text.decode("utf-8", "replace")
            raise InputError(f"{path}: malformed line {lineno}: {shown!r}") from None
    return np.asarray(out, dtype=np.float64)


def iter_raw_chunks(fh: IO[bytes], chunk_values: int = CHUNK_VALUES) -> Iterator[np.ndarray]:
    """Yield float64 arrays of at most ``chunk_values`` samples.

    Tolerates short reads (pipes); a trailing partial sample is an error.
    """
    want = chunk_values * 8
    carry = b""
    total = 0
    while True:
        block = fh.read(want)
        if not block:
            break
        total += len(block)
        if carry:
            block = carry + block
        usable = len(block) - len(block) % 8
        carry = block[usable:]
        if usable:
            yield np.frombuffer(block, dtype=_RAW_DTYPE, count=usable // 8).astype(np.float64, copy=False)
    if carry:
        raise InputError(f"raw input size {total} bytes is not a multiple of 8")


def read_values(spec: InputSpec) -> np.ndarray:
    """Load every sample into memory."""
    with _open_binary(spec.path) as fh:
        if spec.format == CSV:
            return _parse_csv(fh, spec.path)
        chunks = list(iter_raw_chunks(fh))
    if not chunks:
        return np.empty(0, dtype=np.float64)
    return np.concatenate(chunks)


@contextlib.contextmanager
def raw_chunks(spec: InputSpec):
    """Context manager giving a chunk iterator over a raw input."""
    with _open_binary(spec.path) as fh:
        if fh is not sys.stdin.buffer:
            size = os.fstat(fh.fileno()).st_size
            if size % 8:
                raise InputError(f"raw input size {size} bytes is not a multiple of 8")
        yield iter_raw_chunks(fh)


@contextlib.contextmanager
def _open_text_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="ascii", newline="")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None
    with fh:
        yield fh


def write_diagram(diagram: Diagram, path: str | None = None, batch: int = 65536) -> None:
    """Write the CSV rows of ``diagram`` to ``path`` (stdout if ``None`` or ``"-"``)."""
    with _open_text_out(path) as out:
        buf: list[str] = []
        for row in diagram.csv_rows():
            buf.append(row)
            if len(buf) >= batch:
                out.write("".join(buf))
                buf.clear()
        out.write("".join(buf))
        out.flush()


def write_raw(values, path: str) -> None:
    np.ascontiguousarray(values, dtype=_RAW_DTYPE).tofile(path)
