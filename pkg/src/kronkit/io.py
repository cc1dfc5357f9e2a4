"""Text and binary tensor file formats.

Both formats store values column-major (first index fastest), the same order
as ``vec``. The text matrix

    matrix 2 2
    1 3
    2 4

is ``[[1, 2], [3, 4]]``: each line above is one *column*.

Text grammar: a header line ``matrix <rows> <cols>`` or
``tensor <d> <n_1> ... <n_d>``, then exactly ``prod n_k`` whitespace
separated decimals over any number of lines. ``#`` starts a comment.

Binary layout (little-endian): ``b"TEN1"`` | u32 ``d`` | ``d`` x u64 dims |
``prod n_k`` x f64 values.
"""
import io
import math
import os
import struct

import numpy as np

from .dense import as_tensor
from .errors import FormatError, ParseError

__all__ = [
    "MAGIC",
    "parse_tensor_text",
    "format_tensor_text",
    "parse_tensor_binary",
    "write_tensor_binary",
    "read_tensor",
    "write_tensor",
]

MAGIC = b"TEN1"
BINARY_SUFFIXES = (".bin", ".ten")
_MAX_ENTRIES = np.iinfo(np.intp).max // 8


def _tokens(lines):
    for lineno, line in enumerate(lines, start=1):
        for tok in line.split("#", 1)[0].split():
            yield lineno, tok


def _parse_dim(tok, lineno):
    try:
        n = int(tok)
    except ValueError:
        raise ParseError(f"dimension {tok!r} is not an integer", lineno) from None
    if n < 1:
        raise ParseError(f"dimension {n} must be positive", lineno)
    return n


def parse_tensor_text(stream):
    """Parse a text tensor from a file object or string."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    lines = [line.split("#", 1)[0] for line in stream]
    header_at = next((i for i, line in enumerate(lines) if line.strip()), None)
    if header_at is None:
        raise ParseError("empty input, expected a 'matrix' or 'tensor' header", 1)
    header_line = header_at + 1
    head = lines[header_at].split()
    kind = head[0].lower()
    if kind == "matrix":
        if len(head) != 3:
            raise ParseError("header must be 'matrix <rows> <cols>'", header_line)
        dims = tuple(_parse_dim(t, header_line) for t in head[1:])
    elif kind == "tensor":
        if len(head) < 2:
            raise ParseError("header must be 'tensor <d> <n_1> ... <n_d>'", header_line)
        d = _parse_dim(head[1], header_line)
        if len(head) != 2 + d:
            raise ParseError(f"order {d} needs {d} dimensions, header has {len(head) - 2}", header_line)
        dims = tuple(_parse_dim(t, header_line) for t in head[2:])
    else:
        raise ParseError(f"unknown header {head[0]!r}; expected 'matrix' or 'tensor'", header_line)

    count = math.prod(dims)
    if count > _MAX_ENTRIES:
        raise ParseError(f"dims {dims} are too large", header_line)
    values = []
    for lineno, tok in _tokens(lines[header_at + 1:]):
        lineno += header_at + 1
        if len(values) == count:
            raise ParseError(f"more than {count} values for dims {dims}", lineno)
        try:
            x = float(tok)
        except ValueError:
            raise ParseError(f"{tok!r} is not a number", lineno) from None
        if not math.isfinite(x):
            raise ParseError(f"non-finite value {tok!r}", lineno)
        values.append(x)
    if len(values) != count:
        raise ParseError(f"expected {count} values for dims {dims}, got {len(values)}", len(lines))
    return np.array(values, dtype=np.float64).reshape(dims, order="F")


def format_tensor_text(X):
    """Text form of ``X``; values use the shortest round-trip decimal (``repr``)."""
    X = as_tensor(X)
    if X.ndim == 2:
        header = f"matrix {X.shape[0]} {X.shape[1]}"
    else:
        header = "tensor " + " ".join(str(n) for n in (X.ndim,) + X.shape)
    flat = X.ravel(order="F")
    width = X.shape[0]
    out = [header, "# column-major: each line is one mode-0 fiber"]
    for start in range(0, flat.size, width):
        out.append(" ".join(repr(float(v)) for v in flat[start:start + width]))
    return "\n".join(out) + "\n"


def write_tensor_binary(X):
    """Binary encoding of ``X`` as ``bytes``."""
    X = as_tensor(X)
    head = MAGIC + struct.pack("<I", X.ndim) + np.asarray(X.shape, dtype="<u8").tobytes()
    return head + X.ravel(order="F").astype("<f8").tobytes()


def parse_tensor_binary(data):
    """Decode :func:`write_tensor_binary` output. Nothing is returned on any error."""
    data = bytes(data)
    if len(data) < 8:
        raise FormatError(f"truncated header ({len(data)} bytes)")
    if data[:4] != MAGIC:
        raise FormatError(f"bad magic {data[:4]!r}, expected {MAGIC!r}")
    (d,) = struct.unpack_from("<I", data, 4)
    if d < 1:
        raise FormatError("tensor order must be >= 1")
    end_dims = 8 + 8 * d
    if len(data) < end_dims:
        raise FormatError(f"truncated dims: need {end_dims} bytes, have {len(data)}")
    dims = struct.unpack_from(f"<{d}Q", data, 8)
    if any(n < 1 for n in dims):
        raise FormatError(f"dims {dims} must all be positive")
    count = 1
    for n in dims:
        count *= n
        if count > _MAX_ENTRIES:
            raise FormatError(f"dims {dims} overflow the index type")
    expected = end_dims + 8 * count
    if len(data) != expected:
        kind = "truncated payload" if len(data) < expected else "trailing bytes"
        raise FormatError(f"{kind}: expected {expected} bytes, have {len(data)}")
    values = np.frombuffer(data, dtype="<f8", count=count, offset=end_dims).astype(np.float64)
    if not np.all(np.isfinite(values)):
        raise FormatError("non-finite values are not admitted")
    return values.reshape(dims, order="F")


def read_tensor(path):
    """Read a tensor file; anything that is not UTF-8 text without NULs is parsed as binary."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] == MAGIC or b"\0" in data[:64]:
        return parse_tensor_binary(data)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        # not text, so judge it as a binary file (reports the bad magic)
        return parse_tensor_binary(data)
    return parse_tensor_text(text)


def write_tensor(path, X):
    """Write binary when ``path`` ends in ``.bin``/``.ten``, text otherwise."""
    path = os.fspath(path)
    if path.endswith(BINARY_SUFFIXES):
        with open(path, "wb") as fh:
            fh.write(write_tensor_binary(X))
    else:
        with open(path, "w") as fh:
            fh.write(format_tensor_text(X))
