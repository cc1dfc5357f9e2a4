import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from kronkit import FormatError, ParseError
from kronkit.io import (
    format_tensor_text,
    parse_tensor_binary,
    parse_tensor_text,
    read_tensor,
    write_tensor,
    write_tensor_binary,
)

dims_st = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(tuple)
tensors = dims_st.flatmap(
    lambda d: arrays(np.float64, d, elements=st.floats(allow_nan=False, allow_infinity=False))
)


def test_text_is_column_major():
    A = parse_tensor_text("matrix 2 2\n1 3 2 4\n")
    assert np.array_equal(A, [[1, 2], [3, 4]])


def test_text_vector_and_comments():
    x = parse_tensor_text("# a vector\ntensor 1 3  # header\n1 2\n3 # tail\n")
    assert x.shape == (3,) and x.tolist() == [1, 2, 3]
    X = parse_tensor_text("tensor 3 2 1 2\n0 1 2 3")
    assert X[1, 0, 1] == 3


@pytest.mark.parametrize(
    "text,line",
    [
        ("matrix 2 2\n1 2 3\n", 2),
        ("matrix 2 2\n1 2 3 4\n5\n", 3),
        ("matrix 2 2\n1 2 nan 4\n", 2),
        ("matrix 2 2\n1 2 inf 4\n", 2),
        ("matrix 2 x\n", 1),
        ("matrix 2\n", 1),
        ("\n\nblock 2 2\n", 3),
        ("tensor 2 3\n1 2 3\n", 1),
        ("matrix 0 2\n", 1),
        ("matrix 1 1\nabc\n", 2),
        ("", 1),
    ],
)
def test_text_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_tensor_text(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_binary_layout():
    # order-1: 4 magic + 4 order + 8 dim + 8 value
    data = write_tensor_binary(np.array([2.0]))
    assert len(data) == 24
    assert data[:4] == b"TEN1"
    assert struct.unpack("<I", data[4:8]) == (1,)
    assert data[-8:] == struct.pack("<d", 2.0)
    # a 1x1 matrix is order 2, so one more u64 dim
    data = write_tensor_binary(np.array([[2.0]]))
    assert len(data) == 32
    assert struct.unpack("<I", data[4:8]) == (2,)
    assert struct.unpack("<2Q", data[8:24]) == (1, 1)
    assert data[-8:] == struct.pack("<d", 2.0)


def test_binary_column_major():
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    payload = write_tensor_binary(A)[8 + 16:]
    assert struct.unpack("<4d", payload) == (1.0, 3.0, 2.0, 4.0)


@settings(max_examples=200, deadline=None)
@given(tensors)
def test_binary_roundtrip_bit_identical(X):
    data = write_tensor_binary(X)
    Y = parse_tensor_binary(data)
    assert Y.shape == X.shape
    assert Y.tobytes(order="F") == X.tobytes(order="F")
    assert write_tensor_binary(Y) == data


@settings(max_examples=200, deadline=None)
@given(tensors)
def test_text_roundtrip_value_identical(X):
    Y = parse_tensor_text(format_tensor_text(X))
    assert Y.shape == X.shape
    assert Y.tobytes(order="F") == X.tobytes(order="F")


@pytest.mark.parametrize(
    "mutate",
    [
        lambda b: b[:-1],
        lambda b: b[:6],
        lambda b: b[:12],
        lambda b: b"TEN2" + b[4:],
        lambda b: b + b"\x00",
        lambda b: b[:4] + struct.pack("<I", 0) + b[8:],
        lambda b: b[:8] + struct.pack("<Q", 0) + b[16:],
        lambda b: b[:8] + struct.pack("<Q", 2**62) + b[16:],
        lambda b: b[:-8] + struct.pack("<d", float("nan")),
    ],
)
def test_binary_format_errors(mutate):
    good = write_tensor_binary(np.arange(6.0).reshape(2, 3))
    with pytest.raises(FormatError):
        parse_tensor_binary(mutate(good))


def test_file_dispatch(tmp_path, rng):
    X = rng.standard_normal((2, 3, 2))
    write_tensor(tmp_path / "x.bin", X)
    write_tensor(tmp_path / "x.txt", X)
    assert (tmp_path / "x.bin").read_bytes()[:4] == b"TEN1"
    assert (tmp_path / "x.txt").read_text().startswith("tensor 3 2 3 2")
    for name in ("x.bin", "x.txt"):
        assert np.array_equal(read_tensor(tmp_path / name), X)
