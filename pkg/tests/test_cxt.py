import random

import pytest

from conimp.context import FormalContext
from conimp.cxt import CxtError, parse_cxt, serialize_cxt

from helpers import random_context

K1 = FormalContext.from_intents({"g1": {"a", "b"}, "g2": {"a"}}, attributes="abc")
K1_TEXT = "B\n\n2\n3\n\ng1\ng2\na\nb\nc\nXX.\nX..\n"


def test_serialize_k1():
    assert serialize_cxt(K1) == K1_TEXT


def test_parse_k1():
    assert parse_cxt(K1_TEXT) == K1


def test_crlf_accepted():
    assert parse_cxt(K1_TEXT.replace("\n", "\r\n")) == K1


def test_round_trip_random():
    rng = random.Random(11)
    for _ in range(100):
        K = random_context(rng, "abcde"[: rng.randint(1, 5)], max_objects=7)
        text = serialize_cxt(K)
        assert parse_cxt(text) == K
        assert serialize_cxt(parse_cxt(text)) == text


@pytest.mark.parametrize(
    "text, message",
    [
        ("B\n\n2\n3\n\ng1\ng2\na\nb\nc\nXY.\nX..\n", "illegal incidence character 'Y' at line 11"),
        ("A\n\n2\n3\n", "malformed header: expected 'B' at line 1"),
        ("B\n\nx\n3\n", "at line 3"),
        ("B\n\n2\n3\n\ng1\ng2\na\nb\nc\nXX\nX..\n", "dimension mismatch: row has 2 entries, expected 3 at line 11"),
        ("B\n\n2\n3\n\ng1\ng2\na\nb\nc\nXX.\n", "unexpected end of file at line 12"),
        ("B\n\n2\n3\n\ng1\ng2\na\nb\nc\nXX.\nX..\n...\n", "unexpected content after last row at line 13"),
        ("B\n\n2\n1\n\ng\ng\na\nX\nX\n", "distinct"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(CxtError, match=message):
        parse_cxt(text)


def test_error_carries_line_number():
    with pytest.raises(CxtError) as info:
        parse_cxt("B\n\n2\n3\n\ng1\ng2\na\nb\nc\nXY.\nX..\n")
    assert info.value.line == 11
