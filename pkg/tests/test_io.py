import json
import random

import pytest

from approach_spaces.approach import InvalidSpace
from approach_spaces.generate import random_matrix, random_space
from approach_spaces.io import (FormatError, dump_matrix, dump_space, parse_function,
                                parse_matrix, parse_space, save_space, load_space)
from approach_spaces.quantale import Cost


def test_space_round_trip(tmp_path, rng):
    for _ in range(10):
        S = random_space(rng.randint(1, 5), rng=rng)
        save_space(S, tmp_path / "s.json")
        assert load_space(tmp_path / "s.json") == S
        assert parse_space(json.loads(json.dumps(dump_space(S)))) == S


def test_matrix_round_trip(rng):
    m = random_matrix(3, ["0", "1/2", "inf"], rng)
    assert parse_matrix(dump_matrix(m)) == m


@pytest.mark.parametrize("doc, where", [
    ({"points": ["a", "a"], "conv": [["0", "0"], ["0", "0"]]}, "points"),
    ({"points": ["a"], "conv": [["0", "1"]]}, "conv[0]"),
    ({"points": ["a"], "conv": [[0.5]]}, "conv[0][0]"),
    ({"points": ["a"]}, "conv"),
    ([], "points"),
])
def test_space_format_errors(doc, where):
    with pytest.raises(FormatError) as info:
        parse_space(doc)
    assert info.value.where == where


def test_invalid_space_is_not_a_format_error():
    with pytest.raises(InvalidSpace):
        parse_space({"points": ["a", "b"], "conv": [["0", "1"], ["1", "1"]]})


def test_function_file():
    S = random_space(2, rng=random.Random(0))
    assert parse_function({"values": {"a": "1/2", "b": 3}}, S.points) == (Cost("1/2"), Cost(3))
    with pytest.raises(FormatError, match="missing"):
        parse_function({"values": {"a": "0"}}, S.points)
    with pytest.raises(FormatError, match="not a point"):
        parse_function({"values": {"a": "0", "b": "0", "c": "0"}}, S.points)


def test_generator_always_valid():
    rng = random.Random(5)
    for _ in range(200):
        S = random_space(rng.randint(1, 6), ["0", "1/3", "1/2", "1", "3/2", "inf"], rng, tries=1)
        assert S.matrix.entries  # construction validates
