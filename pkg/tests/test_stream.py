# pylint: disable=missing-module-docstring,missing-function-docstring

from typing import Callable, Iterator

import pytest

from burnside_sharp import Stream


def _counting(limit: int, seen: list[int]) -> Iterator[int]:
    for i in range(limit):
        seen.append(i)
        yield i


def test_map() -> None:
    fun: Callable[[int], int] = lambda x: x * x
    r1: list[int] = Stream([1, 2, 3]).map(fun).to_list()
    assert r1 == [1, 4, 9]


def test_filter() -> None:
    fun: Callable[[int], bool] = lambda x: x % 2 == 0
    assert Stream([1, 2, 3, 4, 5]).filter(fun).to_list() == [2, 4]


def test_stream_is_lazy() -> None:
    seen: list[int] = []
    stream = Stream(_counting(1_000_000, seen)).map(lambda x: x + 1)
    assert not seen
    assert stream.take(3).to_list() == [1, 2, 3]
    assert seen == [0, 1, 2]


def test_on_each() -> None:
    seen: list[int] = []
    result = Stream([1, 2, 3]).on_each(seen.append).map(lambda x: -x).to_list()
    assert result == [-1, -2, -3]
    assert seen == [1, 2, 3]


def test_zip_with_next() -> None:
    assert Stream([1, 2, 4]).zip_with_next().to_list() == [(1, 2), (2, 4)]
    assert not Stream([1]).zip_with_next().to_list()
    assert not Stream([]).zip_with_next().to_list()


def test_take() -> None:
    assert Stream([1, 2, 3]).take(2).to_list() == [1, 2]
    assert Stream([1, 2, 3]).take(5).to_list() == [1, 2, 3]
    assert not Stream([1, 2, 3]).take(-1).to_list()


def test_chunked() -> None:
    assert Stream(range(7)).chunked(3).to_list() == [[0, 1, 2], [3, 4, 5], [6]]
    assert not Stream([]).chunked(3).to_list()
    with pytest.raises(ValueError):
        Stream([1]).chunked(0)


def test_all() -> None:
    assert Stream([2, 4]).all(lambda x: x % 2 == 0)
    assert not Stream([2, 3]).all(lambda x: x % 2 == 0)
    assert Stream([]).all(lambda x: False)


def test_count() -> None:
    assert Stream([1, 2, 3]).count() == 3
    assert Stream([1, 2, 3]).count(lambda x: x > 1) == 2


def test_first_and_last_or_none() -> None:
    assert Stream([1, 2, 3]).first_or_none() == 1
    assert Stream([1, 2, 3]).last_or_none() == 3
    assert Stream([]).first_or_none() is None
    assert Stream([]).last_or_none() is None


def test_for_each() -> None:
    seen: list[str] = []
    Stream(["a", "b"]).for_each(seen.append)
    assert seen == ["a", "b"]
