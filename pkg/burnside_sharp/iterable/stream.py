"""
Lazy row streams for the verification sweeps. A Stream wraps an iterable and
chains transformations in the manner of Kotlin's Sequence type, so a sweep over
a million n is produced, checked and written one row at a time without building
intermediate collections.
"""

from __future__ import annotations

from itertools import islice
from typing import Callable, Generic, Iterable, Iterator, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


class Stream(Generic[T]):
    """
    A lazily evaluated sequence of values. Transformations return new streams and
    compute nothing until iterated; terminal operations consume the source.
    """

    _iterable: Iterable[T]

    def __init__(self, iterable: Iterable[T]):
        self._iterable = iterable

    def __iter__(self) -> Iterator[T]:
        return iter(self._iterable)

    def map(self, fn: Callable[[T], R]) -> "Stream[R]":
        """
        Transforms each element of the stream.

        :param fn: A function applied to every element.
        :return: A new Stream with the transformed elements.
        """
        return Stream(map(fn, self))

    def filter(self, predicate: Callable[[T], bool]) -> "Stream[T]":
        """
        Keeps the elements that satisfy a predicate.

        :param predicate: A function that evaluates each element to a boolean.
        :return: A new Stream with the matching elements.
        """
        return Stream(filter(predicate, self))

    def on_each(self, action: Callable[[T], None]) -> "Stream[T]":
        """
        Performs an action on every element as it passes through, leaving the
        elements unchanged.

        :param action: A function called with each element.
        :return: A new Stream yielding the same elements.
        """

        def generator() -> Iterator[T]:
            for element in self:
                action(element)
                yield element

        return Stream(generator())

    def zip_with_next(self) -> "Stream[tuple[T, T]]":
        """
        Pairs every element with its successor.

        :return: A new Stream of (element, next element) tuples; empty if the stream
        has fewer than two elements.
        """

        def generator() -> Iterator[tuple[T, T]]:
            iterator = iter(self)
            try:
                previous = next(iterator)
            except StopIteration:
                return
            for element in iterator:
                yield previous, element
                previous = element

        return Stream(generator())

    def take(self, n: int) -> "Stream[T]":
        """
        Returns the first n elements.

        :param n: The number of elements to take.
        :return: A new Stream with at most n elements.
        """
        return Stream(islice(self, max(n, 0)))

    def chunked(self, size: int) -> "Stream[list[T]]":
        """
        Splits the stream into lists of the given size; the last may be shorter.

        :param size: The size of each chunk.
        :return: A new Stream of chunks.
        """
        if size < 1:
            raise ValueError("size must be greater than 0")

        def generator() -> Iterator[list[T]]:
            iterator = iter(self)
            while chunk := list(islice(iterator, size)):
                yield chunk

        return Stream(generator())

    def all(self, predicate: Callable[[T], bool]) -> bool:
        """
        Checks if all elements satisfy a condition.

        :param predicate: A function that evaluates each element to a boolean.
        :return: True if every element satisfies the condition.
        """
        return all(predicate(d) for d in self)

    def count(self, predicate: Optional[Callable[[T], bool]] = None) -> int:
        """
        Counts the elements, or those satisfying a predicate.

        :param predicate: An optional filter.
        :return: The number of (matching) elements.
        """
        if predicate is None:
            return sum(1 for _ in self)
        return sum(1 for d in self if predicate(d))

    def first_or_none(self) -> Optional[T]:
        """
        Returns the first element, or None if the stream is empty.

        :return: The first element or None.
        """
        return next(iter(self), None)

    def last_or_none(self) -> Optional[T]:
        """
        Returns the last element, or None if the stream is empty.

        :return: The last element or None.
        """
        last_value = None
        for element in self:
            last_value = element
        return last_value

    def for_each(self, action: Callable[[T], None]) -> None:
        """
        Performs the given action on each element.

        :param action: A function that takes an element and performs an action.
        """
        for element in self:
            action(element)

    def to_list(self) -> list[T]:
        """
        Converts the stream into a list.

        :return: A list containing all elements.
        """
        return list(self)
