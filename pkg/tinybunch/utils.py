"""
Utility classes.
"""
from collections import OrderedDict, abc
from typing import Any, Iterator, List, TypeVar, Generic, Optional

K = TypeVar('K')
V = TypeVar('V')

__all__ = ('LRUCache', 'FrozenDict')


class LRUCache(abc.MutableMapping, Generic[K, V]):
    """
    A least-recently used (LRU) cache with a fixed cache size.

    This class acts as a dictionary but has a limited size. If the number of
    entries in the cache exceeds the cache size, the least-recently accessed
    entry will be discarded.

    Rule-backed brackets use it to memoize the brackets of basis pairs, which
    the identity sweeps request over and over again.

    This is implemented using an ``OrderedDict``. On every access the accessed
    entry is moved to the end by re-inserting it into the ``OrderedDict``.
    When adding an entry and the cache size is exceeded, the first entry will
    be discarded.
    """

    def __init__(self, capacity: Optional[int] = None) -> None:
        self.capacity = capacity
        self.cache: 'OrderedDict[K, V]' = OrderedDict()

    @property
    def lru(self) -> List[K]:
        return list(self.cache.keys())

    @property
    def length(self) -> int:
        return len(self.cache)

    def clear(self) -> None:
        self.cache.clear()

    def __len__(self) -> int:
        return self.length

    def __contains__(self, key: object) -> bool:
        return key in self.cache

    def __setitem__(self, key: K, value: V) -> None:
        self.set(key, value)

    def __delitem__(self, key: K) -> None:
        del self.cache[key]

    def __getitem__(self, key) -> V:
        value = self.get(key)
        if value is None:
            raise KeyError(key)

        return value

    def __iter__(self) -> Iterator[K]:
        return iter(self.cache)

    def get(self, key: K, default: Any = None) -> Any:
        value = self.cache.get(key)

        if value is not None:
            self.cache.move_to_end(key, last=True)
            return value

        return default

    def set(self, key: K, value: V) -> None:
        if key in self.cache:
            self.cache[key] = value
            self.cache.move_to_end(key, last=True)
        else:
            self.cache[key] = value

            # Check, if the cache is full and we have to remove old items.
            # A capacity of None means unlimited.
            if self.capacity is not None and self.length > self.capacity:
                self.cache.popitem(last=False)


def _immutable(*args, **kws):
    raise TypeError('object is immutable')


class FrozenDict(dict):
    """
    An immutable dictionary.

    Algebra elements are sparse coefficient maps that get compared, hashed and
    shared between checks, so they must not change after construction. This
    class removes the mutability of ``dict`` and implements ``__hash__``.
    """

    def __hash__(self):
        # Calculate the has by hashing a tuple of all dict items
        return hash(tuple(sorted(self.items())))

    __setitem__ = _immutable
    __delitem__ = _immutable
    clear = _immutable
    setdefault = _immutable  # type: ignore
    popitem = _immutable

    def update(self, e=None, **f):
        raise TypeError('object is immutable')

    def pop(self, k, d=None):
        raise TypeError('object is immutable')
