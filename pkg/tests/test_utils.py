import pytest

from tinybunch.utils import LRUCache, FrozenDict


def test_lru_cache():
    cache = LRUCache(capacity=3)
    cache[(0, 1)] = 1
    cache[(0, 2)] = 2
    cache[(1, 2)] = 3
    _ = cache[(0, 1)]  # move to front in lru queue
    cache[(2, 3)] = 4  # move oldest item out of lru queue

    with pytest.raises(KeyError):
        _ = cache[(5, 5)]

    assert cache.lru == [(1, 2), (0, 1), (2, 3)]


def test_lru_cache_set_multiple():
    cache = LRUCache(capacity=3)
    cache["a"] = 1
    cache["a"] = 2
    cache["a"] = 3
    cache["a"] = 4

    assert cache.lru == ["a"]
    assert cache["a"] == 4


def test_lru_cache_get():
    cache = LRUCache(capacity=3)
    cache["a"] = 1
    cache["b"] = 1
    cache["c"] = 1
    cache.get("a")
    cache["d"] = 4

    assert cache.lru == ["c", "a", "d"]
    assert cache.get("b", "missing") == "missing"


def test_lru_cache_delete():
    cache = LRUCache(capacity=3)
    cache["a"] = 1
    cache["b"] = 2
    del cache["a"]

    with pytest.raises(KeyError):
        del cache['f']

    assert cache.lru == ["b"]


def test_lru_cache_clear():
    cache = LRUCache(capacity=3)
    cache["a"] = 1
    cache["b"] = 2
    cache.clear()

    assert cache.lru == []
    assert len(cache) == 0


def test_lru_cache_unlimited():
    cache = LRUCache()
    for i in range(100):
        cache[i] = i + 1

    assert len(cache.lru) == 100
    assert 42 in cache


def test_lru_cache_iteration_works():
    cache = LRUCache()
    for _ in cache:
        assert False, 'there should be no elements in the cache'


def test_frozen_dict():
    frozen = FrozenDict({1: 2, -1: 3})

    assert hash(frozen) == hash(FrozenDict({-1: 3, 1: 2}))
    assert {frozen: 'x'}[FrozenDict({1: 2, -1: 3})] == 'x'

    with pytest.raises(TypeError):
        frozen[0] = 10

    with pytest.raises(TypeError):
        del frozen[1]

    with pytest.raises(TypeError):
        frozen.pop(1)

    with pytest.raises(TypeError):
        frozen.update({1: 9})

    with pytest.raises(TypeError):
        frozen.clear()
