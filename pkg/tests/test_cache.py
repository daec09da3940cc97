from wittenzeta.cache import ResultCache
from wittenzeta.linalg import ExactMatrix


MATRIX = ExactMatrix.from_rows([[1, 0, 1], [0, 1, 1]])


def test_keys_depend_on_kind_and_matrix():
    assert ResultCache.key("D", MATRIX) == ResultCache.key("D", ExactMatrix.from_rows([[1, 0, 1], [0, 1, 1]]))
    assert ResultCache.key("D", MATRIX) != ResultCache.key("E", MATRIX)
    assert ResultCache.key("D", MATRIX) != ResultCache.key("D", MATRIX.transpose())


def test_store_and_load(tmp_path):
    cache = ResultCache(tmp_path / "cache")
    key = ResultCache.key("D", MATRIX)
    assert cache.load(key, "D") is None
    cache.store(key, "D", [3, 1, 2], family="G", rank=2)
    assert cache.load(key, "D") == [1, 2, 3]
    assert cache.load(key, "E") is None


def test_corrupt_records_are_ignored(tmp_path):
    cache = ResultCache(tmp_path)
    key = ResultCache.key("D", MATRIX)
    cache.path(key).write_text("{not json")
    assert cache.load(key, "D") is None
