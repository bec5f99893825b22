"""Binary snapshot round trips for all three filter types."""

import numpy as np
import pytest

from bloom2d.baselines import CountingBloomFilter, StandardBloomFilter
from bloom2d.core import TwoDBloomFilter
from bloom2d.snapshot import MAGIC, load_filter, save_filter
from bloom2d.workload import generate_corpus


@pytest.fixture()
def corpus():
    return generate_corpus(500, 101)


def test_two_d_round_trip_is_bit_exact(tmp_path, corpus):
    f = TwoDBloomFilter.for_capacity(500, 0.01)
    f.insert_batch(corpus.matrix)
    f.remove(corpus.key(0))
    path = tmp_path / "twod.snap"
    f.save(path)
    g = TwoDBloomFilter.load(path)
    assert np.array_equal(g.cells, f.cells)
    assert g.seeds == f.seeds
    assert g.variant == f.variant
    assert g.inserted_count == f.inserted_count
    assert (g.geometry.rows, g.geometry.cols) == (f.geometry.rows, f.geometry.cols)
    assert g.geometry.cell_bits == f.geometry.cell_bits
    assert g.geometry.cell_width == f.geometry.cell_width
    # behaves identically after reload
    assert g.contains(corpus.key(1)) == f.contains(corpus.key(1))
    assert not g.contains(corpus.key(0))


def test_sbf_round_trip_is_bit_exact(tmp_path, corpus):
    f = StandardBloomFilter(500, 0.01)
    f.insert_batch(corpus.matrix)
    path = tmp_path / "sbf.snap"
    f.save(path)
    g = StandardBloomFilter.load(path)
    assert np.array_equal(g.words, f.words)
    assert g.seeds == f.seeds
    assert g.bits == f.bits
    assert g.hash_count == f.hash_count
    assert g.inserted_count == f.inserted_count
    assert g.contains(corpus.key(7))


def test_cbf_round_trip_is_bit_exact(tmp_path, corpus):
    f = CountingBloomFilter(500, 0.01)
    f.insert_batch(corpus.matrix)
    f.remove(corpus.key(3))
    path = tmp_path / "cbf.snap"
    f.save(path)
    g = CountingBloomFilter.load(path)
    assert np.array_equal(g.counters, f.counters)
    assert g.seeds == f.seeds
    assert g.inserted_count == f.inserted_count
    assert g.contains(corpus.key(5))


def test_save_and_reload_twice_is_stable(tmp_path, corpus):
    f = TwoDBloomFilter.for_capacity(500, 0.01)
    f.insert_batch(corpus.matrix)
    first = tmp_path / "a.snap"
    second = tmp_path / "b.snap"
    f.save(first)
    TwoDBloomFilter.load(first).save(second)
    assert first.read_bytes() == second.read_bytes()


def test_type_tags_are_distinct(tmp_path, corpus):
    paths = {}
    for name, f in {
        "twod": TwoDBloomFilter.for_capacity(500, 0.01),
        "sbf": StandardBloomFilter(500, 0.01),
        "cbf": CountingBloomFilter(500, 0.01),
    }.items():
        path = tmp_path / f"{name}.snap"
        save_filter(f, path)
        paths[name] = path
    assert isinstance(load_filter(paths["twod"]), TwoDBloomFilter)
    assert isinstance(load_filter(paths["sbf"]), StandardBloomFilter)
    assert isinstance(load_filter(paths["cbf"]), CountingBloomFilter)
    with pytest.raises(ValueError):
        TwoDBloomFilter.load(paths["sbf"])
    with pytest.raises(ValueError):
        StandardBloomFilter.load(paths["cbf"])


def test_bad_files_are_rejected(tmp_path):
    short = tmp_path / "short.snap"
    short.write_bytes(b"xx")
    with pytest.raises(ValueError):
        load_filter(short)
    bad_magic = tmp_path / "magic.snap"
    bad_magic.write_bytes(b"NOTMAGIC" + bytes(40))
    with pytest.raises(ValueError):
        load_filter(bad_magic)
    bad_version = tmp_path / "version.snap"
    bad_version.write_bytes(MAGIC + (99).to_bytes(2, "little") + bytes(40))
    with pytest.raises(ValueError):
        load_filter(bad_version)
