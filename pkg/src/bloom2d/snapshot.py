"""Versioned binary snapshots of filter state.

Layout, all little-endian:

    magic        8s   b"2DBLOOMF"
    version      H    1
    type tag     B    1 = TwoDBloomFilter, 2 = StandardBloomFilter,
                      3 = CountingBloomFilter
    variant      B    hash stride in bytes
    hash count   I
    inserted     Q

followed by a type-specific block:

    tag 1: rows I, cols I, cell_width B, cell_bits B, seeds k*Q,
           cells as raw <u8 words, row-major
    tag 2: bits Q, seeds 2*Q, words as raw <u8
    tag 3: counters Q, seeds 2*Q, counters as raw u1

Round-trips are bit-exact.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .baselines import CountingBloomFilter, StandardBloomFilter
from .core import TwoDBloomFilter
from .geometry import FilterGeometry
from .hashing import HashVariant

MAGIC = b"2DBLOOMF"
VERSION = 1

_TAG_2D = 1
_TAG_SBF = 2
_TAG_CBF = 3

_HEADER = struct.Struct("<8sHBBIQ")


def save_filter(
    f: TwoDBloomFilter | StandardBloomFilter | CountingBloomFilter, path
) -> None:
    if isinstance(f, TwoDBloomFilter):
        tag = _TAG_2D
    elif isinstance(f, StandardBloomFilter):
        tag = _TAG_SBF
    elif isinstance(f, CountingBloomFilter):
        tag = _TAG_CBF
    else:
        raise TypeError(f"cannot snapshot {type(f).__name__}")
    hash_count = f.geometry.hash_count if tag == _TAG_2D else f.hash_count
    chunks = [
        _HEADER.pack(
            MAGIC,
            VERSION,
            tag,
            int(f.variant),
            hash_count,
            f.inserted_count,
        )
    ]
    if tag == _TAG_2D:
        g = f.geometry
        chunks.append(struct.pack("<IIBB", g.rows, g.cols, g.cell_width, g.cell_bits))
        chunks.append(struct.pack(f"<{len(f.seeds)}Q", *f.seeds))
        chunks.append(np.ascontiguousarray(f.cells, dtype="<u8").tobytes())
    elif tag == _TAG_SBF:
        chunks.append(struct.pack("<Q", f.bits))
        chunks.append(struct.pack("<2Q", *f.seeds))
        chunks.append(np.ascontiguousarray(f.words, dtype="<u8").tobytes())
    else:
        chunks.append(struct.pack("<Q", f.bits))
        chunks.append(struct.pack("<2Q", *f.seeds))
        chunks.append(f.counters.tobytes())
    Path(path).write_bytes(b"".join(chunks))


def load_filter(path) -> TwoDBloomFilter | StandardBloomFilter | CountingBloomFilter:
    """Rebuild a filter from a snapshot.

    Snapshots hold operational state only; the original sizing inputs
    (expected_items, fp_target) are not recorded and read back as zero
    on the flat filters.
    """
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path} is too short to be a filter snapshot")
    magic, version, tag, variant_bytes, hash_count, inserted = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError(f"{path} is not a filter snapshot (bad magic)")
    if version != VERSION:
        raise ValueError(f"unsupported snapshot version {version}")
    variant = HashVariant(variant_bytes)
    offset = _HEADER.size
    if tag == _TAG_2D:
        rows, cols, cell_width, cell_bits = struct.unpack_from("<IIBB", raw, offset)
        offset += struct.calcsize("<IIBB")
        seeds = struct.unpack_from(f"<{hash_count}Q", raw, offset)
        offset += 8 * hash_count
        geometry = FilterGeometry(
            rows=rows,
            cols=cols,
            cell_bits=cell_bits,
            hash_count=hash_count,
            cell_width=cell_width,
        )
        f = TwoDBloomFilter(geometry, variant, seeds)
        cells = np.frombuffer(raw, dtype="<u8", count=rows * cols, offset=offset)
        f.cells = cells.reshape(rows, cols).astype(np.uint64)
        f.inserted_count = inserted
        return f
    if tag in (_TAG_SBF, _TAG_CBF):
        (bits,) = struct.unpack_from("<Q", raw, offset)
        offset += 8
        seeds = struct.unpack_from("<2Q", raw, offset)
        offset += 16
        cls = StandardBloomFilter if tag == _TAG_SBF else CountingBloomFilter
        f = cls.__new__(cls)
        f.bits = bits
        f.hash_count = hash_count
        f.expected_items = 0
        f.fp_target = 0.0
        f.variant = variant
        f.seeds = tuple(seeds)
        f.inserted_count = inserted
        f.hash_calls = 0
        f.probe_calls = 0
        if tag == _TAG_SBF:
            words = np.frombuffer(raw, dtype="<u8", count=(bits + 63) // 64, offset=offset)
            f.words = words.astype(np.uint64)
        else:
            f.counters = np.frombuffer(raw, dtype=np.uint8, count=bits, offset=offset).copy()
        return f
    raise ValueError(f"unknown snapshot type tag {tag}")
