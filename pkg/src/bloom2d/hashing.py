"""Variable-stride 64-bit mixing hashes and deterministic seed derivation.

The family H1..H9 shares one multiply / xor-shift round structure and
differs only in how many input bytes a round consumes: H1 reads 3 bytes
per round, H2 reads 4, and so on up to H9 at 11.  Input words are loaded
little-endian, so digests are pure functions of (key bytes, seed, variant)
and stable across platforms and runs.

Strides wider than 8 bytes do not fit a 64-bit word; the bytes above the
word boundary are XOR-folded back into the low word before mixing, so
every byte of every block still reaches the digest.

The committed golden-vector fixture (newline-delimited
``hex(key),seed,variant,hex(digest)`` records) anchors these digests
bit-for-bit; any change to the constants or round structure below is a
breaking format change.
"""

from __future__ import annotations

import enum

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_MULT = 0xC6A4A7935BD1E995
_SHIFT = 47
# Folded into the initial state so that each (seed, variant) pair defines
# a distinct function even for the empty key, whose block loop never runs.
_VARIANT_SALT = 0x9E3779B97F4A7C15
# Base for seed derivation: fractional bits of sqrt(2).
_SEED_BASE = 0x6A09E667F3BCC908


class HashVariant(enum.IntEnum):
    """Family member; the integer value is the stride in bytes per round."""

    H1 = 3
    H2 = 4
    H3 = 5
    H4 = 6
    H5 = 7
    H6 = 8
    H7 = 9
    H8 = 10
    H9 = 11

    @property
    def block_bytes(self) -> int:
        return int(self.value)

    @classmethod
    def from_label(cls, label: str) -> "HashVariant":
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(
                f"unknown hash variant {label!r}; expected H1..H9"
            ) from None


def splitmix64(value: int) -> int:
    """One splitmix64 scramble step; a bijection on 64-bit integers."""
    z = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seeds(count: int) -> list[int]:
    """``count`` pairwise-distinct 64-bit seeds.

    Deterministic, and prefix-stable: ``derive_seeds(10)[:5]`` equals
    ``derive_seeds(5)``.  Distinctness holds by construction because
    splitmix64 is a bijection applied to distinct inputs.
    """
    if count < 1:
        raise ValueError(f"seed count must be >= 1, got {count}")
    return [splitmix64(_SEED_BASE ^ j) for j in range(count)]


def hash_key(key: bytes, seed: int, variant: HashVariant = HashVariant.H4) -> int:
    """64-bit digest of ``key`` under ``seed`` and the given stride variant.

    Total function: any byte string (including empty) hashes.  The final
    partial block, when the key length is not a multiple of the stride, is
    loaded and mixed exactly like a full round, and the key length is part
    of the initial state, so zero-padding a key changes its digest.
    """
    stride = int(variant)
    h = (seed ^ (len(key) * _MULT) ^ (stride * _VARIANT_SALT)) & _MASK64
    for off in range(0, len(key), stride):
        k = int.from_bytes(key[off : off + stride], "little")
        k = (k & _MASK64) ^ (k >> 64)
        k = (k * _MULT) & _MASK64
        k ^= k >> _SHIFT
        k = (k * _MULT) & _MASK64
        h ^= k
        h = (h * _MULT) & _MASK64
    h ^= h >> _SHIFT
    h = (h * _MULT) & _MASK64
    h ^= h >> _SHIFT
    return h


def hash_batch(
    keys: np.ndarray, seed: int, variant: HashVariant = HashVariant.H4
) -> np.ndarray:
    """Digest every row of a ``(count, length)`` uint8 key matrix.

    Bit-identical to calling :func:`hash_key` on each row; the matrix form
    exists so bulk filter operations can stay vectorised.  All keys in a
    batch must share one length by construction of the matrix.
    """
    keys = np.ascontiguousarray(keys, dtype=np.uint8)
    if keys.ndim != 2:
        raise ValueError(f"key matrix must be 2-D, got shape {keys.shape}")
    count, length = keys.shape
    stride = int(variant)
    init = (seed ^ (length * _MULT) ^ (stride * _VARIANT_SALT)) & _MASK64
    h = np.full(count, init, dtype=np.uint64)
    mult = np.uint64(_MULT)
    shift = np.uint64(_SHIFT)
    for off in range(0, length, stride):
        block = keys[:, off : off + stride]
        k = np.zeros(count, dtype=np.uint64)
        for pos in range(block.shape[1]):
            col = block[:, pos].astype(np.uint64)
            if pos < 8:
                k |= col << np.uint64(8 * pos)
            else:
                # fold of the bytes that sit above the 64-bit boundary
                k ^= col << np.uint64(8 * (pos - 8))
        k *= mult
        k ^= k >> shift
        k *= mult
        h ^= k
        h *= mult
    h ^= h >> shift
    h *= mult
    h ^= h >> shift
    return h
