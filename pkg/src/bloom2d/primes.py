"""Prime sieve and the ascending prime table that shapes filter dimensions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_LIMIT = 10_000_000
# Tables at or below this size are scanned linearly; larger ones use
# binary search.  Both return the same index.
_LINEAR_SCAN_MAX = 10_000


class PrimeTableExhaustedError(ValueError):
    """The requested target lies beyond the table's coverage."""


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending (sieve of Eratosthenes)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@dataclass(frozen=True)
class PrimeTable:
    """Strictly ascending primes covering [2, limit]."""

    primes: np.ndarray
    limit: int

    @classmethod
    def up_to(cls, limit: int = DEFAULT_LIMIT) -> "PrimeTable":
        return cls(primes=sieve_primes(limit), limit=limit)

    def __len__(self) -> int:
        return int(self.primes.size)


_default_table: PrimeTable | None = None


def default_table() -> PrimeTable:
    """Shared table of all primes below 10**7, built once per process."""
    global _default_table
    if _default_table is None:
        _default_table = PrimeTable.up_to(DEFAULT_LIMIT)
    return _default_table


def select_prime(table: PrimeTable, target: float) -> int:
    """Index of the first table prime strictly greater than ``target``."""
    primes = table.primes
    if primes.size == 0 or target >= primes[-1]:
        raise PrimeTableExhaustedError(
            f"prime table with limit {table.limit} has no prime above {target}"
        )
    if primes.size <= _LINEAR_SCAN_MAX:
        for index, prime in enumerate(primes):
            if prime > target:
                return index
    return int(np.searchsorted(primes, target, side="right"))


def largest_prime_at_most(table: PrimeTable, value: int) -> int:
    """Largest table prime <= value (e.g. 61 for a 64-bit cell)."""
    index = int(np.searchsorted(table.primes, value, side="right")) - 1
    if index < 0:
        raise ValueError(f"no prime at or below {value}")
    return int(table.primes[index])
