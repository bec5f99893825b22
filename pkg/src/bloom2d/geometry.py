"""Filter sizing: bit budget, hash count, and the prime X-by-Y shape.

The two-dimensional filter is sized from the classic Bloom budget
``m = -n*ln(eps)/ln(2)^2``: the cell-count target is ``q = m / (2*beta)``
with ``beta`` the largest prime not exceeding the cell width, the
dimension target is ``t = sqrt(q)``, and the dimensions are the primes
sitting three table slots to either side of the first prime above ``t``.
The filter then uses half the classic hash count.  The resulting matrix
holds roughly half the classic bit budget; see the benchmark reports for
the false-positive behaviour this buys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .primes import (
    PrimeTable,
    PrimeTableExhaustedError,
    default_table,
    largest_prime_at_most,
    select_prime,
)

SUPPORTED_CELL_WIDTHS = (8, 16, 32, 64)
# Dimensions are the primes three slots to either side of the selected
# index, so the selected index must be at least 3.
_DIM_OFFSET = 3


class GeometryUnderflowError(ValueError):
    """Capacity too small to place both dimensions in the prime table."""


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def optimal_bits(expected_items: int, fp_target: float) -> int:
    """Classic Bloom bit budget, ceil(-n * ln(eps) / ln(2)^2)."""
    if expected_items < 1:
        raise ValueError(f"expected_items must be >= 1, got {expected_items}")
    if not 0.0 < fp_target < 1.0:
        raise ValueError(f"fp_target must lie in (0, 1), got {fp_target}")
    return math.ceil(-expected_items * math.log(fp_target) / math.log(2) ** 2)


def optimal_hash_count(bits: int, expected_items: int) -> int:
    """Classic hash-count heuristic round((m/n) * ln 2), never below 1."""
    if bits < 1:
        raise ValueError(f"bits must be >= 1, got {bits}")
    if expected_items < 1:
        raise ValueError(f"expected_items must be >= 1, got {expected_items}")
    return max(1, _round_half_up(bits / expected_items * math.log(2)))


@dataclass(frozen=True)
class SizingTrace:
    """Intermediate values of the shape derivation, kept for reporting."""

    expected_items: int
    fp_target: float
    bits: int            # classic bit budget m
    cell_target: int     # bits // (2 * cell_bits)
    dim_target: float    # sqrt(cell_target); fraction retained
    prime_index: int     # index of the first prime above dim_target


@dataclass(frozen=True)
class FilterGeometry:
    """Shape of a two-dimensional filter.

    ``rows``, ``cols`` and ``cell_bits`` are prime and rows != cols;
    ``cell_bits`` counts the usable low bits of each physically
    ``cell_width``-bit cell.
    """

    rows: int
    cols: int
    cell_bits: int
    hash_count: int
    cell_width: int
    trace: SizingTrace | None = None

    @property
    def memory_bits(self) -> int:
        """Physical footprint: rows * cols * cell_width."""
        return self.rows * self.cols * self.cell_width


def min_supported_items(
    fp_target: float, cell_width: int = 64, table: PrimeTable | None = None
) -> int:
    """Smallest capacity for which :func:`derive_geometry` succeeds."""
    table = table if table is not None else default_table()
    cell_bits = largest_prime_at_most(table, cell_width)
    floor_target = int(table.primes[_DIM_OFFSET - 1]) ** 2
    n = max(
        1,
        math.ceil(2 * cell_bits * floor_target * math.log(2) ** 2 / -math.log(fp_target)),
    )
    while optimal_bits(n, fp_target) // (2 * cell_bits) < floor_target:
        n += 1
    while n > 1 and optimal_bits(n - 1, fp_target) // (2 * cell_bits) >= floor_target:
        n -= 1
    return n


def derive_geometry(
    expected_items: int,
    fp_target: float,
    cell_width: int = 64,
    table: PrimeTable | None = None,
) -> FilterGeometry:
    """Derive the prime X-by-Y shape for a capacity and false-positive target.

    Raises :class:`GeometryUnderflowError` when the capacity is too small
    for the three-slot dimension offsets, naming the smallest supported
    capacity, and propagates :class:`PrimeTableExhaustedError` when the
    dimension target outruns the table.
    """
    if cell_width not in SUPPORTED_CELL_WIDTHS:
        raise ValueError(
            f"cell_width must be one of {SUPPORTED_CELL_WIDTHS}, got {cell_width}"
        )
    table = table if table is not None else default_table()
    cell_bits = largest_prime_at_most(table, cell_width)
    bits = optimal_bits(expected_items, fp_target)
    cell_target = bits // (2 * cell_bits)
    dim_target = math.sqrt(cell_target)
    prime_index = select_prime(table, dim_target)
    if prime_index < _DIM_OFFSET:
        raise GeometryUnderflowError(
            f"expected_items={expected_items} is too small for a two-dimensional "
            f"shape at fp_target={fp_target} and cell_width={cell_width}; the "
            f"smallest supported value is "
            f"{min_supported_items(fp_target, cell_width, table)}"
        )
    if prime_index + _DIM_OFFSET >= len(table):
        raise PrimeTableExhaustedError(
            f"prime table with limit {table.limit} cannot place a dimension "
            f"{_DIM_OFFSET} slots above index {prime_index}"
        )
    rows = int(table.primes[prime_index + _DIM_OFFSET])
    cols = int(table.primes[prime_index - _DIM_OFFSET])
    half_hashes = max(
        1, _round_half_up(optimal_hash_count(bits, expected_items) / 2)
    )
    trace = SizingTrace(
        expected_items=expected_items,
        fp_target=fp_target,
        bits=bits,
        cell_target=cell_target,
        dim_target=dim_target,
        prime_index=prime_index,
    )
    return FilterGeometry(
        rows=rows,
        cols=cols,
        cell_bits=cell_bits,
        hash_count=half_hashes,
        cell_width=cell_width,
        trace=trace,
    )
