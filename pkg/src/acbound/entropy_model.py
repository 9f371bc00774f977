"""Bit-exact AC code-length accounting for JPEG Baseline entropy coding.

A nonzero quantized AC coefficient preceded by ``r`` zeros is coded as the
Huffman code of the symbol ``(r, s)`` followed by ``s`` amplitude bits,
where ``s`` is the coefficient size.  The total cost ``len(r, s)`` depends
only on the symbol, so the per-symbol costs of the typical (annex K)
tables are stored here as literal grids, one per component class.  Runs
longer than 15 zeros are coded with ZRL extension symbols; a trailing run
of zeros is closed with EOB.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

MAX_RUNLENGTH = 62      # 62 zeros before the last of 63 AC coefficients
MAX_SIZE = 10           # AC amplitudes fit in 10 bits
AC_POSITIONS = 63


class ComponentKind(Enum):
    """Which of the two typical AC Huffman tables applies."""

    LUMINANCE = "luminance"
    CHROMINANCE = "chrominance"


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


@dataclass(frozen=True)
class CodeLengthTable:
    """Total code length (Huffman + amplitude bits) per (runlength, size).

    ``grid[s - 1][r]`` holds the cost of symbol ``(r, s)`` for
    ``r in 0..15`` and ``s in 1..10``.  The two size-0 symbols are kept
    separately: ``eob_bits`` is ``(0, 0)`` and ``zrl_bits`` is ``(15, 0)``.
    """

    component: ComponentKind
    grid: tuple[tuple[int, ...], ...]
    eob_bits: int
    zrl_bits: int

    def code_length(self, runlength: int, size: int) -> int:
        """Cost in bits of one coded coefficient with ``runlength`` leading zeros.

        Runs of 16 zeros or more are charged one ZRL symbol per full 16
        zeros, then the residual symbol.  At most three ZRL extensions fit
        before a coefficient, which caps ``runlength`` at 62.
        """
        if not 0 <= runlength <= MAX_RUNLENGTH:
            raise ParameterError(f"runlength {runlength} outside 0..{MAX_RUNLENGTH}")
        if not 1 <= size <= MAX_SIZE:
            raise ParameterError(f"size {size} outside 1..{MAX_SIZE}")
        zrl_count, rest = divmod(runlength, 16)
        return zrl_count * self.zrl_bits + self.grid[size - 1][rest]

    def huffman_length(self, runlength: int, size: int) -> int:
        """Length of the Huffman part alone for the residual symbol."""
        return self.grid[size - 1][runlength % 16] - size

    def to_csv(self) -> str:
        """Render the table as CSV, one row per size 0..10, columns r=0..15."""
        header = "size," + ",".join(str(r) for r in range(16))
        rows = [header]
        size0 = [""] * 16
        size0[0] = str(self.eob_bits)
        size0[15] = str(self.zrl_bits)
        rows.append("0," + ",".join(size0))
        for s in range(1, MAX_SIZE + 1):
            rows.append(f"{s}," + ",".join(str(v) for v in self.grid[s - 1]))
        return "\n".join(rows) + "\n"


# Typical AC tables of the JPEG specification (annex K), expressed as total
# per-symbol costs len(Huff(r, s)) + s.  Transcribed cell for cell.

_LUMINANCE_GRID = (
    (3, 5, 6, 7, 7, 8, 8, 9, 10, 10, 10, 11, 11, 12, 17, 17),
    (4, 7, 10, 11, 12, 13, 14, 14, 17, 18, 18, 18, 18, 18, 18, 18),
    (6, 10, 13, 15, 19, 19, 19, 19, 19, 19, 19, 19, 19, 19, 19, 19),
    (8, 13, 16, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20),
    (10, 16, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21),
    (13, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22),
    (15, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23),
    (18, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24),
    (25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25),
    (26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26),
)

_CHROMINANCE_GRID = (
    (3, 5, 6, 6, 7, 7, 8, 8, 9, 10, 10, 10, 10, 12, 15, 16),
    (5, 8, 10, 10, 11, 12, 13, 13, 18, 18, 18, 18, 18, 18, 18, 18),
    (7, 11, 13, 13, 19, 19, 19, 19, 19, 19, 19, 19, 19, 19, 19, 19),
    (9, 13, 16, 16, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20),
    (10, 16, 20, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21, 21),
    (12, 18, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22, 22),
    (14, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23, 23),
    (17, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24),
    (19, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25),
    (22, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26, 26),
)

_LUMINANCE = CodeLengthTable(ComponentKind.LUMINANCE, _LUMINANCE_GRID, eob_bits=4, zrl_bits=11)
_CHROMINANCE = CodeLengthTable(ComponentKind.CHROMINANCE, _CHROMINANCE_GRID, eob_bits=2, zrl_bits=10)


def luminance_table() -> CodeLengthTable:
    return _LUMINANCE


def chrominance_table() -> CodeLengthTable:
    return _CHROMINANCE


def table_for(component: ComponentKind) -> CodeLengthTable:
    return _LUMINANCE if component is ComponentKind.LUMINANCE else _CHROMINANCE


def code_length(table: CodeLengthTable, runlength: int, size: int) -> int:
    """Cost of one coded coefficient; see :meth:`CodeLengthTable.code_length`."""
    return table.code_length(runlength, size)


@dataclass(frozen=True)
class SymbolSequence:
    """Run/size symbols of one block in zigzag order.

    ``has_eob`` is False exactly when the 63rd AC coefficient is nonzero.
    Runs longer than 15 are kept as one symbol; ZRL expansion happens when
    costing the symbol.
    """

    symbols: tuple[tuple[int, int], ...]
    has_eob: bool

    def covered_positions(self, total: int = AC_POSITIONS) -> int:
        covered = sum(r + 1 for r, _ in self.symbols)
        return covered if not self.has_eob else total


def symbolize(sizes) -> SymbolSequence:
    """Group a 63-entry size vector into (runlength, size) symbols.

    Zero sizes accumulate into the run preceding the next nonzero size; a
    trailing run (if any) is represented by EOB.
    """
    sizes = list(sizes)
    if len(sizes) != AC_POSITIONS:
        raise ParameterError(f"expected {AC_POSITIONS} sizes, got {len(sizes)}")
    symbols: list[tuple[int, int]] = []
    run = 0
    for s in sizes:
        if not 0 <= s <= MAX_SIZE:
            raise ParameterError(f"size {s} outside 0..{MAX_SIZE}")
        if s == 0:
            run += 1
        else:
            symbols.append((run, s))
            run = 0
    return SymbolSequence(tuple(symbols), has_eob=run > 0)


def desymbolize(seq: SymbolSequence, total: int = AC_POSITIONS) -> list[int]:
    """Expand a symbol sequence back into a size vector of length ``total``."""
    sizes: list[int] = []
    for r, s in seq.symbols:
        sizes.extend([0] * r)
        sizes.append(s)
    if len(sizes) > total or (len(sizes) == total and seq.has_eob):
        raise ParameterError("symbol sequence does not fit the block")
    sizes.extend([0] * (total - len(sizes)))
    return sizes


def sequence_length(table: CodeLengthTable, seq: SymbolSequence) -> int:
    """Total AC bits of a symbol sequence, including the EOB if present."""
    total = sum(table.code_length(r, s) for r, s in seq.symbols)
    if seq.has_eob:
        total += table.eob_bits
    return total


def crude_bound() -> int:
    """Upper bound ignoring the quantization table entirely.

    63 coefficients at the longest possible symbol (16-bit Huffman code
    plus a 10-bit amplitude) plus the longer EOB.
    """
    return AC_POSITIONS * (16 + MAX_SIZE) + 4


def max_dc_diff_amplitude(q00: int) -> int:
    """Largest possible difference between two quantized DC coefficients."""
    if q00 < 1:
        raise ParameterError(f"DC quantization factor {q00} must be >= 1")
    return (2 * 2**10) // q00
