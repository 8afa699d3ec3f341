"""Support patterns of partial matrices and SLMF column systems.

A support pattern records which entries of an m x n matrix are observed, as a
set of cells given column by column: column j observes the rows in its support
set.  Patterns are immutable; row sets are stored as bitmasks (bit i-1 = row i)
which caps m at 64 rows, far beyond the exhaustive-search ceilings elsewhere.

An Slmf holds the column supports of a (r,m) linkage matching field support:
exactly m-r columns, each with r+1 rows.  Whether such a system actually
satisfies the linkage counting condition is decided in the slmf module.

Text formats:

* indicator: m lines of n space-separated 0/1 tokens, trailing newline;
* JSON: {"m": .., "n": .., "columns": [[..], ..]} with 1-based sorted entries.

parse_pattern accepts both (JSON is detected by a leading '{').
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import CapacityError, ContractError, ParseError

MAX_ROWS = 64


def _bits_of(rows, m: int, what: str) -> int:
    mask = 0
    for i in rows:
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= m:
            raise ContractError("%s: row index %r out of range 1..%d" % (what, i, m))
        bit = 1 << (i - 1)
        if mask & bit:
            raise ContractError("%s: duplicate row index %d" % (what, i))
        mask |= bit
    return mask


def _rows_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class SupportPattern:
    """Observed-entry pattern of an m x n partial matrix."""

    m: int
    n: int
    cols: tuple[int, ...]  # bitmask per column, bit i-1 = row i

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ContractError("negative dimensions")
        if self.m > MAX_ROWS:
            raise CapacityError("m=%d exceeds the %d-row ceiling" % (self.m, MAX_ROWS))
        if len(self.cols) != self.n:
            raise ContractError("expected %d columns, got %d" % (self.n, len(self.cols)))
        full = (1 << self.m) - 1
        for j, mask in enumerate(self.cols, start=1):
            if not isinstance(mask, int) or mask < 0 or mask & ~full:
                raise ContractError("column %d support out of range" % j)

    @classmethod
    def from_columns(cls, m: int, columns) -> "SupportPattern":
        cols = tuple(_bits_of(c, m, "column %d" % (j + 1)) for j, c in enumerate(columns))
        return cls(m, len(cols), cols)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        """Column supports as 1-based sorted row tuples."""
        return tuple(_rows_of(mask) for mask in self.cols)

    def size(self) -> int:
        """Number of observed cells."""
        return sum(mask.bit_count() for mask in self.cols)

    def cells(self) -> list[tuple[int, int]]:
        """Observed cells (i, j), 1-based, row-major order."""
        out = []
        for i in range(1, self.m + 1):
            bit = 1 << (i - 1)
            for j, mask in enumerate(self.cols, start=1):
                if mask & bit:
                    out.append((i, j))
        return out


def parse_pattern(text: str) -> SupportPattern:
    """Parse a pattern from indicator text or JSON (auto-detected)."""
    stripped = text.lstrip()
    if not stripped:
        raise ParseError("empty pattern text")
    if stripped.startswith("{"):
        return _parse_json(text)
    return _parse_indicator(text)


def _parse_indicator(text: str) -> SupportPattern:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty pattern text")
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            raise ParseError("line %d: blank line inside indicator matrix" % lineno)
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(
                "line %d: expected %d tokens, got %d" % (lineno, width, len(tokens))
            )
        row = []
        for tok in tokens:
            if tok not in ("0", "1"):
                raise ParseError("line %d: invalid token %r" % (lineno, tok))
            row.append(tok == "1")
        rows.append(row)
    m, n = len(rows), width
    cols = []
    for j in range(n):
        mask = 0
        for i in range(m):
            if rows[i][j]:
                mask |= 1 << i
        cols.append(mask)
    return SupportPattern(m, n, tuple(cols))


def _parse_json(text: str) -> SupportPattern:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from None
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    for key in ("m", "n", "columns"):
        if key not in data:
            raise ParseError("missing field %r" % key)
    m, n, columns = data["m"], data["n"], data["columns"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ParseError("field 'm': expected a positive integer")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("field 'n': expected a nonnegative integer")
    if not isinstance(columns, list) or len(columns) != n:
        raise ParseError("field 'columns': expected a list of %r column lists" % n)
    cols = []
    for j, col in enumerate(columns, start=1):
        if not isinstance(col, list):
            raise ParseError("columns[%d]: expected a list" % j)
        mask = 0
        for k, entry in enumerate(col, start=1):
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise ParseError("columns[%d][%d]: expected an integer" % (j, k))
            if not 1 <= entry <= m:
                raise ParseError(
                    "columns[%d][%d]: index %d out of range 1..%d" % (j, k, entry, m)
                )
            bit = 1 << (entry - 1)
            if mask & bit:
                raise ParseError("columns[%d]: duplicate row index %d" % (j, entry))
            mask |= bit
        cols.append(mask)
    if m > MAX_ROWS:
        raise CapacityError("m=%d exceeds the %d-row ceiling" % (m, MAX_ROWS))
    return SupportPattern(m, n, tuple(cols))


def emit_pattern(pattern: SupportPattern, fmt: str = "indicator") -> str:
    """Serialize a pattern; deterministic, round-trips through parse_pattern."""
    if fmt == "indicator":
        lines = []
        for i in range(pattern.m):
            bit = 1 << i
            lines.append(" ".join("1" if mask & bit else "0" for mask in pattern.cols))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {
            "m": pattern.m,
            "n": pattern.n,
            "columns": [list(c) for c in pattern.columns],
        }
        return json.dumps(payload) + "\n"
    raise ContractError("unknown format %r" % fmt)


def degrees(pattern: SupportPattern) -> tuple[list[int], list[int]]:
    """(row degrees, column degrees); sums agree with size()."""
    col_deg = [mask.bit_count() for mask in pattern.cols]
    row_deg = []
    for i in range(pattern.m):
        bit = 1 << i
        row_deg.append(sum(1 for mask in pattern.cols if mask & bit))
    return row_deg, col_deg


def transpose(pattern: SupportPattern) -> SupportPattern:
    """Swap rows and columns; an involution."""
    if pattern.n > MAX_ROWS:
        raise CapacityError("transpose needs n <= %d rows" % MAX_ROWS)
    new_cols = []
    for i in range(pattern.m):
        bit = 1 << i
        mask = 0
        for j, col in enumerate(pattern.cols):
            if col & bit:
                mask |= 1 << j
        new_cols.append(mask)
    return SupportPattern(pattern.n, pattern.m, tuple(new_cols))


def drop_column(pattern: SupportPattern, j: int) -> SupportPattern:
    """Remove column j (1-based); later columns shift down by one."""
    if not 1 <= j <= pattern.n:
        raise ContractError("column index %d out of range 1..%d" % (j, pattern.n))
    cols = pattern.cols[: j - 1] + pattern.cols[j:]
    return SupportPattern(pattern.m, pattern.n - 1, cols)


def drop_row(pattern: SupportPattern, i: int) -> SupportPattern:
    """Remove row i (1-based); later rows shift down by one."""
    if not 1 <= i <= pattern.m:
        raise ContractError("row index %d out of range 1..%d" % (i, pattern.m))
    low = (1 << (i - 1)) - 1
    cols = tuple((mask & low) | ((mask >> i) << (i - 1)) for mask in pattern.cols)
    return SupportPattern(pattern.m - 1, pattern.n, cols)


def reduce_pattern(pattern: SupportPattern, r: int) -> tuple[SupportPattern, tuple]:
    """Strip size-r columns and degree-r rows until neither remains.

    Deleting a column with exactly r observed rows, or a row meeting exactly r
    observed columns, preserves whether the pattern is a base (and more
    generally independent) for rank bound r, so classification may be done on
    the reduced pattern.  Passes alternate: all size-r columns in ascending
    index order, then all degree-r rows, repeated to a fixed point.

    Returns (reduced pattern, log); the log lists ('col', j) / ('row', i)
    steps with indices valid at the moment of deletion, so replaying it with
    replay_reduction transforms the input into the output.
    """
    if r < 1:
        raise ContractError("rank bound must be >= 1")
    cur = pattern
    log = []
    changed = True
    while changed:
        changed = False
        j = 1
        while j <= cur.n:
            if cur.cols[j - 1].bit_count() == r:
                cur = drop_column(cur, j)
                log.append(("col", j))
                changed = True
            else:
                j += 1
        i = 1
        while i <= cur.m:
            bit = 1 << (i - 1)
            if sum(1 for mask in cur.cols if mask & bit) == r:
                cur = drop_row(cur, i)
                log.append(("row", i))
                changed = True
            else:
                i += 1
    return cur, tuple(log)


def replay_reduction(pattern: SupportPattern, log) -> SupportPattern:
    """Apply a reduce_pattern log step by step."""
    cur = pattern
    for kind, idx in log:
        if kind == "col":
            cur = drop_column(cur, idx)
        elif kind == "row":
            cur = drop_row(cur, idx)
        else:
            raise ContractError("unknown log step kind %r" % kind)
    return cur


@dataclass(frozen=True)
class Slmf:
    """Column system of a candidate (r,m) linkage matching field support.

    Exactly m-r columns, each supported on r+1 rows.  sources, when present,
    records for each column the index of the pattern column it was induced
    from (see slmf.induce_slmf).
    """

    r: int
    m: int
    cols: tuple[int, ...]
    sources: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.r < 1:
            raise ContractError("r must be >= 1")
        if self.m > MAX_ROWS:
            raise CapacityError("m=%d exceeds the %d-row ceiling" % (self.m, MAX_ROWS))
        if self.m < self.r + 1:
            raise ContractError("need m >= r+1, got r=%d m=%d" % (self.r, self.m))
        if len(self.cols) != self.m - self.r:
            raise ContractError(
                "expected m-r=%d columns, got %d" % (self.m - self.r, len(self.cols))
            )
        full = (1 << self.m) - 1
        for j, mask in enumerate(self.cols, start=1):
            if not isinstance(mask, int) or mask < 0 or mask & ~full:
                raise ContractError("column %d support out of range" % j)
            if mask.bit_count() != self.r + 1:
                raise ContractError(
                    "column %d has %d rows, need r+1=%d"
                    % (j, mask.bit_count(), self.r + 1)
                )
        if self.sources is not None and len(self.sources) != len(self.cols):
            raise ContractError("sources length mismatch")

    @classmethod
    def from_columns(cls, r: int, m: int, columns, sources=None) -> "Slmf":
        cols = tuple(_bits_of(c, m, "column %d" % (j + 1)) for j, c in enumerate(columns))
        return cls(r, m, cols, tuple(sources) if sources is not None else None)

    @classmethod
    def from_pattern(cls, pattern: SupportPattern, r: int, sources=None) -> "Slmf":
        return cls(r, pattern.m, pattern.cols,
                   tuple(sources) if sources is not None else None)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_rows_of(mask) for mask in self.cols)

    def as_pattern(self) -> SupportPattern:
        return SupportPattern(self.m, len(self.cols), self.cols)
