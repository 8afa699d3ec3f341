"""Exhaustive desk-scale comparison of the combinatorial and algebraic sides.

For every pattern in a small grid (one representative per row/column
permutation orbit) the census records three classifications: the relaxed
(r,r,m) counting condition, the existence of a partition into r relaxed
(1,r,m) groups, and the randomized rank oracle.  A consistent census has
relaxed = partition on every row, with partition implying oracle-base and
oracle-base implying relaxed.  Inconsistent rows are re-verified with more
trials across several primes before being reported as counterexamples.

Known closed-form characterizations at the extreme ranks (spanning trees for
r = 1, absence of a full bipartite K_{m,m} for r = min(m,n)-1) serve as an
independent cross-check of the oracle.
"""

from __future__ import annotations

import dataclasses
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import CapacityError, ContractError
from .fields import DEFAULT_PRIME, prev_prime
from .oracle import DEFAULT_TRIALS, OracleVerdict, is_base
from .partition import partition_search
from .patterns import (SupportPattern, degrees, emit_pattern, reduce_pattern,
                       transpose)
from .seeding import derive_seed
from .slmf import RelaxedParams, is_relaxed_slmf

ENUM_CELL_CEILING = 36
CANON_ROW_CEILING = 8


def canonical_form(pattern: SupportPattern) -> SupportPattern:
    """Lexicographically least indicator matrix over row/column permutations.

    For a fixed row order the row-major reading is minimized by sorting the
    columns as binary strings with row 1 most significant, so the canonical
    form is the best column-sorted reading over all row permutations.
    """
    m, n = pattern.m, pattern.n
    if m > CANON_ROW_CEILING:
        raise CapacityError("m=%d exceeds the canonicalization ceiling %d"
                            % (m, CANON_ROW_CEILING))
    best_reading = None
    best_cols = None
    for perm in permutations(range(m)):
        remapped = []
        for mask in pattern.cols:
            nm = 0
            for new_i, old_i in enumerate(perm):
                if (mask >> old_i) & 1:
                    nm |= 1 << new_i
            remapped.append(nm)
        # top-down key: row 1 most significant
        keys = sorted(
            sum(((nm >> i) & 1) << (m - 1 - i) for i in range(m))
            for nm in remapped
        )
        reading = tuple(
            tuple((key >> (m - 1 - i)) & 1 for key in keys) for i in range(m)
        )
        if best_reading is None or reading < best_reading:
            best_reading = reading
            best_cols = tuple(
                sum(((key >> (m - 1 - i)) & 1) << i for i in range(m))
                for key in keys
            )
    return SupportPattern(m, n, best_cols)


def _column_candidates(m: int, r: int, mode: str, col_size: int | None) -> list[int]:
    masks = []
    for mask in range(1 << m):
        pc = mask.bit_count()
        if col_size is not None and pc != col_size:
            continue
        if mode == "base_size_and_mindeg" and pc < r + 1:
            continue
        masks.append(mask)
    return masks


def enumerate_patterns(m: int, n: int, r: int,
                       filter: str = "base_size_and_mindeg",
                       col_size: int | None = None):
    """Yield one canonical representative per pattern orbit.

    filter 'base_size_and_mindeg' keeps size = r(m+n-r) and every row degree
    and column size at least r+1; 'all' imposes nothing.  col_size optionally
    pins every column support size.  Duplicated orbits are suppressed by
    canonicalizing every candidate, so each orbit appears exactly once.
    """
    if filter not in ("base_size_and_mindeg", "all"):
        raise ContractError("unknown filter %r" % filter)
    if m * n > ENUM_CELL_CEILING:
        raise CapacityError("m*n=%d exceeds the exhaustive ceiling %d"
                            % (m * n, ENUM_CELL_CEILING))
    filtered = filter == "base_size_and_mindeg"
    target = r * (m + n - r) if filtered else None
    candidates = _column_candidates(m, r, filter, col_size)
    if filtered and target > m * n:
        return
    sizes = [c.bit_count() for c in candidates]
    ncand = len(candidates)
    # suffix popcount bounds for budget pruning
    suf_min = [0] * (ncand + 1)
    suf_max = [0] * (ncand + 1)
    for i in range(ncand - 1, -1, -1):
        suf_min[i] = min(sizes[i], suf_min[i + 1]) if i + 1 < ncand else sizes[i]
        suf_max[i] = max(sizes[i], suf_max[i + 1]) if i + 1 < ncand else sizes[i]

    seen: set[tuple[int, ...]] = set()
    chosen: list[int] = []

    def emit():
        pat = SupportPattern(m, n, tuple(chosen))
        if filtered:
            row_deg = [0] * m
            for mask in chosen:
                rest = mask
                while rest:
                    low = rest & -rest
                    row_deg[low.bit_length() - 1] += 1
                    rest &= rest - 1
            if any(d < r + 1 for d in row_deg):
                return None
        canon = canonical_form(pat)
        if canon.cols in seen:
            return None
        seen.add(canon.cols)
        return canon

    def rec(start: int, left: int, budget: int):
        if left == 0:
            if budget == 0 or not filtered:
                got = emit()
                if got is not None:
                    yield got
            return
        for idx in range(start, ncand):
            if filtered:
                rest = budget - sizes[idx]
                lo = rest - (left - 1) * suf_max[idx]
                hi = rest - (left - 1) * suf_min[idx]
                if rest < 0 or hi < 0 or lo > 0:
                    continue
            chosen.append(candidates[idx])
            yield from rec(idx, left - 1, budget - sizes[idx] if filtered else 0)
            chosen.pop()

    yield from rec(0, n, target if filtered else 0)


def sample_patterns(m: int, n: int, r: int, count: int, seed: int,
                    filter: str = "base_size_and_mindeg",
                    col_size: int | None = None,
                    max_attempts: int = 200_000) -> list[SupportPattern]:
    """Random canonical patterns matching the filter (distinct orbits).

    Rejection sampling for grids beyond the exhaustive ceiling; returns up to
    count patterns (fewer if attempts run out).
    """
    import random

    rng = random.Random(derive_seed(seed, "sample-patterns"))
    filtered = filter == "base_size_and_mindeg"
    target = r * (m + n - r)
    out: list[SupportPattern] = []
    seen: set[tuple[int, ...]] = set()
    for _ in range(max_attempts):
        if len(out) >= count:
            break
        cols = []
        for _ in range(n):
            size = col_size if col_size is not None else rng.randint(
                r + 1 if filtered else 0, m
            )
            cols.append(sum(1 << i for i in rng.sample(range(m), size)))
        pat = SupportPattern(m, n, tuple(cols))
        if filtered:
            if pat.size() != target:
                continue
            row_deg, col_deg = degrees(pat)
            if min(row_deg + col_deg) < r + 1:
                continue
        canon = canonical_form(pat)
        if canon.cols in seen:
            continue
        seen.add(canon.cols)
        out.append(canon)
    return out


@dataclass(frozen=True)
class CensusRow:
    """One pattern's classification by all three routes."""

    pattern: SupportPattern
    r: int
    is_relaxed_rrm: bool
    has_partition: bool
    oracle_base: bool
    witness: dict | None
    oracle: OracleVerdict | None
    reduction_log: tuple = ()

    @property
    def consistent(self) -> bool:
        return (
            self.is_relaxed_rrm == self.has_partition
            and (not self.has_partition or self.oracle_base)
            and (not self.oracle_base or self.is_relaxed_rrm)
        )

    def as_dict(self) -> dict:
        return {
            "m": self.pattern.m,
            "n": self.pattern.n,
            "r": self.r,
            "columns": [list(c) for c in self.pattern.columns],
            "is_relaxed_rrm": self.is_relaxed_rrm,
            "has_partition": self.has_partition,
            "oracle_base": self.oracle_base,
            "witness": self.witness,
            "reduction_log": [list(step) for step in self.reduction_log],
        }


def classify_pattern(pattern: SupportPattern, r: int, prime: int = DEFAULT_PRIME,
                     trials: int = DEFAULT_TRIALS, seed: int = 0) -> CensusRow:
    """Classify a pattern after reduction, recording the reduction log.

    Stripping size-r columns and degree-r rows preserves independence and
    base-ness, so the reduced pattern carries the classification; a pattern
    that reduces to nothing is a base trivially.
    """
    reduced, log = reduce_pattern(pattern, r)
    pat_seed = derive_seed(seed, "census:%s" % emit_pattern(pattern, "json"))
    if reduced.size() == 0:
        return CensusRow(pattern, r, True, True, True,
                         {"trivial": "reduced to an empty pattern"},
                         None, log)
    if r >= reduced.m or r > reduced.n:
        raise ContractError(
            "reduced pattern is %dx%d; classification needs r < m and r <= n"
            % (reduced.m, reduced.n)
        )
    relaxed, violation = is_relaxed_slmf(reduced, RelaxedParams(r, r))
    cert = partition_search(reduced, r)
    verdict = is_base(reduced, r, prime, trials, pat_seed)
    if not relaxed:
        witness = {"violation": violation.as_dict()}
    elif cert is not None:
        witness = {"partition": cert.as_dict()}
    else:
        witness = None
    return CensusRow(pattern, r, relaxed, cert is not None,
                     verdict.verdict == "base", witness, verdict, log)


@dataclass(frozen=True)
class CensusReport:
    rows: tuple[CensusRow, ...]
    consistent: bool
    counterexamples: tuple[dict, ...]


def _classify_job(args):
    pattern, r, prime, trials, seed = args
    return classify_pattern(pattern, r, prime, trials, seed)


def _reverify_oracle(pattern: SupportPattern, r: int, prime: int,
                     seed: int) -> tuple[bool, list[int]]:
    primes = [prime]
    for _ in range(2):
        primes.append(prev_prime(primes[-1]))
    base = False
    for q in primes:
        verdict = is_base(pattern, r, q, 10, derive_seed(seed, "reverify-%d" % q))
        if verdict.verdict == "base":
            base = True
            break
    return base, primes


def verify_conjecture(m: int, n: int, r: int, prime: int = DEFAULT_PRIME,
                      trials: int = DEFAULT_TRIALS, seed: int = 0,
                      col_size: int | None = None,
                      filter: str = "base_size_and_mindeg",
                      jobs: int = 1) -> CensusReport:
    """Census the grid and check both directions of the equivalence.

    Consistent means: relaxed (r,r,m) = partition existence on every row, a
    partition implies an oracle base, and an oracle base implies relaxed.
    Candidate counterexamples have their oracle column re-verified with 10
    trials at 3 distinct primes, and survive only if still inconsistent.
    """
    patterns = list(enumerate_patterns(m, n, r, filter=filter, col_size=col_size))
    args = [(p, r, prime, trials, seed) for p in patterns]
    if jobs > 1 and len(patterns) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_classify_job, args, chunksize=8))
    else:
        rows = [_classify_job(a) for a in args]
    fixed_rows: list[CensusRow] = []
    counterexamples: list[dict] = []
    for row in rows:
        if row.consistent:
            fixed_rows.append(row)
            continue
        reduced, _ = reduce_pattern(row.pattern, r)
        re_base, primes = _reverify_oracle(reduced, r, prime, seed)
        row = dataclasses.replace(row, oracle_base=re_base)
        fixed_rows.append(row)
        if not row.consistent:
            counterexamples.append({
                "pattern": json.loads(emit_pattern(row.pattern, "json")),
                "row": row.as_dict(),
                "reverified": {"primes": primes, "trials": 10,
                               "oracle_base": re_base},
            })
    return CensusReport(tuple(fixed_rows),
                        all(row.consistent for row in fixed_rows),
                        tuple(counterexamples))


def _is_connected_spanning(pattern: SupportPattern) -> bool:
    """True when the bipartite support graph spans and connects all vertices."""
    m, n = pattern.m, pattern.n
    if m + n == 0:
        return True
    row_adj = [0] * m  # row -> column mask
    for j, mask in enumerate(pattern.cols):
        rest = mask
        while rest:
            low = rest & -rest
            row_adj[low.bit_length() - 1] |= 1 << j
            rest &= rest - 1
    seen_rows, seen_cols = 1, 0
    frontier_rows = 1
    while frontier_rows or seen_cols:
        new_cols = 0
        rest = frontier_rows
        while rest:
            low = rest & -rest
            new_cols |= row_adj[low.bit_length() - 1]
            rest &= rest - 1
        new_cols &= ~seen_cols
        if not new_cols:
            break
        seen_cols |= new_cols
        new_rows = 0
        rest = new_cols
        while rest:
            low = rest & -rest
            new_rows |= pattern.cols[low.bit_length() - 1]
            rest &= rest - 1
        frontier_rows = new_rows & ~seen_rows
        seen_rows |= frontier_rows
    return seen_rows == (1 << m) - 1 and seen_cols == (1 << n) - 1


def is_spanning_tree(pattern: SupportPattern) -> bool:
    """The support graph is a tree on all m+n vertices."""
    return (pattern.size() == pattern.m + pattern.n - 1
            and _is_connected_spanning(pattern))


def contains_full_bipartite(pattern: SupportPattern) -> bool:
    """K_{m,m} containment for m <= n: at least m all-ones columns."""
    full = (1 << pattern.m) - 1
    return sum(1 for c in pattern.cols if c == full) >= pattern.m


@dataclass(frozen=True)
class CrosscheckReport:
    m: int
    n: int
    r: int
    cases: int
    disagreements: tuple[dict, ...]

    @property
    def consistent(self) -> bool:
        return not self.disagreements

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "cases": self.cases,
            "disagreements": list(self.disagreements),
        }


def known_facts_crosscheck(m: int, n: int, r: int, prime: int = DEFAULT_PRIME,
                           trials: int = DEFAULT_TRIALS,
                           seed: int = 0) -> CrosscheckReport:
    """Check the oracle against the closed-form base characterizations.

    r = 1: bases are exactly the spanning trees, checked over every pattern
    of size m+n-1.  r = min(m,n)-1: bases are exactly the size-(m-1)(n+1)
    patterns without a K_{m,m} subgraph (rows on the small side), checked
    over every pattern of that size.
    """
    if m * n > ENUM_CELL_CEILING:
        raise CapacityError("m*n=%d exceeds the exhaustive ceiling %d"
                            % (m * n, ENUM_CELL_CEILING))
    small, large = min(m, n), max(m, n)
    if r not in (1, small - 1):
        raise ContractError("crosscheck supports r=1 or r=min(m,n)-1")
    if r == 1:
        target = m + n - 1
    else:
        target = (small - 1) * (large + 1)
    work = transpose if m > n else (lambda p: p)
    disagreements = []
    cases = 0
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    for subset in combinations(cells, target):
        cols = [0] * n
        for i, j in subset:
            cols[j - 1] |= 1 << (i - 1)
        pattern = SupportPattern(m, n, tuple(cols))
        cases += 1
        oriented = work(pattern)
        if r == 1:
            expected = is_spanning_tree(oriented)
        else:
            expected = not contains_full_bipartite(oriented)
        pat_seed = derive_seed(seed, "crosscheck:%s" % emit_pattern(pattern, "json"))
        verdict = is_base(oriented, r, prime, trials, pat_seed)
        got = verdict.verdict == "base"
        if got != expected:
            disagreements.append({
                "pattern": json.loads(emit_pattern(pattern, "json")),
                "combinatorial": expected,
                "oracle": verdict.as_dict(),
            })
    return CrosscheckReport(m, n, r, cases, tuple(disagreements))
