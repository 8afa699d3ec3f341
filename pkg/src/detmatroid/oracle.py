"""Randomized rank oracle for independence in the rank-r matrix matroid.

A pattern Omega is generically independent iff the Jacobian of the observed
entries of X = L*R with respect to the parameters (L, R) has rank equal to
#Omega at a generic point; evaluating at random (L, R) over GF(p) gives a
Monte Carlo test.  Full rank at any single evaluation is a genuine
certificate of independence (a nonzero minor mod p lifts to a nonzero minor
over the rationals); rank deficiency is evidence of dependence whose error
probability shrinks with repeated trials and distinct primes.  A base is an
independent set of size r(m+n-r), the dimension of the rank-<=r variety.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import linalg
from .errors import CapacityError, ContractError
from .fields import DEFAULT_PRIME, PrimeField
from .patterns import SupportPattern
from .seeding import derive_seed
from .slmf import RelaxedParams, ViolationWitness, is_relaxed_slmf

DEFAULT_TRIALS = 3
_PROJECTION_CHECK_CEILING = 100_000
_RESAMPLE_ATTEMPTS = 200


@dataclass(frozen=True)
class PrimeFieldMatrix:
    """Dense matrix over GF(p) with entries reduced into [0, p)."""

    p: int
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ContractError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ContractError("column count mismatch")
            if any(not 0 <= v < self.p for v in row):
                raise ContractError("entry not reduced mod %d" % self.p)

    @classmethod
    def from_rows(cls, p: int, rows) -> "PrimeFieldMatrix":
        ent = tuple(tuple(v % p for v in row) for row in rows)
        return cls(p, len(ent), len(ent[0]) if ent else 0, ent)

    def rank(self) -> int:
        return linalg.rank([list(r) for r in self.entries], PrimeField(self.p))

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def random_rank_r(m: int, n: int, r: int, p: int = DEFAULT_PRIME,
                  seed: int = 0) -> PrimeFieldMatrix:
    """Random X = L*R of rank exactly r over GF(p), generic column space.

    Resamples until rank(X) = r and every projection of the column space onto
    r coordinates is full-rank (equivalently all r-row minors of L are
    nonzero), which completion relies on.  r = 0 gives the zero matrix.
    """
    if not 0 <= r <= min(m, n):
        raise ContractError("need 0 <= r <= min(m,n), got r=%d" % r)
    field = PrimeField(p)
    if r == 0:
        return PrimeFieldMatrix.from_rows(p, [[0] * n for _ in range(m)])
    if p < 2 * r:
        raise ContractError("p=%d too small for rank %d sampling" % (p, r))
    if math.comb(m, r) > _PROJECTION_CHECK_CEILING:
        raise CapacityError("C(%d,%d) projection checks exceed the ceiling" % (m, r))
    rng = random.Random(seed)
    from itertools import combinations

    for _ in range(_RESAMPLE_ATTEMPTS):
        left = linalg.random_matrix(m, r, field, rng)
        ok = True
        for rows in combinations(range(m), r):
            if linalg.det(linalg.submatrix(left, rows, range(r)), field) == 0:
                ok = False
                break
        if not ok:
            continue
        right = linalg.random_matrix(r, n, field, rng)
        if linalg.rank(right, field) != r:
            continue
        return PrimeFieldMatrix.from_rows(p, linalg.mat_mul(left, right, field))
    raise ContractError("could not sample a generic rank-%d matrix over GF(%d)"
                        % (r, p))


def jacobian_rank(pattern: SupportPattern, r: int, p: int = DEFAULT_PRIME,
                  seed: int = 0) -> int:
    """Rank of the Jacobian of the observed entries of L*R at random (L, R).

    Rows are the cells of the pattern (row-major); columns are the entries of
    L then R.  The cell (i,j) has derivative R[k][j] with respect to L[i][k]
    and L[i][k] with respect to R[k][j].
    """
    if r < 0:
        raise ContractError("r must be >= 0")
    size = pattern.size()
    if r == 0 or size == 0:
        return 0
    m, n = pattern.m, pattern.n
    field = PrimeField(p)
    rng = random.Random(seed)
    left = linalg.random_matrix(m, r, field, rng)
    right = linalg.random_matrix(r, n, field, rng)
    ncols = m * r + r * n
    jac = []
    for i, j in pattern.cells():
        row = [0] * ncols
        for k in range(r):
            row[(i - 1) * r + k] = right[k][j - 1]
            row[m * r + k * n + (j - 1)] = left[i - 1][k]
        jac.append(row)
    return linalg.rank(jac, field)


@dataclass(frozen=True)
class OracleVerdict:
    """Outcome of the randomized independence test.

    rank_required is the size of the pattern (what independence demands);
    dimension is r(m+n-r), the variety dimension a base must match.  The
    verdict is Monte Carlo: 'independent'/'base' are certified by the
    full-rank witness, 'dependent'/'not_base' are supported by all trials
    falling short.
    """

    verdict: str
    trials: int
    p: int
    rank_observed: int
    rank_required: int
    dimension: int

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "trials": self.trials,
            "p": self.p,
            "rank_observed": self.rank_observed,
            "rank_required": self.rank_required,
            "dimension": self.dimension,
        }


def is_base(pattern: SupportPattern, r: int, p: int = DEFAULT_PRIME,
            trials: int = DEFAULT_TRIALS, seed: int = 0) -> OracleVerdict:
    """Classify the pattern: base / not_base at size r(m+n-r), else
    independent / dependent.

    Takes the max of jacobian_rank over the trials (rank is never
    overestimated), stopping early once the rank reaches the pattern size.
    """
    m, n = pattern.m, pattern.n
    if not 0 <= r <= min(m, n):
        raise ContractError("need 0 <= r <= min(m,n), got r=%d m=%d n=%d" % (r, m, n))
    if trials < 1:
        raise ContractError("trials must be >= 1")
    size = pattern.size()
    dim = r * (m + n - r)
    best = 0
    ran = 0
    for t in range(trials):
        ran += 1
        rk = jacobian_rank(pattern, r, p, derive_seed(seed, "jacobian-trial-%d" % t))
        if rk > best:
            best = rk
        if best == size:
            break
    if size == dim:
        verdict = "base" if best == size else "not_base"
    elif size < dim:
        verdict = "independent" if best == size else "dependent"
    else:
        verdict = "not_base"  # more cells than the variety dimension
    return OracleVerdict(verdict, ran, p, best, size, dim)


@dataclass(frozen=True)
class NecessityReport:
    """Cross-check of the oracle against the relaxed counting condition.

    A base must be a relaxed (r,r,m)-SLMF, so oracle=base together with
    relaxed=False is a red flag (an implementation bug or an oracle false
    positive).
    """

    consistent: bool
    oracle: OracleVerdict
    relaxed: bool
    witness: ViolationWitness | None
    message: str

    def as_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "oracle": self.oracle.as_dict(),
            "relaxed": self.relaxed,
            "witness": self.witness.as_dict() if self.witness else None,
            "message": self.message,
        }


def check_necessity(pattern: SupportPattern, r: int, p: int = DEFAULT_PRIME,
                    trials: int = DEFAULT_TRIALS, seed: int = 0) -> NecessityReport:
    verdict = is_base(pattern, r, p, trials, seed)
    relaxed, witness = is_relaxed_slmf(pattern, RelaxedParams(r, r))
    if verdict.verdict == "base" and not relaxed:
        return NecessityReport(
            False, verdict, relaxed, witness,
            "red flag: oracle reports a base but the pattern is not a "
            "relaxed (%d,%d,%d)-SLMF" % (r, r, pattern.m),
        )
    return NecessityReport(True, verdict, relaxed, witness, "consistent")
