"""Partition of pattern columns into relaxed (1,r,m) groups.

A pattern whose columns split into r groups, each a relaxed (1,r,m)-SLMF, is
a base of the rank-r matroid; the certificate carries the groups together
with the SLMF each group induces.  For patterns with all column supports of
size r+1 the search can be replaced by matroid machinery (the Dilworth
truncation of f(J) = #union - r), where packing r disjoint bases is decided
by augmenting-path exchange and failures carry an Edmonds-Fulkerson witness.
Two closed-form constructions handle the extreme ranks m-1 and m-2.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, ContractError, ParseError
from .patterns import Slmf, SupportPattern, _rows_of
from .slmf import RelaxedParams, induce_slmf, is_relaxed_slmf, is_slmf

PARTITION_ROW_CEILING = 24
DILWORTH_CEILING = 12


@dataclass(frozen=True)
class PartitionCertificate:
    """Groups 𝒥_1..𝒥_r covering [n], each with its induced SLMF."""

    r: int
    groups: tuple[tuple[int, ...], ...]
    induced: tuple[Slmf, ...]
    same_phi: bool

    def as_dict(self) -> dict:
        phis = []
        for phi in self.induced:
            pat = phi.as_pattern()
            rows = []
            for i in range(pat.m):
                bit = 1 << i
                rows.append([1 if mask & bit else 0 for mask in pat.cols])
            phis.append(rows)
        return {
            "r": self.r,
            "groups": [list(g) for g in self.groups],
            "phis": phis,
            "same_phi": self.same_phi,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict()) + "\n"


def _phi_key(phi: Slmf) -> tuple[int, ...]:
    return tuple(sorted(phi.cols))


def certificate_from_groups(pattern: SupportPattern, r: int, groups) -> PartitionCertificate:
    """Build and validate a certificate from r column groups.

    Groups are sorted internally and ordered by least member; each must be a
    relaxed (1,r,m)-SLMF (induce_slmf raises otherwise).
    """
    norm = [tuple(sorted(g)) for g in groups]
    if len(norm) != r:
        raise ContractError("expected %d groups, got %d" % (r, len(norm)))
    seen = set()
    for g in norm:
        for j in g:
            if j in seen:
                raise ContractError("column %d appears in two groups" % j)
            seen.add(j)
    if seen != set(range(1, pattern.n + 1)):
        raise ContractError("groups must cover columns 1..%d exactly" % pattern.n)
    norm.sort(key=lambda g: g[0])
    induced = tuple(induce_slmf(pattern, g, r) for g in norm)
    keys = {_phi_key(phi) for phi in induced}
    return PartitionCertificate(r, tuple(norm), induced, len(keys) == 1)


def parse_certificate(text: str) -> PartitionCertificate:
    """Parse the JSON certificate form {"r","groups","phis","same_phi"}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from None
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    for key in ("r", "groups", "phis", "same_phi"):
        if key not in data:
            raise ParseError("missing field %r" % key)
    r = data["r"]
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ParseError("field 'r': expected a positive integer")
    groups_raw = data["groups"]
    phis_raw = data["phis"]
    if not isinstance(groups_raw, list) or not isinstance(phis_raw, list):
        raise ParseError("fields 'groups' and 'phis': expected lists")
    if len(groups_raw) != r or len(phis_raw) != r:
        raise ParseError("expected %d groups and %d phis" % (r, r))
    groups = []
    for gi, g in enumerate(groups_raw, start=1):
        if not isinstance(g, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in g
        ):
            raise ParseError("groups[%d]: expected a list of positive integers" % gi)
        groups.append(tuple(sorted(g)))
    induced = []
    for pi, rows in enumerate(phis_raw, start=1):
        if not isinstance(rows, list) or not rows:
            raise ParseError("phis[%d]: expected an indicator matrix" % pi)
        m = len(rows)
        width = None
        cols = None
        for i, row in enumerate(rows, start=1):
            if not isinstance(row, list) or not all(v in (0, 1) for v in row):
                raise ParseError("phis[%d] row %d: expected 0/1 entries" % (pi, i))
            if width is None:
                width = len(row)
                cols = [0] * width
            elif len(row) != width:
                raise ParseError("phis[%d] row %d: ragged row" % (pi, i))
            for j, v in enumerate(row):
                if v:
                    cols[j] |= 1 << (i - 1)
        try:
            induced.append(Slmf(r, m, tuple(cols)))
        except ContractError as exc:
            raise ParseError("phis[%d]: %s" % (pi, exc)) from None
    keys = {_phi_key(phi) for phi in induced}
    same_phi = data["same_phi"]
    if not isinstance(same_phi, bool):
        raise ParseError("field 'same_phi': expected a boolean")
    if same_phi != (len(keys) == 1):
        raise ParseError("same_phi flag inconsistent with phis")
    return PartitionCertificate(r, tuple(groups), tuple(induced), same_phi)


def validate_certificate(pattern: SupportPattern, cert: PartitionCertificate) -> None:
    """Raise ContractError unless cert is a valid certificate for pattern."""
    seen = set()
    for g in cert.groups:
        for j in g:
            if not 1 <= j <= pattern.n or j in seen:
                raise ContractError("invalid group member %d" % j)
            seen.add(j)
    if seen != set(range(1, pattern.n + 1)):
        raise ContractError("groups do not cover columns 1..%d" % pattern.n)
    if len(cert.groups) != cert.r or len(cert.induced) != cert.r:
        raise ContractError("expected %d groups and induced systems" % cert.r)
    for g, phi in zip(cert.groups, cert.induced):
        ok, witness = is_relaxed_slmf(pattern, RelaxedParams(1, cert.r, g))
        if not ok:
            raise ContractError(
                "group %s is not relaxed (1,%d,%d): %s"
                % (list(g), cert.r, pattern.m, witness.as_dict()),
                witness=witness,
            )
        if phi.m != pattern.m or phi.r != cert.r:
            raise ContractError("induced system shape mismatch")
        ok, bad = is_slmf(phi)
        if not ok:
            raise ContractError("induced system fails at columns %s" % (list(bad),))
        # every induced column must sit inside some group column support
        for pmask in phi.cols:
            if not any(pmask & ~pattern.cols[j - 1] == 0 for j in g):
                raise ContractError(
                    "induced column %s not contained in any group support"
                    % (list(_rows_of(pmask)),)
                )
    keys = {_phi_key(phi) for phi in cert.induced}
    if cert.same_phi != (len(keys) == 1):
        raise ContractError("same_phi flag inconsistent with induced systems")


class TruncationMatroid:
    """Dilworth truncation of f(J) = #(union of supports) - r.

    Defined for patterns with every column support of size exactly r+1; then
    f of a singleton is 1 and the truncation rank of J is min over partitions
    of J of the sum of part f-values.
    """

    def __init__(self, pattern: SupportPattern, r: int):
        if r < 1:
            raise ContractError("r must be >= 1")
        for j, mask in enumerate(pattern.cols, start=1):
            if mask.bit_count() != r + 1:
                raise ContractError(
                    "column %d has %d rows; truncation machinery needs r+1=%d"
                    % (j, mask.bit_count(), r + 1)
                )
        self.pattern = pattern
        self.r = r
        self.n = pattern.n
        self._union = {0: 0}
        self._fhat = {0: 0}

    def union_mask(self, jmask: int) -> int:
        got = self._union.get(jmask)
        if got is None:
            low = jmask & -jmask
            got = self.union_mask(jmask ^ low) | self.pattern.cols[low.bit_length() - 1]
            self._union[jmask] = got
        return got

    def f(self, jmask: int) -> int:
        """#union - r for a nonempty column set given as a bitmask."""
        if jmask == 0:
            raise ContractError("f is defined on nonempty sets")
        return self.union_mask(jmask).bit_count() - self.r

    def _mask_of(self, subset) -> int:
        mask = 0
        for j in subset:
            if not isinstance(j, int) or not 1 <= j <= self.n:
                raise ContractError("column %r out of range 1..%d" % (j, self.n))
            bit = 1 << (j - 1)
            if mask & bit:
                raise ContractError("duplicate column %d" % j)
            mask |= bit
        return mask

    def fhat_mask(self, jmask: int) -> int:
        got = self._fhat.get(jmask)
        if got is not None:
            return got
        if jmask.bit_count() > DILWORTH_CEILING:
            raise CapacityError(
                "#J=%d exceeds the partition-enumeration ceiling %d"
                % (jmask.bit_count(), DILWORTH_CEILING)
            )
        # the part containing the lowest element ranges over submasks
        low = jmask & -jmask
        rest = jmask ^ low
        best = None
        sub = rest
        while True:
            part = sub | low
            val = self.f(part) + (self.fhat_mask(jmask ^ part) if jmask ^ part else 0)
            if best is None or val < best:
                best = val
            if sub == 0:
                break
            sub = (sub - 1) & rest
        self._fhat[jmask] = best
        return best


def dilworth_rank(mat: TruncationMatroid, subset) -> int:
    """Truncation rank of a column set: min over partitions of sum of f."""
    return mat.fhat_mask(mat._mask_of(subset))


def truncation_independent(mat: TruncationMatroid, subset) -> bool:
    """True iff #J' <= f(J') for every nonempty J' of the given columns."""
    jmask = mat._mask_of(subset)
    if jmask.bit_count() > DILWORTH_CEILING:
        raise CapacityError(
            "#J=%d exceeds the partition-enumeration ceiling %d"
            % (jmask.bit_count(), DILWORTH_CEILING)
        )
    sub = jmask
    while sub:
        if sub.bit_count() > mat.f(sub):
            return False
        sub = (sub - 1) & jmask
    return True


@dataclass(frozen=True)
class PackingWitness:
    """A column set J with #J < r(m-r) - r*fhat(complement)."""

    subset: tuple[int, ...]
    size: int
    bound: int

    def as_dict(self) -> dict:
        return {"J": list(self.subset), "size": self.size, "bound": self.bound}


def _independent_mask(mat: TruncationMatroid, jmask: int) -> bool:
    sub = jmask
    while sub:
        if sub.bit_count() > mat.f(sub):
            return False
        sub = (sub - 1) & jmask
    return True


def pack_bases(
    mat: TruncationMatroid,
) -> tuple[list[tuple[int, ...]] | None, PackingWitness | None]:
    """Pack the columns into r disjoint truncation-matroid bases.

    Greedy insertion with matroid-union augmenting paths: an element that fits
    nowhere directly tries to displace members along exchange arcs.  Success
    returns r groups of m-r columns, each independent; failure returns the
    Edmonds-Fulkerson witness.
    """
    r = mat.r
    m = mat.pattern.m
    target = m - r
    if mat.n != r * target:
        raise ContractError("packing needs n = r(m-r), got n=%d" % mat.n)
    if mat.n > DILWORTH_CEILING:
        raise CapacityError(
            "n=%d exceeds the partition-enumeration ceiling %d"
            % (mat.n, DILWORTH_CEILING)
        )
    groups = [0] * r  # bitmasks of assigned columns

    def augment(e_bit: int) -> bool:
        parent: dict[int, tuple[int, int]] = {e_bit: (0, -1)}
        queue = [e_bit]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for g in range(r):
                if groups[g] & x:
                    # x already sits in g; inserting it there is vacuous and
                    # would sever the displacement chain
                    continue
                if _independent_mask(mat, groups[g] | x):
                    # walk the displacement chain back to the new element
                    cur, dest = x, g
                    while True:
                        px, pg = parent[cur]
                        groups[dest] |= cur
                        if px == 0:
                            return True
                        groups[pg] &= ~cur
                        cur, dest = px, pg
                for y_iter in _bits(groups[g]):
                    if y_iter not in parent and _independent_mask(
                        mat, (groups[g] & ~y_iter) | x
                    ):
                        parent[y_iter] = (x, g)
                        queue.append(y_iter)
        return False

    for j in range(mat.n):
        if not augment(1 << j):
            return None, _packing_witness(mat)
    bases = []
    for g in range(r):
        if groups[g].bit_count() != target or not _independent_mask(mat, groups[g]):
            raise ContractError("internal: packed group failed revalidation")
        bases.append(tuple(b.bit_length() for b in _bits(groups[g])))
    return bases, None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def _packing_witness(mat: TruncationMatroid) -> PackingWitness:
    r, m, n = mat.r, mat.pattern.m, mat.n
    full = (1 << n) - 1
    for k in range(n + 1):
        for cols in combinations(range(n), k):
            jmask = 0
            for j in cols:
                jmask |= 1 << j
            bound = r * (m - r) - r * mat.fhat_mask(full ^ jmask)
            if k < bound:
                return PackingWitness(tuple(j + 1 for j in cols), k, bound)
    raise ContractError("internal: packing failed but no witness found")


def _excess(mask: int, r: int) -> int:
    e = mask.bit_count() - r
    return e if e > 0 else 0


def partition_search(
    pattern: SupportPattern,
    r: int,
    prefer_same_phi: bool = False,
) -> PartitionCertificate | None:
    """Backtracking search for a partition into r relaxed (1,r,m) groups.

    Columns are processed in decreasing support size; group labels are broken
    by restricted growth (a column may open at most one new group, so each
    distinct partition is visited once).  A partial group is pruned unless
    every subset S of it satisfies sum of excesses over S <= #(union) - r,
    a consequence of the relaxed condition, and unless its total excess stays
    within m-r.  Surviving leaves are revalidated with the full relaxed check
    before a certificate is built.  None means the search was exhaustive and
    no partition exists.
    """
    m, n = pattern.m, pattern.n
    if r < 1 or r >= m:
        raise ContractError("need 1 <= r < m, got r=%d m=%d" % (r, m))
    if m > PARTITION_ROW_CEILING:
        raise CapacityError("m=%d exceeds the ceiling %d" % (m, PARTITION_ROW_CEILING))
    if pattern.size() != r * (m + n - r):
        warnings.warn(
            "pattern size %d differs from r(m+n-r) = %d; a partition cannot "
            "certify a base" % (pattern.size(), r * (m + n - r)),
            stacklevel=2,
        )
    quota = m - r
    order = sorted(range(n), key=lambda j: (-pattern.cols[j].bit_count(), j))
    masks = [pattern.cols[j] for j in order]
    excesses = [_excess(msk, r) for msk in masks]
    if sum(excesses) != r * quota:
        return None
    # remaining positive-excess columns from position k onward
    pos_left = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        pos_left[k] = pos_left[k + 1] + (1 if excesses[k] > 0 else 0)

    assignment = [0] * n
    group_excess = [0] * r
    # per group: (union mask, excess sum) for each subset of assigned columns
    subsets: list[list[tuple[int, int]]] = [[(0, 0)] for _ in range(r)]
    best: list[PartitionCertificate | None] = [None]

    def groups_of() -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(r)]
        for k in range(n):
            out[assignment[k]].append(order[k] + 1)
        return out

    def at_leaf() -> PartitionCertificate | None:
        for g in range(r):
            if group_excess[g] != quota:
                return None
        groups = groups_of()
        for g in groups:
            ok, _ = is_relaxed_slmf(pattern, RelaxedParams(1, r, tuple(g)))
            if not ok:
                return None
        return certificate_from_groups(pattern, r, groups)

    def search(k: int, used: int) -> PartitionCertificate | None:
        if k == n:
            if used < r:
                return None
            cert = at_leaf()
            if cert is None:
                return None
            if not prefer_same_phi or cert.same_phi:
                return cert
            if best[0] is None:
                best[0] = cert
            return None
        # every unopened group and every open group still short of quota
        # needs at least one future positive-excess column, all distinct
        need = (r - used) + sum(1 for g in range(used) if group_excess[g] < quota)
        if pos_left[k] < need:
            return None
        cmask, cexc = masks[k], excesses[k]
        limit = used + 1 if used < r else r
        for g in range(limit):
            if group_excess[g] + cexc > quota:
                continue
            snap = len(subsets[g])
            ok = True
            new_pairs = []
            for umask, esum in subsets[g]:
                nu_mask = umask | cmask
                ne_sum = esum + cexc
                if ne_sum > 0 and ne_sum > nu_mask.bit_count() - r:
                    ok = False
                    break
                new_pairs.append((nu_mask, ne_sum))
            if ok:
                subsets[g].extend(new_pairs)
                group_excess[g] += cexc
                assignment[k] = g
                got = search(k + 1, used + 1 if g == used else used)
                if got is not None:
                    return got
                group_excess[g] -= cexc
                del subsets[g][snap:]
        return None

    found = search(0, 0)
    if found is not None:
        return found
    return best[0]


def partition_r_eq_m_minus_1(pattern: SupportPattern) -> PartitionCertificate:
    """Closed-form partition for r = m-1: all supports full, n = r.

    In this regime the counting identity forces n = m-1 and every column to
    observe all m rows; the singleton groups {1},..,{r} are the certificate.
    """
    m = pattern.m
    r = m - 1
    if r < 1:
        raise ContractError("need m >= 2")
    full = (1 << m) - 1
    for j, mask in enumerate(pattern.cols, start=1):
        if mask != full:
            raise ContractError("column %d must observe all %d rows" % (j, m))
    if pattern.n != r:
        raise ContractError("need n = m-1 = %d, got n=%d" % (r, pattern.n))
    return certificate_from_groups(pattern, r, [(j,) for j in range(1, r + 1)])


def partition_r_eq_m_minus_2(pattern: SupportPattern) -> PartitionCertificate:
    """Closed-form partition for r = m-2 with all supports of size >= m-1.

    The alpha full columns become singleton groups; the remaining columns of
    size m-1 are sorted so equal supports sit consecutively and the sorted
    sequence s_1..s_{2q} (q = m-2-alpha) is folded into pairs (s_t, s_{t+q}).
    The relaxed (r,r,m) precondition bounds each support's multiplicity by q,
    so no pair repeats a support and every pair is a relaxed (1,r,m) group.
    """
    m = pattern.m
    r = m - 2
    if r < 1:
        raise ContractError("need m >= 3")
    ok, witness = is_relaxed_slmf(pattern, RelaxedParams(r, r))
    if not ok:
        raise ContractError(
            "pattern is not a relaxed (%d,%d,%d)-SLMF: %s"
            % (r, r, m, witness.as_dict()),
            witness=witness,
        )
    full = (1 << m) - 1
    full_cols, partial_cols = [], []
    for j, mask in enumerate(pattern.cols, start=1):
        if mask == full:
            full_cols.append(j)
        elif mask.bit_count() == m - 1:
            partial_cols.append(j)
        else:
            raise ContractError(
                "column %d has %d rows; need m-1 or m" % (j, mask.bit_count())
            )
    alpha = len(full_cols)
    if pattern.n != 2 * m - 4 - alpha:
        raise ContractError(
            "need n = 2m-4-alpha = %d, got n=%d" % (2 * m - 4 - alpha, pattern.n)
        )
    q = m - 2 - alpha
    partial_cols.sort(key=lambda j: (pattern.cols[j - 1], j))
    groups = [(partial_cols[t], partial_cols[t + q]) for t in range(q)]
    groups.extend((j,) for j in full_cols)
    return certificate_from_groups(pattern, r, groups)
