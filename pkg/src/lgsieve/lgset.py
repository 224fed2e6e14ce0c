"""Local-global (LG) divisor systems.

An LG set is a family N of integers in {2..x} whose distinct members
have pairwise lcm exceeding x, while the members below x^c divide all
but a small fraction of the integers up to x.  The explicit family
built here consists of products p_1 > p_2 > ... > p_k > x^delta of
distinct primes with the chain conditions

    x / (p_1 ... p_i) >= p_i   for i = 1..k-1, and
    1 <= x / (p_1 ... p_k) < p_k.

All chain comparisons are exact integer comparisons
(x >= p * partial_product), never floating point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from .powers import floor_pow, largest_int_below_pow
from .primes import PrimeTable

COVERAGE_CSV_HEADER = "x,delta,cutoff,covered,exceptional,harmonic_sum,epsilon_prime"


@dataclass(frozen=True)
class LGParams:
    """Parameters: global bound x, prime-floor exponent delta, cutoff
    exponent c for "small" members, and the advisory coverage target."""

    x: int
    delta: float
    c: float = 1.0
    epsilon_target: float = 0.5

    def __post_init__(self):
        if self.x < 4:
            raise ValueError(f"x must be >= 4, got {self.x}")
        if not 0 < self.delta < self.c <= 1:
            raise ValueError(
                f"need 0 < delta < c <= 1, got delta={self.delta}, c={self.c}"
            )
        if not 0 < self.epsilon_target < 1:
            raise ValueError(f"epsilon_target out of (0,1): {self.epsilon_target}")


class LGSet:
    """Sorted member list with O(1) membership lookup."""

    def __init__(self, params: LGParams, members):
        self.params = params
        self.members = sorted(int(n) for n in members)
        self.member_set = frozenset(self.members)
        self.prime_floor = floor_pow(params.x, params.delta)

    def __len__(self):
        return len(self.members)

    def __contains__(self, n):
        return n in self.member_set

    def __eq__(self, other):
        if not isinstance(other, LGSet):
            return NotImplemented
        sp, op = self.params, other.params
        return (sp.x, sp.delta, sp.c) == (op.x, op.delta, op.c) and (
            self.members == other.members
        )


@dataclass
class CoverageReport:
    x: int
    delta: float
    cutoff_exponent: float
    covered_count: int
    exceptional_count: int
    harmonic_sum: float
    epsilon_prime: float
    members_below_cutoff: int

    def csv_row(self) -> str:
        return (
            f"{self.x},{self.delta!r},{self.cutoff_exponent!r},"
            f"{self.covered_count},{self.exceptional_count},"
            f"{self.harmonic_sum!r},{self.epsilon_prime!r}"
        )


@dataclass
class PairwiseLcmReport:
    pair_count: int
    violations: list  # (n1, n2, lcm) triples with lcm <= x

    @property
    def ok(self) -> bool:
        return not self.violations


def construct(params: LGParams, table: PrimeTable) -> LGSet:
    """Enumerate all members by depth-first search over strictly
    decreasing prime chains.

    A node (product P ending in prime p) is terminal when x < p*P, in
    which case P is emitted; otherwise x >= p*P is exactly the chain
    condition that allows appending any smaller prime above the floor.
    The two cases are exclusive, so each member is emitted once.
    """
    x = params.x
    if table.limit < x:
        raise ValueError(f"table limit {table.limit} < x = {x}")
    pmin = floor_pow(x, params.delta)
    ps = [int(p) for p in table.primes if pmin < p <= x]
    members: list[int] = []

    def extend(prod: int, idx: int) -> None:
        p = ps[idx]
        if prod * p > x:
            members.append(prod)
            return
        for j in range(idx - 1, -1, -1):
            # prod * ps[j] < prod * p <= x, so no overflow past x here
            extend(prod * ps[j], j)

    for i in range(len(ps) - 1, -1, -1):
        extend(ps[i], i)
    return LGSet(params, members)


def _walk_divisor(m: int, x: int, pmin: int, spf: np.ndarray):
    """Prefix walk over m's distinct primes > pmin in decreasing order.

    Any member dividing m must consist of m's consecutive largest
    primes, so walking prefixes until the terminal condition fires
    finds the unique candidate.
    """
    pr = []
    n = m
    while n > 1:
        p = int(spf[n])
        if p > pmin:
            pr.append(p)
        while n % p == 0:
            n //= p
    prod = 1
    for q in reversed(pr):  # descending
        prod *= q
        if prod > x:
            return None
        if q * prod > x:
            return prod
    return None


def find_divisor(m: int, lgset: LGSet, table: PrimeTable, max_member: int | None = None):
    """The unique member of N dividing m, or None.

    ``max_member`` restricts the search to members <= max_member (used
    for cutoff-limited coverage).
    """
    x = lgset.params.x
    if not 1 <= m <= x:
        raise ValueError(f"m={m} outside [1, {x}]")
    d = _walk_divisor(m, x, lgset.prime_floor, table.smallest_factor)
    if d is None or d not in lgset.member_set:
        return None
    if max_member is not None and d > max_member:
        return None
    return d


def verify_pairwise_lcm(lgset: LGSet) -> PairwiseLcmReport:
    """Check lcm(n1, n2) > x for every distinct pair of members.

    Equivalent multiple-count formulation: a violating pair divides a
    common m <= x (namely its lcm), so it suffices to find integers
    m <= x with two or more member divisors.
    """
    x = lgset.params.x
    members = lgset.members
    n = len(members)
    pair_count = n * (n - 1) // 2
    counts = np.zeros(x + 1, dtype=np.int32)
    for q in members:
        if q <= x:
            counts[q::q] += 1
    violations = []
    seen = set()
    for m in np.flatnonzero(counts >= 2):
        m = int(m)
        divs = [q for q in members if m % q == 0]
        for a, b in combinations(divs, 2):
            l = math.lcm(a, b)
            if l <= x and (a, b) not in seen:
                seen.add((a, b))
                violations.append((a, b, l))
    return PairwiseLcmReport(pair_count, violations)


def coverage(lgset: LGSet, cutoff_exponent: float, table: PrimeTable) -> CoverageReport:
    """Exhaustive scan of m = 1..x, classifying each by its unique
    divisor among the members below x^cutoff."""
    params = lgset.params
    x = params.x
    if not params.delta < cutoff_exponent <= 1:
        raise ValueError(
            f"cutoff {cutoff_exponent} outside ({params.delta}, 1]"
        )
    bound = largest_int_below_pow(x, cutoff_exponent)
    small = [q for q in lgset.members if q <= bound]
    pmin = lgset.prime_floor
    spf = table.smallest_factor
    member_set = lgset.member_set
    covered = 0
    for m in range(1, x + 1):
        d = _walk_divisor(m, x, pmin, spf)
        if d is not None and d <= bound and d in member_set:
            covered += 1
    harmonic = math.fsum(1.0 / q for q in small)
    report = CoverageReport(
        x=x,
        delta=params.delta,
        cutoff_exponent=cutoff_exponent,
        covered_count=covered,
        exceptional_count=x - covered,
        harmonic_sum=harmonic,
        epsilon_prime=1.0 - harmonic,
        members_below_cutoff=len(small),
    )
    # accounting invariants; a failure here is an implementation bug
    assert report.covered_count + report.exceptional_count == x
    assert abs(harmonic - covered / x) <= len(small) / x + 1.0 / x
    return report


def choose_cutoff(lgset: LGSet, epsilon: float) -> float:
    """Smallest c on the 0.01 grid in (delta, 1] whose tail harmonic
    sum over members >= x^c stays below epsilon/2."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon out of (0,1): {epsilon}")
    params = lgset.params
    x = params.x
    recips = [(q, 1.0 / q) for q in lgset.members]
    start = int(math.floor(params.delta * 100)) + 1
    for k in range(start, 101):
        c = k / 100.0
        if c <= params.delta:
            continue
        bound = largest_int_below_pow(x, c)
        tail = math.fsum(r for q, r in recips if q > bound)
        if tail < epsilon / 2.0:
            return c
    return 1.0


def with_cutoff(lgset: LGSet, c: float) -> LGSet:
    """Same member list under params with cutoff exponent c."""
    out = LGSet.__new__(LGSet)
    out.params = replace(lgset.params, c=c)
    out.members = lgset.members
    out.member_set = lgset.member_set
    out.prime_floor = lgset.prime_floor
    return out


def to_json_dict(lgset: LGSet) -> dict:
    p = lgset.params
    return {"x": p.x, "delta": p.delta, "c": p.c, "members": lgset.members}


def save_json(lgset: LGSet, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(lgset), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_json(path) -> LGSet:
    with open(path) as fh:
        doc = json.load(fh)
    params = LGParams(x=doc["x"], delta=doc["delta"], c=doc["c"])
    return LGSet(params, doc["members"])
