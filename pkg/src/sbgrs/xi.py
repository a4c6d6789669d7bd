"""The determinant certificate xi and the search for evaluation points.

xi(points) is the determinant of the k x k matrix whose (l, i) entry is the
l-th elementary symmetric function of the points indexed by row support Z_i.
It is nonzero exactly when the root polynomials prod_{j in Z_i}(x - a_j) are
linearly independent, so a tuple with xi != 0 certifies the construction.
"""

from __future__ import annotations

import logging
import math
import random
import warnings
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from . import kernels
from .field import GF
from .support import Multiset, SupportDesign

log = logging.getLogger(__name__)

RANDOMIZED = "randomized"
GREEDY = "greedy"
EXHAUSTIVE = "exhaustive"
DIRECT = "direct"
STRATEGIES = (RANDOMIZED, GREEDY, EXHAUSTIVE)

EXHAUSTIVE_WORK_BOUND = 10 ** 7
DEFAULT_MAX_ATTEMPTS = 50_000
DEFAULT_PROBES = 32
CLAIM3_MAX_K = 7


class AttemptsExhausted(RuntimeError):
    pass


class BoundViolated(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Certificate:
    xi: int
    strategy: str
    seed: int
    attempts: int

    def to_json(self) -> dict:
        return {"xi": self.xi, "strategy": self.strategy, "seed": self.seed,
                "attempts": self.attempts}

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        return cls(int(obj["xi"]), str(obj["strategy"]), int(obj["seed"]), int(obj["attempts"]))


def elem_sym(gf: GF, values: Sequence[int]) -> list[int]:
    """[s^(0), ..., s^(len)] via the product recurrence for prod(x + v)."""
    return kernels.elem_sym(gf, list(values))


def _supports(design) -> list[list[int]]:
    if isinstance(design, SupportDesign):
        return design.supports0()
    return [list(Z) for Z in design]


def xi_matrix(gf: GF, design, points: Sequence[int]) -> list[list[int]]:
    Zs = _supports(design)
    k = len(Zs)
    cols = [(elem_sym(gf, [points[j] for j in Z]) + [0] * k)[:k] for Z in Zs]
    return [[cols[i][l] for i in range(k)] for l in range(k)]


def xi_eval(gf: GF, design, points: Sequence[int]) -> int:
    """xi at concrete points.  ``design`` is a SupportDesign or 0-based supports."""
    Zs = _supports(design)
    return kernels.xi_value(gf, list(points), Zs, len(Zs))


def check_bound(gf: GF, design: SupportDesign, unsafe_bound: bool = False) -> None:
    """Reject fields too small for distinct points; q < n + m needs ``unsafe_bound``."""
    n, k = design.n, design.k
    m = -(-k * (k - 1) // n)
    if gf.q < n:
        raise BoundViolated(f"q={gf.q} < n={n}: no {n} distinct points exist")
    if gf.q < n + m:
        msg = f"q={gf.q} is below the sufficient bound n + ceil(k(k-1)/n) = {n + m}"
        if not unsafe_bound:
            raise BoundViolated(msg)
        warnings.warn(msg + "; proceeding without existence guarantee", stacklevel=3)


def find_points(gf: GF, design: SupportDesign, strategy: str = RANDOMIZED, seed: int = 0,
                max_attempts: int = DEFAULT_MAX_ATTEMPTS, unsafe_bound: bool = False,
                fallback: bool = True, probes: int = DEFAULT_PROBES) -> tuple[list[int], Certificate]:
    """Distinct points with xi != 0, deterministic in (strategy, seed).

    ``randomized`` draws seeded injective tuples and, with ``fallback``,
    hands over to ``greedy`` after ``max_attempts`` misses.  ``exhaustive``
    walks all injective tuples in lexicographic order and is only allowed
    when there are at most 10**7 of them.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    check_bound(gf, design, unsafe_bound)
    Zs = design.supports0()
    if strategy == EXHAUSTIVE:
        return _exhaustive(gf, design, Zs, seed)
    if strategy == RANDOMIZED:
        try:
            return _randomized(gf, design, Zs, seed, max_attempts)
        except AttemptsExhausted:
            if not fallback:
                raise
            log.info("randomized search exhausted; falling back to greedy probing")
    return _greedy(gf, design, Zs, seed, max_attempts, probes)


def _exhaustive(gf, design, Zs, seed):
    n, k, q = design.n, design.k, gf.q
    work = math.perm(q, n)
    if work > EXHAUSTIVE_WORK_BOUND:
        raise BudgetExceeded(f"{work} injective tuples exceed the exhaustive bound {EXHAUSTIVE_WORK_BOUND}")
    for attempts, pts in enumerate(permutations(range(q), n), start=1):
        xi = kernels.xi_value(gf, pts, Zs, k)
        if xi:
            return list(pts), Certificate(xi, EXHAUSTIVE, seed, attempts)
    raise AttemptsExhausted(f"no tuple with xi != 0 among all {work}")


def _randomized(gf, design, Zs, seed, max_attempts):
    n, k = design.n, design.k
    rng = random.Random(seed)
    pool = range(gf.q)
    for attempts in range(1, max_attempts + 1):
        pts = rng.sample(pool, n)
        xi = kernels.xi_value(gf, pts, Zs, k)
        if xi:
            return pts, Certificate(xi, RANDOMIZED, seed, attempts)
    raise AttemptsExhausted(f"randomized search failed after {max_attempts} attempts")


def _greedy(gf, design, Zs, seed, max_attempts, probes):
    """Fix a_1, a_2, ... in turn, keeping a value once some random
    completion of the prefix gives xi != 0."""
    n, k, q = design.n, design.k, gf.q
    rng = random.Random(f"greedy:{seed}")
    prefix: list[int] = []
    attempts = 0
    for i in range(n):
        used = set(prefix)
        candidates = [v for v in range(q) if v not in used]
        rng.shuffle(candidates)
        accepted = None
        for v in candidates:
            rest = [u for u in candidates if u != v]
            for _ in range(probes if i < n - 1 else 1):
                pts = prefix + [v] + rng.sample(rest, n - i - 1)
                attempts += 1
                xi = kernels.xi_value(gf, pts, Zs, k)
                if xi:
                    accepted = (v, pts, xi)
                    break
                if attempts >= max_attempts:
                    raise AttemptsExhausted(f"greedy probing failed after {attempts} attempts")
            if accepted:
                break
        if accepted is None:
            raise AttemptsExhausted(f"no value for position {i + 1} admits a good completion")
        prefix.append(accepted[0])
    pts = prefix
    xi = accepted[2]
    return pts, Certificate(xi, GREEDY, seed, attempts)


def coordinate_sweep_zeros(gf: GF, design: SupportDesign, points: Sequence[int], j: int) -> int:
    """Number of field values v with xi(points with a_j := v) == 0."""
    Zs = design.supports0()
    pts = list(points)
    zeros = 0
    for v in range(gf.q):
        pts[j] = v
        if kernels.xi_value(gf, pts, Zs, design.k) == 0:
            zeros += 1
    return zeros


# --- unique leading monomial ------------------------------------------------

@dataclass
class UniquenessReport:
    count: int
    sigma: tuple[int, ...] | None
    X: tuple[frozenset[int], ...] | None
    sigma_is_reversal: bool
    X_matches_lambda: bool
    target: dict[int, int]

    @property
    def ok(self) -> bool:
        return self.count == 1 and self.sigma_is_reversal and self.X_matches_lambda


def claim3_oracle(design: SupportDesign, max_k: int = CLAIM3_MAX_K) -> UniquenessReport:
    """Count all ways to write X* = {(j, |S_j|)} as X_1 + ... + X_k.

    Each X_i is a subset of row support Z_i of size sigma(i) - 1 for some
    permutation sigma.  Rows are assigned sizes one at a time; a partial
    assignment is cut as soon as a column's remaining multiplicity exceeds
    the number of later rows that could still cover it.
    """
    k, n = design.k, design.n
    if k > max_k:
        raise BudgetExceeded(f"k={k} exceeds the enumeration budget k <= {max_k}")
    if design.S is None or design.lambda1 is None:
        raise ValueError("design has no Algorithm-1 metadata (disjoint-block or external W)")
    sizes = design.s_sizes
    target = Multiset.from_pairs((j + 1, sizes[j]) for j in range(design.lambda1))
    remaining = [target.get(j + 1, 0) for j in range(n)]
    Zs = design.supports0()
    # cover[i][j]: rows i..k-1 whose support contains column j
    cover = [[0] * n for _ in range(k + 1)]
    for i in range(k - 1, -1, -1):
        cover[i] = list(cover[i + 1])
        for j in Zs[i]:
            cover[i][j] += 1

    free = set(range(k))
    chosen: list[tuple[int, tuple[int, ...]]] = []
    found: list[tuple[tuple[int, ...], tuple[frozenset[int], ...]]] = []

    def subsets(pool, size, start=0, acc=()):
        if len(acc) == size:
            yield acc
            return
        for t in range(start, len(pool) - (size - len(acc)) + 1):
            yield from subsets(pool, size, t + 1, acc + (pool[t],))

    def rec(i):
        if i == k:
            if not any(remaining):
                found.append((tuple(s + 1 for s, _ in chosen),
                              tuple(frozenset(j + 1 for j in X) for _, X in chosen)))
            return
        avail = [j for j in Zs[i] if remaining[j] > 0]
        for s in sorted(free):
            if s > len(avail):
                continue
            free.discard(s)
            for X in subsets(avail, s):
                for j in X:
                    remaining[j] -= 1
                if all(remaining[j] <= cover[i + 1][j] for j in range(n)):
                    chosen.append((s, X))
                    rec(i + 1)
                    chosen.pop()
                for j in X:
                    remaining[j] += 1
            free.add(s)

    rec(0)
    sigma = X = None
    reversal = lam_match = False
    if found:
        sigma, X = found[0]
        reversal = all(sigma[i] == k - i for i in range(k))
        lam = design.profile.lam
        lam_match = X[k - 1] == frozenset() and all(
            X[i] == frozenset(j for j in design.Z[i] if j <= lam[i + 1]) for i in range(k - 1))
    return UniquenessReport(count=len(found), sigma=sigma, X=X, sigma_is_reversal=reversal,
                            X_matches_lambda=lam_match, target=dict(target))
