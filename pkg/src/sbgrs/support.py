"""The k x n binary zero-pattern matrix W.

Column j of W marks the rows whose generator polynomial vanishes at the j-th
evaluation point.  For n >= k(k-1) the row supports are disjoint blocks of
k-1 consecutive columns.  Otherwise the ones are laid out by splitting the
sequences ``sbar(k)`` and ``tbar(k)`` greedily into per-column chunks
(``algorithm1`` / ``algorithm2``) so that every row has weight k-1 and every
column weight differs from the average by less than one.

All indices (rows 1..k, columns 1..n) are 1-based, as in serialized output.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Sequence

CASE1 = "Case1"
CASE2 = "Case2"
DISJOINT = "DisjointBlocks"


class ConstructionError(AssertionError):
    """An internal invariant of the construction failed (a bug, not bad input)."""


class Multiset(Counter):
    """Integer-keyed multiplicity map; ``+`` is the multiset union."""

    @property
    def size(self) -> int:
        return sum(self.values())

    def union(self, other) -> "Multiset":
        out = Multiset(self)
        out.update(other)
        return out

    @classmethod
    def from_pairs(cls, pairs) -> "Multiset":
        return cls({x: m for x, m in pairs if m})


@dataclass(frozen=True)
class ConstructionProfile:
    n: int
    k: int
    a: int
    r: int
    K: int
    m: int
    delta: tuple[int, ...]
    theta: tuple[int, ...] | None = None
    t0: int | None = None
    lam: dict[int, int] = field(default_factory=dict)
    case: str | None = None

    @property
    def floor(self) -> int:
        return self.k * (self.k - 1) // self.n

    @property
    def ceil(self) -> int:
        return self.m


def balanced_profile(n: int, k: int) -> ConstructionProfile:
    if not 2 <= k < n:
        raise ValueError(f"profile needs n > k >= 2, got n={n}, k={k}")
    a, r = divmod(k * (k - 1), n)
    delta = (a + 1,) * r + (a,) * (n - r)
    m = -(-k * (k - 1) // n)
    case = DISJOINT if n >= k * (k - 1) else None
    return ConstructionProfile(n=n, k=k, a=a, r=r, K=k * (k - 1) // 2, m=m,
                               delta=delta, case=case)


def sbar(k: int) -> list[int]:
    """1..k-1, 1..k-2, ..., 1..2, 1."""
    return [x for top in range(k - 1, 0, -1) for x in range(1, top + 1)]


def tbar(k: int) -> list[int]:
    """k, k-1..k, k-2..k, ..., 2..k."""
    return [x for low in range(k, 1, -1) for x in range(low, k + 1)]


def algorithm1(seq: Sequence[int], delta: Sequence[int]) -> tuple[list[tuple[int, ...]], int]:
    """Split ``seq`` into chunks S_1..S_n.

    Chunk j takes successive elements until it holds delta_j of them or the
    next element is already in it.  Returns the chunks (in consumption
    order) and the 1-based index of the last non-empty chunk.
    """
    n = len(delta)
    chunks: list[list[int]] = [[] for _ in range(n)]
    j = 0
    for x in seq:
        while j < n and (len(chunks[j]) >= delta[j] or x in chunks[j]):
            j += 1
        if j == n:
            raise ConstructionError("sequence does not fit the column budget")
        chunks[j].append(x)
    last = max((i + 1 for i, c in enumerate(chunks) if c), default=0)
    return [tuple(c) for c in chunks], last


def algorithm2(seq: Sequence[int], theta: Sequence[int]) -> list[tuple[int, ...]]:
    """Cut ``seq`` into consecutive chunks of sizes theta_1..theta_n."""
    if any(t < 0 for t in theta) or sum(theta) != len(seq):
        raise ConstructionError(f"theta {list(theta)} does not partition a sequence of {len(seq)}")
    out = []
    pos = 0
    for t in theta:
        chunk = tuple(seq[pos:pos + t])
        if len(set(chunk)) != len(chunk):
            raise ConstructionError(f"repeated element in chunk {chunk}")
        out.append(chunk)
        pos += t
    return out


def _first_reaching(delta: Sequence[int], target: int) -> int:
    """Smallest 1-based index whose delta prefix sum is >= target."""
    acc = 0
    for j, d in enumerate(delta, start=1):
        acc += d
        if acc >= target:
            return j
    raise ConstructionError(f"prefix sums never reach {target}")


def lambda_table(profile: ConstructionProfile, s_sizes: Sequence[int]) -> tuple[dict[int, int], int, str]:
    """Breakpoints lambda_1..lambda_{k-1}, t0 and the case tag.

    lambda_j for j >= a+1 is where the delta prefix sum first reaches
    (j + ... + (k-1)); lambda_1 is the last non-empty S chunk; the values in
    between follow from the shape of the Algorithm 1 tail.
    """
    k, a, delta = profile.k, profile.a, profile.delta
    lam: dict[int, int] = {}
    for j in range(a + 1, k):
        lam[j] = _first_reaching(delta, sum(range(j, k)))
    la1 = lam[a + 1]
    t0 = sum(delta[:la1]) - sum(range(a + 1, k))
    case = CASE1 if t0 >= 1 else CASE2
    for j in range(2, a + 1):
        if case == CASE2 or j >= t0 + 1:
            lam[j] = la1 + a - j + 1
        else:
            lam[j] = la1 + a - j
    lam[1] = max((j + 1 for j, s in enumerate(s_sizes) if s), default=0)
    return dict(sorted(lam.items())), t0, case


@dataclass(frozen=True)
class SupportDesign:
    n: int
    k: int
    profile: ConstructionProfile | None
    S: tuple[tuple[int, ...], ...] | None
    T: tuple[tuple[int, ...], ...] | None
    Y: tuple[frozenset[int], ...]
    Z: tuple[tuple[int, ...], ...]
    W: tuple[tuple[int, ...], ...]
    lambda1: int | None = None

    @property
    def s_sizes(self) -> tuple[int, ...] | None:
        return None if self.S is None else tuple(len(s) for s in self.S)

    def supports0(self) -> list[list[int]]:
        """Row supports as 0-based column indices."""
        return [[j - 1 for j in Z] for Z in self.Z]

    def to_text(self) -> str:
        return "\n".join(" ".join(map(str, row)) for row in self.W)


def design_from_rows(n: int, k: int, W: Sequence[Sequence[int]]) -> SupportDesign:
    """Wrap an arbitrary k x n 0/1 matrix (no construction metadata)."""
    W = tuple(tuple(int(b) for b in row) for row in W)
    if len(W) != k or any(len(row) != n for row in W):
        raise ValueError(f"W must be {k} x {n}")
    if any(b not in (0, 1) for row in W for b in row):
        raise ValueError("W must be 0/1")
    Z = tuple(tuple(j + 1 for j in range(n) if W[i][j]) for i in range(k))
    Y = tuple(frozenset(i + 1 for i in range(k) if W[i][j]) for j in range(n))
    return SupportDesign(n=n, k=k, profile=None, S=None, T=None, Y=Y, Z=Z, W=W)


def build_W(n: int, k: int) -> SupportDesign:
    profile = balanced_profile(n, k)
    if n >= k * (k - 1):
        rows = [[1 if (i - 1) * (k - 1) + 1 <= j <= i * (k - 1) else 0
                 for j in range(1, n + 1)] for i in range(1, k + 1)]
        d = design_from_rows(n, k, rows)
        return replace(d, profile=profile)

    S, lambda1 = algorithm1(sbar(k), profile.delta)
    sizes = [len(s) for s in S]
    theta = tuple(d - s for d, s in zip(profile.delta, sizes))
    if any(t < 0 for t in theta):
        raise ConstructionError(f"negative residual {theta}")
    T = algorithm2(tbar(k), theta)
    lam, t0, case = lambda_table(profile, sizes)
    profile = replace(profile, theta=theta, t0=t0, lam=lam, case=case)

    Y = []
    for j in range(n):
        if set(S[j]) & set(T[j]):
            raise ConstructionError(f"S_{j + 1} and T_{j + 1} overlap")
        Y.append(frozenset(S[j]) | frozenset(T[j]))
    W = tuple(tuple(1 if i in Y[j] else 0 for j in range(n)) for i in range(1, k + 1))
    Z = tuple(tuple(j + 1 for j in range(n) if W[i][j]) for i in range(k))
    return SupportDesign(n=n, k=k, profile=profile, S=tuple(S), T=tuple(T),
                         Y=tuple(Y), Z=Z, W=W, lambda1=lambda1)


@dataclass
class ClaimsReport:
    ok: bool
    checks: list[tuple[str, bool]]
    failure: str | None = None

    def __bool__(self):
        return self.ok


def verify_claims12(design: SupportDesign, profile: ConstructionProfile | None = None) -> ClaimsReport:
    """Re-check the multiset identities and the weight conditions of W.

    The multiset checks run only when S/T metadata is present; the weight
    checks always run against the matrix itself.
    """
    n, k = design.n, design.k
    profile = profile or design.profile or balanced_profile(n, k)
    checks: list[tuple[str, bool]] = []
    failure = None

    def check(name: str, ok: bool, detail: str = ""):
        nonlocal failure
        checks.append((name, ok))
        if not ok and failure is None:
            failure = f"{name}: {detail}" if detail else name

    W = design.W
    if design.S is not None and design.T is not None:
        S_target = Multiset({l: k - l for l in range(1, k)})
        T_target = Multiset({l: l - 1 for l in range(2, k + 1)})
        S_union = Multiset()
        for s in design.S:
            S_union.update(s)
        T_union = Multiset()
        for t in design.T:
            T_union.update(t)
        check("S-union", S_union == S_target, f"{dict(S_union)} != {dict(S_target)}")
        check("T-union", T_union == T_target, f"{dict(T_union)} != {dict(T_target)}")
        for j in range(n):
            s, t = design.S[j], design.T[j]
            if len(set(s)) != len(s) or len(set(t)) != len(t):
                check("chunks-are-sets", False, f"column {j + 1}")
                break
            if set(s) & set(t):
                check("S-T-disjoint", False, f"column {j + 1}")
                break
        else:
            check("S-T-disjoint", True)
        for j in range(n):
            col = frozenset(i + 1 for i in range(k) if W[i][j])
            if col != frozenset(design.S[j]) | frozenset(design.T[j]):
                check("Y-is-S-union-T", False, f"column {j + 1}")
                break
        else:
            check("Y-is-S-union-T", True)
        bad = [j + 1 for j in range(n) if len(design.Y[j]) != profile.delta[j]]
        check("column-size-delta", not bad, f"columns {bad}")

    bad_rows = [i + 1 for i in range(k) if sum(W[i]) != k - 1]
    check("row-weight", not bad_rows, f"rows {bad_rows} not of weight {k - 1}")
    lo, hi = k * (k - 1) // n, -(-k * (k - 1) // n)
    bad_cols = [j + 1 for j in range(n) if not lo <= sum(W[i][j] for i in range(k)) <= hi]
    check("column-weight", not bad_cols, f"columns {bad_cols} outside [{lo}, {hi}]")
    rows_match = all(
        tuple(j + 1 for j in range(n) if W[i][j]) == design.Z[i] for i in range(k))
    check("row-supports", rows_match, "Z does not match W")
    return ClaimsReport(ok=failure is None, checks=checks, failure=failure)
