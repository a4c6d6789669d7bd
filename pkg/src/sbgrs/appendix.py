"""Closed-form predictions of the greedy splits, used as an oracle.

Given only the profile (n, k, a, r, delta) and lambda_{a+1}, t0, these
functions predict the S chunk sizes, the tail S chunks, the subcase of the
r-classification, and every T chunk.  ``compare_design`` checks a built
design against them.  Nothing here calls ``algorithm1``/``algorithm2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .support import CASE1, CASE2, DISJOINT, ConstructionProfile, SupportDesign, _first_reaching


def _block(k: int, length: int) -> list[int]:
    """The tbar block of the given length: k-length+1, ..., k."""
    return list(range(k - length + 1, k + 1))


def _span(lo: int, hi: int) -> set[int]:
    return set(range(lo, hi + 1))


def head_parameters(profile: ConstructionProfile) -> tuple[int, int, str]:
    """(lambda_{a+1}, t0, case) from delta alone."""
    k, a, delta = profile.k, profile.a, profile.delta
    target = sum(range(a + 1, k))
    la1 = _first_reaching(delta, target)
    t0 = sum(delta[:la1]) - target
    return la1, t0, (CASE1 if t0 >= 1 else CASE2)


def predicted_lambda1(profile: ConstructionProfile) -> int:
    la1, t0, case = head_parameters(profile)
    return la1 + profile.a - 1 if case == CASE1 else la1 + profile.a


def predicted_s_sizes(profile: ConstructionProfile) -> list[int]:
    n, a, delta = profile.n, profile.a, profile.delta
    la1, t0, case = head_parameters(profile)
    tail = list(range(a, 0, -1))
    if case == CASE1:
        tail.remove(t0)
    sizes = list(delta[:la1]) + tail
    return sizes + [0] * (n - len(sizes))


def predicted_s_tail(profile: ConstructionProfile) -> dict[int, set[int]]:
    """S_j as sets for lambda_{a+1} < j <= lambda_1."""
    a = profile.a
    la1, t0, case = head_parameters(profile)
    out = {}
    if case == CASE1:
        for l in range(1, a - t0 + 1):
            out[la1 + l] = _span(1, a - l + 1)
        for l in range(a - t0 + 1, a):
            out[la1 + l] = _span(1, a - l)
    else:
        for l in range(1, a + 1):
            out[la1 + l] = _span(1, a - l + 1)
    return out


def subcase(profile: ConstructionProfile) -> str:
    if profile.n >= profile.k * (profile.k - 1):
        return DISJOINT
    r, a = profile.r, profile.a
    la1, t0, case = head_parameters(profile)
    lam1 = predicted_lambda1(profile)
    if case == CASE1:
        if r <= la1:
            return "1.1"
        if r <= la1 + a - t0:
            return "1.2"
        if r <= lam1:
            return "1.3"
        return "1.4"
    if r <= la1:
        return "2.1"
    if r <= lam1:
        return "2.2"
    return "2.3"


def predicted_theta(profile: ConstructionProfile) -> list[int]:
    return [d - s for d, s in zip(profile.delta, predicted_s_sizes(profile))]


def predicted_T(profile: ConstructionProfile) -> list[set[int]]:
    """T_1..T_n from the per-subcase closed forms.

    The middle range lambda_{a+1} < j <= lambda_1 is given set by set; the
    columns after lambda_1 are consecutive cuts of a stated tail sequence.
    """
    n, k, a, r = profile.n, profile.k, profile.a, profile.r
    la1, t0, case = head_parameters(profile)
    lam1 = predicted_lambda1(profile)
    sc = subcase(profile)
    T: dict[int, set[int]] = {j: set() for j in range(1, la1 + 1)}

    def full(l):           # {k-l+1, ..., k}
        return _span(k - l + 1, k)

    if sc == "1.1":
        T[la1 + 1] = set()
        for l in range(2, a - t0 + 1):
            T[la1 + l] = _span(k - l + 2, k)
        for l in range(a - t0 + 1, a):
            T[la1 + l] = full(l)
        tail = list(range(k - (a - t0) + 1, k + 1)) + sum((_block(k, L) for L in range(a, k)), [])
    elif sc == "1.2":
        t1 = r - la1
        for l in range(1, t1 + 1):
            T[la1 + l] = full(l)
        for l in range(t1 + 1, a - t0 + 1):
            T[la1 + l] = full(l) - {k - l + t1 + 1}
        for l in range(a - t0 + 1, a):
            T[la1 + l] = full(l)
        tail = list(range(k - (a - t0 - t1) + 1, k + 1)) + sum((_block(k, L) for L in range(a, k)), [])
    elif sc == "1.3":
        t2 = r - la1
        for l in range(1, a - t0 + 1):
            T[la1 + l] = full(l)
        for l in range(a - t0 + 1, t2 + 1):
            T[la1 + l] = _span(k - l, k)
        for l in range(t2 + 1, a):
            T[la1 + l] = _span(k - l, k) - {k - a + t0 - l + t2}
        tail = list(range(k - 2 * a + t0 + t2 + 1, k + 1)) + sum((_block(k, L) for L in range(a + 1, k)), [])
    elif sc == "1.4":
        for l in range(1, a - t0 + 1):
            T[la1 + l] = full(l)
        for l in range(a - t0 + 1, a):
            T[la1 + l] = _span(k - l, k)
        tail = list(range(k - (a - t0), k + 1)) + sum((_block(k, L) for L in range(a + 1, k)), [])
    elif sc == "2.1":
        T[la1 + 1] = set()
        for l in range(2, a + 1):
            T[la1 + l] = _span(k - l + 2, k)
        tail = sum((_block(k, L) for L in range(a, k)), [])
    elif sc == "2.2":
        t1 = r - la1
        for l in range(1, t1 + 1):
            T[la1 + l] = full(l)
        # printed form starts at k-l+2, one element short of theta_j = l-1
        for l in range(t1 + 1, a + 1):
            T[la1 + l] = full(l) - {k - l + t1 + 1}
        # printed second block is k-a+1..k; block a is already partly used
        tail = list(range(k - a + t1 + 1, k + 1)) + sum((_block(k, L) for L in range(a + 1, k)), [])
    else:  # 2.3
        for l in range(1, a + 1):
            T[la1 + l] = full(l)
        tail = sum((_block(k, L) for L in range(a + 1, k)), [])

    # tail columns take delta_j elements each (a, or a+1 when j <= r)
    pos = 0
    for j in range(lam1 + 1, n + 1):
        size = profile.delta[j - 1]
        T[j] = set(tail[pos:pos + size])
        pos += size
    if pos != len(tail):
        raise AssertionError(f"tail of length {len(tail)} cut into {pos}")
    return [T[j] for j in range(1, n + 1)]


@dataclass
class AppendixReport:
    subcase: str
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def compare_design(design: SupportDesign) -> AppendixReport:
    """Check a built design against every closed form above."""
    prof = design.profile
    sc = subcase(prof)
    rep = AppendixReport(subcase=sc)
    if sc == DISJOINT:
        return rep
    la1, t0, case = head_parameters(prof)
    sizes = list(design.s_sizes)
    rep.checks.append(("case", prof.case == case and prof.t0 == t0))
    rep.checks.append(("lambda_{a+1}", prof.lam[prof.a + 1] == la1))
    rep.checks.append(("lambda_1", design.lambda1 == predicted_lambda1(prof) and design.lambda1 <= prof.n))
    rep.checks.append(("S-sizes", sizes == predicted_s_sizes(prof)))
    tail = predicted_s_tail(prof)
    rep.checks.append(("S-tail", all(set(design.S[j - 1]) == s for j, s in tail.items())))
    rep.checks.append(("theta", list(prof.theta) == predicted_theta(prof)))
    rep.checks.append(("theta-sum", sum(prof.theta) == prof.K))
    try:
        T = predicted_T(prof)
        t_ok = all(set(design.T[j]) == T[j] for j in range(prof.n))
    except AssertionError:
        t_ok = False
    rep.checks.append(("T-closed-form", t_ok))
    lam = prof.lam
    if case == CASE1:
        # lambda_{k-1} < ... < lambda_{t0} = lambda_{t0+1} < ... < lambda_1
        mono = all(
            (lam[j] == lam[j - 1]) if j == t0 + 1 else (lam[j] < lam[j - 1])
            for j in range(2, prof.k))
    else:
        mono = all(lam[j] < lam[j - 1] for j in range(2, prof.k))
    rep.checks.append(("lambda-monotone", mono))
    return rep
