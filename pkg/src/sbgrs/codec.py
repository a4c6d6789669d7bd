"""GRS codes with a sparsest and balanced generator matrix.

Row i of G is the evaluation of f_i(x) = prod_{j in Z_i} (x - a_j) at the
points, so G[i][j] == 0 exactly where W[i][j] == 1.
"""

from __future__ import annotations

import json
import math
import random
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import kernels
from .field import GF, field_of_size, smallest_field_geq
from .support import SupportDesign, build_W, design_from_rows, verify_claims12
from .xi import (DEFAULT_MAX_ATTEMPTS, DIRECT, RANDOMIZED, BoundViolated, BudgetExceeded,
                 Certificate, elem_sym, find_points, xi_eval)

MDS_EXHAUSTIVE_LIMIT = 10 ** 6
MDS_SAMPLES = 10 ** 4
MIN_DISTANCE_LIMIT = 10 ** 6


def degree_bound(n: int, k: int) -> int:
    return -(-k * (k - 1) // n)


def default_field(n: int, k: int) -> GF:
    return smallest_field_geq(n + degree_bound(n, k))


# --- polynomials -------------------------------------------------------------

@dataclass(frozen=True)
class RootPolynomial:
    coeffs: tuple[int, ...]          # low degree first
    root_support: tuple[int, ...]    # 1-based columns

    def __call__(self, gf: GF, x: int) -> int:
        return horner(gf, self.coeffs, x)


def horner(gf: GF, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = gf.add(gf.mul(acc, x), c)
    return acc


def root_polys(gf: GF, points: Sequence[int], design: SupportDesign) -> list[RootPolynomial]:
    """Expand prod_{j in Z_i}(x - a_j); coefficient of x^{d-l} is (-1)^l s^(l)."""
    out = []
    for Z in design.Z:
        s = elem_sym(gf, [points[j - 1] for j in Z])
        d = len(Z)
        coeffs = [0] * (d + 1)
        for l, sl in enumerate(s):
            coeffs[d - l] = gf.neg(sl) if l % 2 else sl
        out.append(RootPolynomial(tuple(coeffs), tuple(Z)))
    return out


def generator_matrix(gf: GF, polys: Sequence[RootPolynomial], points: Sequence[int]) -> list[list[int]]:
    return [[p(gf, a) for a in points] for p in polys]


# --- bundle ------------------------------------------------------------------

@dataclass
class CodeBundle:
    field: GF
    n: int
    k: int
    points: list[int]
    design: SupportDesign
    polys: list[RootPolynomial]
    G: list[list[int]]
    certificate: Certificate

    @property
    def W(self):
        return self.design.W

    def row_weights(self) -> list[int]:
        return [sum(1 for g in row if g) for row in self.G]

    def col_weights(self) -> list[int]:
        return [sum(1 for row in self.G if row[j]) for j in range(self.n)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "field": self.field.to_json(),
            "points": list(self.points),
            "W": [list(row) for row in self.W],
            "G": [list(row) for row in self.G],
            "certificate": self.certificate.to_json(),
            "row_weights": self.row_weights(),
            "col_weights": self.col_weights(),
        }

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "json":
            return dump_json(self.to_json())
        if fmt == "text":
            return to_text(self)
        raise ValueError(f"unknown format {fmt!r}")


def dump_json(obj: dict) -> str:
    """Top-level keys one per line, matrix rows one per line."""
    def fmt(v):
        if isinstance(v, list) and v and isinstance(v[0], list):
            rows = ",\n".join("    " + json.dumps(r) for r in v)
            return "[\n" + rows + "\n  ]"
        return json.dumps(v)
    body = ",\n".join(f"  {json.dumps(key)}: {fmt(v)}" for key, v in obj.items())
    return "{\n" + body + "\n}\n"


class BundleFormatError(ValueError):
    pass


def _design_for(n: int, k: int, W) -> SupportDesign:
    """Rebuild construction metadata when W is the constructed matrix."""
    if 2 <= k < n:
        built = build_W(n, k)
        if [list(r) for r in built.W] == [list(r) for r in W]:
            return built
    return design_from_rows(n, k, W)


def bundle_from_json(obj: dict) -> CodeBundle:
    try:
        n, k = int(obj["n"]), int(obj["k"])
        gf = GF.from_json(obj["field"])
        points = [gf.check(int(x)) for x in obj["points"]]
        W = [[int(b) for b in row] for row in obj["W"]]
        G = [[gf.check(int(x)) for x in row] for row in obj["G"]]
        cert = Certificate.from_json(obj["certificate"]) if "certificate" in obj else None
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleFormatError(f"malformed bundle: {exc}") from exc
    return _assemble(gf, n, k, points, W, G, cert)


def _assemble(gf, n, k, points, W, G, cert) -> CodeBundle:
    if len(points) != n or len(G) != k or any(len(r) != n for r in G):
        raise BundleFormatError(f"shapes do not match n={n}, k={k}")
    try:
        design = _design_for(n, k, W)
    except ValueError as exc:
        raise BundleFormatError(str(exc)) from exc
    polys = _polys_for(gf, n, k, points, design)
    if cert is None:
        cert = Certificate(xi_eval(gf, design, points), DIRECT, 0, 0)
    return CodeBundle(gf, n, k, points, design, polys, G, cert)


def _polys_for(gf, n, k, points, design):
    if k == n and len(set(points)) == n:
        return lagrange_basis(gf, points)
    return root_polys(gf, points, design)


def to_text(bundle: CodeBundle) -> str:
    lines = [f"{bundle.n} {bundle.k} {bundle.field.q}"]
    lines += [" ".join(map(str, row)) for row in bundle.W]
    lines.append("")
    lines.append(" ".join(map(str, bundle.points)))
    lines.append("")
    lines += [" ".join(map(str, row)) for row in bundle.G]
    return "\n".join(lines) + "\n"


def bundle_from_text(text: str) -> CodeBundle:
    """Parse the text layout; the field is the default GF(q) representation."""
    try:
        blocks = [b for b in text.strip("\n").split("\n\n")]
        head, *wrows = blocks[0].splitlines()
        n, k, q = map(int, head.split())
        gf = field_of_size(q)
        W = [[int(b) for b in row.split()] for row in wrows]
        points = [gf.check(int(x)) for x in blocks[1].split()]
        G = [[gf.check(int(x)) for x in row.split()] for row in blocks[2].splitlines()]
    except (IndexError, ValueError) as exc:
        raise BundleFormatError(f"malformed text bundle: {exc}") from exc
    return _assemble(gf, n, k, points, W, G, None)


def loads(text: str) -> CodeBundle:
    """JSON or text, detected by the first non-blank character."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BundleFormatError(f"invalid JSON: {exc}") from exc
        return bundle_from_json(obj)
    return bundle_from_text(text)


# --- checks ------------------------------------------------------------------

def det_identity_check(bundle: CodeBundle) -> bool:
    """xi(points) == (-1)^{k(k-1)/2} det(C), C[l][i] = (-1)^l s^(l)_{Z_i}."""
    gf, k = bundle.field, bundle.k
    C = [[0] * k for _ in range(k)]
    for i, Z in enumerate(bundle.design.Z):
        s = (elem_sym(gf, [bundle.points[j - 1] for j in Z]) + [0] * k)[:k]
        for l in range(k):
            C[l][i] = gf.neg(s[l]) if l % 2 else s[l]
    d = kernels.det(gf, C)
    if (k * (k - 1) // 2) % 2:
        d = gf.neg(d)
    return xi_eval(gf, bundle.design, bundle.points) == d


@dataclass
class SbgmReport:
    ok: bool
    bad_rows: list[int] = field(default_factory=list)
    bad_cols: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_sbgm(G: Sequence[Sequence[int]], n: int, k: int) -> SbgmReport:
    """Rows of weight n-k+1; column weights within one of k(n-k+1)/n."""
    lo, hi = k * (n - k + 1) // n, -(-k * (n - k + 1) // n)
    bad_rows = [i + 1 for i, row in enumerate(G) if sum(1 for g in row if g) != n - k + 1]
    bad_cols = [j + 1 for j in range(n) if not lo <= sum(1 for row in G if row[j]) <= hi]
    return SbgmReport(not bad_rows and not bad_cols, bad_rows, bad_cols)


@dataclass
class MdsReport:
    ok: bool
    exhaustive: bool
    checked: int
    singular: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def verify_mds(gf: GF, G: Sequence[Sequence[int]], seed: int = 0,
               limit: int = MDS_EXHAUSTIVE_LIMIT, samples: int = MDS_SAMPLES) -> MdsReport:
    """Every k-column minor invertible; sampled when C(n, k) exceeds ``limit``."""
    k, n = len(G), len(G[0])
    total = math.comb(n, k)
    if total <= limit:
        combos = list(combinations(range(n), k))
        exhaustive = True
    else:
        rng = random.Random(seed)
        combos = [tuple(sorted(rng.sample(range(n), k))) for _ in range(samples)]
        exhaustive = False
    idx = kernels.first_singular_minor(gf, [list(r) for r in G], combos)
    if idx >= 0:
        return MdsReport(False, exhaustive, idx + 1, tuple(c + 1 for c in combos[idx]))
    return MdsReport(True, exhaustive, len(combos))


def rank(gf: GF, G) -> int:
    return kernels.rank(gf, [list(r) for r in G])


def zero_pattern_matches(bundle: CodeBundle) -> bool:
    return all((bundle.G[i][j] == 0) == bool(bundle.W[i][j])
               for i in range(bundle.k) for j in range(bundle.n))


def encode(bundle: CodeBundle, message: Sequence[int]) -> list[int]:
    """message . G"""
    if len(message) != bundle.k:
        raise ValueError(f"message length {len(message)} != k = {bundle.k}")
    msg = [bundle.field.check(int(m)) for m in message]
    return kernels.encode_batch(bundle.field, bundle.G, [msg])[0]


def min_distance_bruteforce(bundle: CodeBundle, limit: int = MIN_DISTANCE_LIMIT) -> int:
    gf = bundle.field
    if gf.q ** bundle.k > limit:
        raise BudgetExceeded(f"q^k = {gf.q}^{bundle.k} exceeds {limit}")
    return kernels.min_weight(gf, bundle.G)


def lagrange_interpolate(gf: GF, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Coefficients (low first) of the unique polynomial of degree < len(xs)."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        basis = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            # basis *= (x - xs[j])
            nxt = [0] * (len(basis) + 1)
            for t, c in enumerate(basis):
                nxt[t + 1] = gf.add(nxt[t + 1], c)
                nxt[t] = gf.sub(nxt[t], gf.mul(c, xs[j]))
            basis = nxt
            denom = gf.mul(denom, gf.sub(xs[i], xs[j]))
        scale = gf.div(ys[i], denom)
        for t, c in enumerate(basis):
            out[t] = gf.add(out[t], gf.mul(scale, c))
    return out


def lagrange_basis(gf: GF, points: Sequence[int]) -> list[RootPolynomial]:
    n = len(points)
    out = []
    for i in range(n):
        ys = [1 if j == i else 0 for j in range(n)]
        coeffs = lagrange_interpolate(gf, points, ys)
        out.append(RootPolynomial(tuple(coeffs), tuple(j + 1 for j in range(n) if j != i)))
    return out


# --- construction ------------------------------------------------------------

def _resolve_field(n: int, k: int, q) -> GF:
    if q is None:
        return default_field(n, k)
    if isinstance(q, GF):
        return q
    return field_of_size(int(q))


def construct_code(n: int, k: int, q=None, seed: int = 0, strategy: str = RANDOMIZED,
                   unsafe_bound: bool = False, max_attempts: int = DEFAULT_MAX_ATTEMPTS,
                   check: bool = True) -> CodeBundle:
    """Build an [n, k] GRS code whose generator matrix is an SBGM.

    ``q`` may be None (smallest prime power >= n + ceil(k(k-1)/n)), an int,
    or a GF.  Fields below that bound need ``unsafe_bound``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}" + (" (k exceeds n)" if k > n else ""))
    gf = _resolve_field(n, k, q)
    if gf.q < n:
        raise BoundViolated(f"q={gf.q} < n={n}: no {n} distinct points exist")
    bound = n + degree_bound(n, k)
    if gf.q < bound:
        msg = f"q={gf.q} is below the sufficient bound {bound}"
        if not unsafe_bound:
            raise BoundViolated(msg)
        warnings.warn(msg, stacklevel=2)

    if k == 1 or k == n:
        points = list(range(n))
        if k == 1:
            design = design_from_rows(n, 1, [[0] * n])
            polys = [RootPolynomial((1,), ())]
            G = [[1] * n]
        else:
            design = design_from_rows(n, n, [[0 if i == j else 1 for j in range(n)] for i in range(n)])
            polys = lagrange_basis(gf, points)
            G = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        cert = Certificate(xi_eval(gf, design, points), DIRECT, seed, 1)
        return CodeBundle(gf, n, k, points, design, polys, G, cert)

    design = build_W(n, k)
    points, cert = find_points(gf, design, strategy=strategy, seed=seed,
                               max_attempts=max_attempts, unsafe_bound=unsafe_bound)
    polys = root_polys(gf, points, design)
    G = generator_matrix(gf, polys, points)
    bundle = CodeBundle(gf, n, k, points, design, polys, G, cert)
    if check:
        claims = verify_claims12(design)
        if not claims:
            raise AssertionError(f"support design check failed: {claims.failure}")
        sbgm = verify_sbgm(G, n, k)
        if not sbgm:
            raise AssertionError(f"SBGM check failed: rows {sbgm.bad_rows}, cols {sbgm.bad_cols}")
        if not det_identity_check(bundle):
            raise AssertionError("xi / det(C) identity failed")
    return bundle
