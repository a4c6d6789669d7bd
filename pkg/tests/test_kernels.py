import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbgrs import _pykernels, kernels
from sbgrs.field import make_field

FIELDS = [(2, 1), (3, 1), (2, 2), (7, 1), (2, 4), (3, 2), (5, 2)]


def leibniz_det(gf, M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = gf.mul(term, M[i][perm[i]])
        total = gf.sub(total, term) if inversions % 2 else gf.add(total, term)
    return total


def naive_min_weight(gf, G):
    k, n = len(G), len(G[0])
    best = n + 1
    for msg in product(range(gf.q), repeat=k):
        if any(msg):
            cw = [gf.sum(gf.mul(msg[i], G[i][j]) for i in range(k)) for j in range(n)]
            best = min(best, sum(1 for c in cw if c))
    return best


def rand_matrix(gf, rng, rows, cols, zero_bias=0.3):
    return [[0 if rng.random() < zero_bias else rng.randrange(gf.q) for _ in range(cols)]
            for _ in range(rows)]


@pytest.mark.parametrize("p,m", FIELDS)
def test_det_matches_leibniz(backend, p, m):
    gf = make_field(p, m)
    rng = random.Random(p * 100 + m)
    for size in range(1, 6):
        for _ in range(15):
            M = rand_matrix(gf, rng, size, size)
            assert kernels.det(gf, M) == leibniz_det(gf, M)


def test_det_empty_and_singular(backend):
    gf = make_field(5)
    assert kernels.det(gf, []) == 1
    assert kernels.det(gf, [[1, 2], [2, 4]]) == 0


@pytest.mark.parametrize("p,m", FIELDS)
def test_rank_against_det(backend, p, m):
    gf = make_field(p, m)
    rng = random.Random(7)
    for _ in range(30):
        M = rand_matrix(gf, rng, 3, 3, 0.5)
        r = kernels.rank(gf, M)
        assert (r == 3) == (leibniz_det(gf, M) != 0)
    assert kernels.rank(gf, [[0, 0, 0], [0, 0, 0]]) == 0
    assert kernels.rank(gf, [[1, 1, 1], [1, 1, 1]]) == 1


@pytest.mark.parametrize("p,m", [(2, 2), (3, 1), (5, 1), (2, 3)])
def test_min_weight_matches_naive(backend, p, m):
    gf = make_field(p, m)
    rng = random.Random(11)
    for _ in range(8):
        k = rng.randint(1, 3)
        G = rand_matrix(gf, rng, k, rng.randint(k, 6))
        assert kernels.min_weight(gf, G) == naive_min_weight(gf, G)


def test_elem_sym_and_encode(backend):
    gf = make_field(7)
    assert kernels.elem_sym(gf, [2, 3]) == [1, 5, 6]
    assert kernels.elem_sym(gf, []) == [1]
    G = [[1, 2, 3], [0, 1, 4]]
    assert kernels.encode_batch(gf, G, [[0, 0], [1, 0], [2, 1]]) == [[0, 0, 0], [1, 2, 3], [2, 5, 3]]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(0, 2 ** 32))
def test_backends_agree(pm, size, seed):
    if not kernels.HAVE_COMPILED:
        pytest.skip("compiled kernels not built")
    gf = make_field(*pm)
    rng = random.Random(seed)
    M = rand_matrix(gf, rng, size, size + 2)
    sq = [row[:size] for row in M]
    combos = [tuple(sorted(rng.sample(range(size + 2), size))) for _ in range(5)]
    pts = rng.sample(range(gf.q), min(gf.q, size + 2))
    Zs = [sorted(rng.sample(range(len(pts)), rng.randint(0, len(pts)))) for _ in range(size)]
    msg = [[rng.randrange(gf.q) for _ in range(size)]]
    results = {}
    for be in ("python", "cython"):
        with kernels.backend_set(be):
            results[be] = (kernels.det(gf, sq), kernels.rank(gf, M),
                           kernels.first_singular_minor(gf, M, combos),
                           kernels.xi_value(gf, pts, Zs, size),
                           kernels.encode_batch(gf, M, msg))
    assert results["python"] == results["cython"]


def test_python_path_used_for_large_fields():
    gf = make_field(2, 17)
    assert not gf.has_tables
    M = [[3, 5], [7, 11]]
    assert kernels.det(gf, M) == _pykernels.det(gf, M) == leibniz_det(gf, M)


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def _probe(code, env=None):
    import os
    import subprocess
    import sys
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                          env=full, check=True).stdout.strip()


def test_fallback_when_extension_missing():
    code = ("import sys; sys.modules['sbgrs._ckernels'] = None\n"
            "from sbgrs import kernels\n"
            "from sbgrs.codec import construct_code, verify_mds\n"
            "b = construct_code(8, 4)\n"
            "print(kernels.backend(), kernels.HAVE_COMPILED, verify_mds(b.field, b.G).ok)")
    assert _probe(code) == "python False True"


def test_env_forces_python():
    assert _probe("from sbgrs import kernels; print(kernels.backend())",
                  {"SBGRS_BACKEND": "python"}) == "python"


def test_benchmark_script_agrees():
    if not kernels.HAVE_COMPILED:
        pytest.skip("compiled kernels not built")
    import importlib.util
    from pathlib import Path
    path = Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--repeat", "1", "--json"]) == 0
