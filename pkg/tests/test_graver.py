import random
from collections import Counter
from math import comb

import pytest

from gen import desk_multisets
from toricdual import kernels
from toricdual.errors import EnumerationInfeasible, NotPointedError
from toricdual.exactla import IntMat, canonical
from toricdual.graver import (
    circuits,
    conformal_leq,
    fibre_lifts,
    graver,
    graver_completion,
    graver_via_bouquet,
    is_conformal_sum,
    is_semiconformal_sum,
    is_strongly_semiconformal_sum,
    multiset_graver,
    multiset_graver_count,
    weak_compositions,
)
from toricdual.multiset import MultisetConfig
from toricdual.oracle import graver_box

GR4567 = [
    (5, -4, 0, 0), (1, -2, 1, 0), (2, -3, 0, 1), (4, -2, -1, 0), (3, -1, 0, -1),
    (1, -1, -1, 1), (2, 1, -1, -1), (1, 2, 0, -2), (3, 0, -2, 0), (2, 0, 1, -2), (5, 0, -1, -2),
    (4, 1, 0, -3), (7, 0, 0, -4), (0, 1, -2, 1), (2, 2, -3, 0), (1, 0, -3, 2), (1, 3, -2, -1),
    (1, 1, 2, -3), (0, 4, -1, -2), (0, 3, 1, -3), (1, 4, -4, 0), (1, 0, 4, -4), (1, -5, 0, 3),
    (0, 5, -3, -1), (0, 2, 3, -4), (0, 6, -5, 0), (0, 1, 5, -5), (0, 7, 0, -5), (0, 0, 7, -6),
]


def test_small_graver():
    assert graver_completion(IntMat.from_rows([[2, 3]])) == [(3, -2)]
    assert graver_completion(IntMat.identity(2)) == []


def test_graver_4567_golden(a4567):
    G = graver_completion(a4567)
    assert len(G) == 29
    assert set(G) == {canonical(u) for u in GR4567}


def test_graver_4567_against_box(a4567):
    # every listed entry is at most 7 in size, so the box of radius 7 sees them all
    assert graver_box(a4567, 7) == graver_completion(a4567)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
def test_backends_agree(a4567, C35):
    for A in (a4567, IntMat.from_rows([[1, 1, 1, 1], [0, 1, 2, 3]]), IntMat.from_rows([[3, 4, 5, 7, 9]])):
        assert graver_completion(A, backend="cython") == graver_completion(A, backend="python")


def test_overflow_falls_back_to_python():
    A = IntMat.from_rows([[1, 2**63, 0], [0, 1, 1]])
    G = graver_completion(A)
    assert G == graver_completion(A, backend="python")


def test_not_pointed():
    with pytest.raises(NotPointedError):
        graver_completion(IntMat.from_rows([[1, -1]]))


def test_via_bouquet(C35, C1):
    G = graver_via_bouquet(C35)
    assert len(G) == 29
    assert (1, -1, 21, -12, -9, -4046, -2, 4048, -1, -3, 2, 2) in G
    assert len(graver_via_bouquet(C1)) == 29
    small = IntMat.from_rows([[2, 0, 3, 3, 0], [1, 1, 0, 0, 0], [0, 0, 1, 2, 0], [0, 0, 1, 0, 2]])
    assert graver_via_bouquet(small) == graver_completion(small) == [(3, -3, -4, 2, 2)]


def test_histogram_of_twelfth_coordinate(C1):
    hist = Counter(abs(u[11]) for u in graver(C1))
    assert hist == {0: 8, 2024: 8, 4048: 4, 6072: 4, 8096: 2, 10120: 2, 14168: 1}


def test_circuits(a4567):
    assert circuits(IntMat.from_rows([[2, 3]])) == [(3, -2)]
    C = circuits(a4567)
    assert (3, 0, -2, 0) in C
    assert set(C) <= set(graver_completion(a4567))
    assert all(sum(1 for x in c if x) == 2 for c in C) and len(C) == 6
    M = MultisetConfig(IntMat.from_rows([[2, 3]]), (1, 0)).assembled()
    assert (1, -1, 0) in circuits(M)


def test_conformality_predicates():
    assert is_conformal_sum((3, -2), (3, -2), (0, 0))
    assert not is_conformal_sum((1, 3, -2, -1), (1, 2, 0, -2), (0, 1, -2, 1))
    assert is_semiconformal_sum((1, 3, -2, -1), (1, 2, 0, -2), (0, 1, -2, 1))
    assert not is_conformal_sum((2, 0, 0, 0, -1), (1, 0, 0, 0, -1), (1, 0, 0, 0, 1))
    assert is_conformal_sum((2, 0, 0, 0, -1), (1, 0, 0, 0, -1), (1, 0, 0, 0, 0))
    assert not is_semiconformal_sum((1, 1), (1, 0), (1, 1))  # v + w != u
    assert is_strongly_semiconformal_sum((1, 3, -2, -1), (1, 2, 0, -2), (0, 1, -2, 1))
    assert not is_strongly_semiconformal_sum((1, -1), (1, -1), (0, 0))
    assert conformal_leq((1, 0, -1), (2, 0, -1)) and not conformal_leq((1, 1), (2, -1))


@pytest.mark.parametrize("seed", range(30))
def test_box_property_on_random_matrices(seed):
    rng = random.Random(seed)
    A = IntMat.from_rows([[rng.randint(1, 6) for _ in range(rng.randint(2, 4))]])
    G = graver_completion(A)
    bound = max(max(map(abs, u)) for u in G)
    assert graver_box(A, bound) == G


def test_random_glm_completion_equals_lift():
    for M, G in desk_multisets(seed=7, count=50, entry_limit=40):
        assert graver_completion(M.ground) == G


def test_weak_compositions_order():
    assert list(weak_compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert len(list(weak_compositions(5, 3))) == comb(7, 2)


def test_multiset_graver_small(M223):
    G = multiset_graver(M223)
    assert G == sorted([(1, -1, 0), (3, 0, -2), (2, 1, -2), (1, 2, -2), (0, 3, -2)])
    assert graver_box(M223.assembled(), 5) == G
    assert multiset_graver_count(graver(M223.ground), M223.mult) == 5


def test_multiset_graver_trivial(a4567):
    M = MultisetConfig.plain(a4567)
    assert multiset_graver(M) == graver_completion(a4567)
    assert multiset_graver_count(graver(a4567), M.mult) == 29


def test_multiset_graver_E1(E1):
    assert len(multiset_graver(E1)) == 33


def test_multiset_graver_refuses_huge(E2):
    with pytest.raises(EnumerationInfeasible):
        multiset_graver(E2)


def test_fibre_lifts_same_sign(M223):
    lifts = list(fibre_lifts(M223, (3, -2)))
    assert len(lifts) == 4 and all(x >= 0 for v in lifts for x in v[:2])


def test_multiset_graver_equals_direct():
    for M, Gc in desk_multisets(seed=8, count=50):
        G = multiset_graver(M, Gc)
        assert len(G) == multiset_graver_count(Gc, M.mult)
        assert G == graver_completion(M.assembled())


def test_pure_python_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, TORICDUAL_PURE_PYTHON="1")
    code = "import toricdual; from toricdual.graver import graver_completion as g; " \
           "from toricdual.exactla import IntMat; print(toricdual.BACKEND, len(g(IntMat.from_rows([[4,5,6,7]]))))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "29"]
