import itertools
import random

import pytest

from gen import random_glm_spec, random_selfdual_family
from toricdual.errors import HypothesisError
from toricdual.exactla import IntMat
from toricdual.glm import build_glm, build_selfdual_family
from toricdual.graver import graver, is_semiconformal_sum, multiset_graver
from toricdual.multiset import MultisetConfig
from toricdual.selfdual import (
    NON_PYRAMIDAL,
    PYRAMIDAL_SPLIT,
    STRONGLY_ROBUST,
    WEAKLY_ROBUST_ONLY,
    classify_robustness,
    is_selfdual,
    nonfree_selfdual_certificate,
    pyramidal_witness,
    pyramidality_of_multiset,
    ugb_count_single_repeat,
)


def test_selfdual_example_glm(C35):
    v = is_selfdual(MultisetConfig.plain(C35))
    assert v.is_selfdual and v.path == NON_PYRAMIDAL
    assert set(v.bouquet_sums) == {0}
    assert all(not any(g) for g in v.gale_sums)


def test_selfdual_two_equal_points():
    # (1 1) folds to one column repeated once: a 1-pyramidal ground with k = 1
    M, _ = MultisetConfig.fold(IntMat.from_rows([[1, 1]]))
    v = is_selfdual(M)
    assert v.is_selfdual and v.path == PYRAMIDAL_SPLIT


def test_selfdual_family(E1, E2):
    for M in (E1, E2):
        v = is_selfdual(M)
        assert v.is_selfdual and v.path == PYRAMIDAL_SPLIT and v.k == 4
        assert len(v.free_columns) == 4


def test_non_projective_rejected(M223):
    with pytest.raises(HypothesisError, match="projective"):
        is_selfdual(M223)


def test_not_selfdual():
    v = is_selfdual(MultisetConfig.plain(IntMat.identity(2)))
    assert not v.is_selfdual and "pyramidal" in v.reason
    # projective, non-pyramidal, a bouquet with nonzero sum
    A = IntMat.from_rows([[1, 1, 1, 1], [0, 1, 2, 4]])
    v = is_selfdual(MultisetConfig.plain(A))
    assert not v.is_selfdual and v.path == NON_PYRAMIDAL


def test_k_mismatch_not_selfdual(C1):
    # the 4-pyramidal ground without repetitions is not self-dual
    v = is_selfdual(MultisetConfig.plain(C1))
    assert not v.is_selfdual and "k = 0" in v.reason


def test_pyramidality(E1, E2):
    assert pyramidality_of_multiset(E1)[0] == 0
    s, free = pyramidality_of_multiset(E2)
    assert s == 4
    from toricdual.bouquet import free_columns

    assert free == free_columns(E2.assembled()).indices


def test_gale_sums_agree_with_bouquet_sums():
    rng = random.Random(5)
    for _ in range(60):
        C = build_glm(random_glm_spec(rng, zero_sum=rng.random() < 0.5))
        v = nonfree_selfdual_certificate(C)
        from toricdual.selfdual import _nonfree_sums

        sums, gsums = _nonfree_sums(C)
        assert v == all(not any(g) for g in gsums) == all(x == 0 for x in sums)


def test_classify(C35, E1, E2, M223):
    assert classify_robustness(MultisetConfig.plain(C35), verify=True).tag == STRONGLY_ROBUST
    assert classify_robustness(E1).tag == STRONGLY_ROBUST
    v = classify_robustness(E2)
    assert v.tag == WEAKLY_ROBUST_ONLY and v.route == "self-dual pyramidal"
    (u, a, b), = v.witnesses
    assert is_semiconformal_sum(u, a, b)
    v = classify_robustness(M223)
    assert v.tag == WEAKLY_ROBUST_ONLY and v.route == "computed"
    assert v.witnesses == (((0, 3, -2),),)


def test_classify_not_weakly_robust(a4567):
    v = classify_robustness(MultisetConfig.plain(a4567))
    assert v.tag == "not_weakly_robust"
    (u, *parts), = v.witnesses
    assert u in graver(a4567) and len(parts) >= 2
    assert tuple(map(sum, zip(*parts))) == u


def test_pyramidal_witness_single_copies(E2):
    u, v, w = pyramidal_witness(E2)
    assert is_semiconformal_sum(u, v, w)
    assert E2.assembled().mul_vec(u) == (0,) * E2.assembled().rows


def test_random_selfdual_families_verified():
    rng = random.Random(8)
    done = 0
    while done < 25:
        spec = random_selfdual_family(rng)
        try:
            M = build_selfdual_family(spec)
        except HypothesisError:
            continue
        sd = is_selfdual(M)
        assert sd.is_selfdual
        s, _ = pyramidality_of_multiset(M)
        tag = classify_robustness(M, verify=True).tag
        assert (tag == STRONGLY_ROBUST) == (s == 0)
        done += 1


def test_ugb_examples(E2, C35, M223, a4567):
    assert ugb_count_single_repeat(E2) == 123
    assert ugb_count_single_repeat(MultisetConfig.plain(C35)) == 29
    assert ugb_count_single_repeat(M223) == 3
    with pytest.raises(HypothesisError):
        ugb_count_single_repeat(MultisetConfig.plain(a4567))
    with pytest.raises(HypothesisError, match="exactly one"):
        ugb_count_single_repeat(MultisetConfig(IntMat.from_rows([[2, 3]]), (1, 1)))


def universal_groebner_223():
    """Union of reduced Gröbner bases of I_{(2,2,3)} over monomial orders and variable orders."""
    sympy = pytest.importorskip("sympy")
    y1, y2, x = sympy.symbols("y1 y2 x")
    gens = [y1 - y2, y1**3 - x**2]
    found = set()
    for perm in itertools.permutations((y1, y2, x)):
        for order in ("lex", "grlex", "grevlex"):
            G = sympy.groebner(gens, *perm, order=order)
            for g in G.exprs:
                p = sympy.Poly(g, y1, y2, x)
                found.add(p.monic() if p.LC() > 0 else (-p).monic())
    return {p.as_expr() for p in found}, (y1, y2, x)


def test_ugb_223_exhaustive():
    found, (y1, y2, x) = universal_groebner_223()
    want = {y1 - y2, y1**3 - x**2, y2**3 - x**2}
    assert {f.expand() for f in found} == {f.expand() for f in want}


def test_ugb_formula_against_edge_oracle():
    from gen import desk_multisets
    from toricdual.oracle import universal_groebner_edges

    checked = 0
    for M, Gc in desk_multisets(seed=3, count=80, graver_limit=120, entry_limit=12):
        try:
            f = ugb_count_single_repeat(M, Gc)
        except HypothesisError:
            continue
        assert f == len(universal_groebner_edges(M.assembled(), multiset_graver(M, Gc)))
        checked += 1
    assert checked >= 30


def test_ugb_223_edge_oracle(M223):
    from toricdual.oracle import universal_groebner_edges

    A = M223.assembled()
    assert universal_groebner_edges(A, multiset_graver(M223)) == [(0, 3, -2), (1, -1, 0), (3, 0, -2)]
