"""Assemble a full analysis of a (multiset) configuration."""

from __future__ import annotations

from typing import Any

from .bouquet import bouquet_decompose, free_columns
from .errors import EnumerationInfeasible, HypothesisError
from .exactla import allones_in_rowspan, gale_transform, rank
from .graver import circuits, graver, multiset_graver, multiset_graver_count
from .markov import (
    BasisReport,
    count_minimal_markov,
    count_minimal_markov_multiset_formula,
    indispensables,
    minimal_markov,
    minimal_markov_multiset,
    universal_markov,
)
from .multiset import MultisetConfig
from .selfdual import classify_robustness, is_selfdual, pyramidality_of_multiset, ugb_count_single_repeat

#: largest Graver basis the report will list and feed to fiber computations
REPORT_LIMIT = 5_000
#: largest number of column subsets scanned for circuits
CIRCUIT_LIMIT = 20_000


def markov_count(M: MultisetConfig, ground_graver, full_graver=None) -> tuple[int, str]:
    """Number of minimal Markov bases and the route used."""
    try:
        return count_minimal_markov_multiset_formula(M, ground_graver), "closed form"
    except HypothesisError:
        if full_graver is None:
            raise
    return count_minimal_markov(M.assembled(), full_graver), "fiber components"


def markov_basis(M: MultisetConfig, ground_graver, full_graver=None) -> list:
    if full_graver is not None:
        return minimal_markov(M.assembled(), full_graver)
    return minimal_markov_multiset(M, ground_graver)


def _circuits_feasible(M: MultisetConfig) -> bool:
    from math import comb

    A = M.assembled()
    r = rank(A)
    if r == A.cols:
        return True
    return min(comb(A.cols, A.cols - r - 1), comb(A.cols, r + 1)) <= CIRCUIT_LIMIT


def analyze(M: MultisetConfig, limit: int = REPORT_LIMIT) -> dict[str, Any]:
    """Gale data, bouquets, self-duality, robustness, bases (when feasible) and counts."""
    C = M.ground
    A = M.assembled()
    notes: list[str] = []
    out: dict[str, Any] = {
        "rows": A.rows,
        "cols": A.cols,
        "ground_cols": C.cols,
        "mult": list(M.mult),
        "rank": rank(A),
        "projective": allones_in_rowspan(A),
        "gale": [list(r) for r in gale_transform(C).rows],
        "free_columns_ground": sorted(i + 1 for i in free_columns(C).indices),
        "bouquets": bouquet_decompose(C).to_json(),
    }
    s, free = pyramidality_of_multiset(M)
    out["pyramidality"] = s
    out["free_columns"] = sorted(i + 1 for i in free)
    try:
        sd = is_selfdual(M)
        out.update(sd.to_json())
    except HypothesisError as exc:
        out["selfdual"] = False
        out["path"] = None
        out["reason"] = str(exc)
    rv = classify_robustness(M, limit=limit)
    out["robustness"] = rv.tag
    out["robustness_route"] = rv.route
    out["witness"] = rv.to_json()["witness"]

    counts: dict[str, str] = {}
    report = BasisReport(robustness=rv.tag)
    try:
        Gc = graver(C)
    except HypothesisError as exc:
        notes.append(f"no Graver basis: {exc}")
        Gc = None
    full = None
    if Gc is not None:
        counts["graver"] = str(multiset_graver_count(Gc, M.mult))
        try:
            full = multiset_graver(M, Gc, limit=limit) if M.k else Gc
        except EnumerationInfeasible as exc:
            notes.append(f"enumeration infeasible ({exc}); bases reported as counts only")
        try:
            n_bases, route = markov_count(M, Gc, full)
            counts["markov_bases"] = str(n_bases)
            notes.append(f"markov_bases via {route}")
        except (HypothesisError, EnumerationInfeasible) as exc:
            notes.append(f"markov_bases not available: {exc}")
        try:
            report.minimal_markov = markov_basis(M, Gc, full)
        except (HypothesisError, EnumerationInfeasible) as exc:
            notes.append(f"minimal Markov basis not available: {exc}")
        try:
            counts["ugb"] = str(ugb_count_single_repeat(M, Gc))
        except HypothesisError as exc:
            counts["ugb"] = "formula not applicable"
            notes.append(f"ugb: {exc.criterion}")
    if full is not None:
        report.graver = full
        try:
            report.indispensables = indispensables(A, full, method="fiber")
            report.universal_markov = universal_markov(A, full)
        except EnumerationInfeasible as exc:
            notes.append(str(exc))
        if _circuits_feasible(M):
            report.circuits = circuits(A)
        else:
            notes.append("circuit scan skipped: too many column subsets")
    if not report.check_inclusions():
        raise AssertionError("basis inclusion chain violated")
    out["bases"] = {
        name: ([list(v) for v in getattr(report, name)] if getattr(report, name) is not None else None)
        for name in ("graver", "circuits", "minimal_markov", "universal_markov", "indispensables")
    }
    out["counts"] = counts
    out["notes"] = notes
    return out
