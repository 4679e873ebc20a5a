"""Command-line front end.

Exit codes: 0 on success, 2 when an input violates a hypothesis of the
requested operation, 1 on any other error (bad input, infeasible
enumeration, failed oracle check).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from pathlib import Path

from .bouquet import bouquet_decompose
from .errors import EnumerationInfeasible, HypothesisError
from .exactla import IntMat, MatrixFormatError, format_matrix, gale_transform, kernel_lattice_basis, parse_matrix
from .glm import GlmSpec, PyramidalFamilySpec, build_glm, build_selfdual_family, decompose_to_glm
from .graver import circuits, graver, graver_completion, graver_via_bouquet, multiset_graver, multiset_graver_count
from .markov import indispensables, universal_markov
from .multiset import MultisetConfig
from .report import REPORT_LIMIT, analyze, markov_basis, markov_count
from .selfdual import classify_robustness, is_selfdual, pyramidality_of_multiset, ugb_count_single_repeat


class OracleMismatch(RuntimeError):
    pass


# ------------------------------------------------------------------ input

def _read_text(src: str) -> tuple[str, str | None]:
    """Contents of ``src`` if it names a file, else ``src`` itself as inline text."""
    p = Path(src)
    if "\n" not in src and "\\n" not in src and p.exists():
        return p.read_text(), p.suffix
    return src.replace("\\n", "\n"), None


def load_config(src: str, mult: str | None = None, notice=print) -> MultisetConfig:
    """Matrix text, GLM spec JSON or pyramidal family JSON → multiset configuration."""
    text, suffix = _read_text(src)
    if suffix == ".json" or text.lstrip().startswith("{"):
        obj = json.loads(text)
        if "multiplicities" in obj:
            M = build_selfdual_family(PyramidalFamilySpec.from_json(obj))
        else:
            M = MultisetConfig.plain(build_glm(GlmSpec.from_json(obj)))
        if mult is not None:
            M = MultisetConfig(M.ground, _parse_mult(mult, M.ground.cols))
        return M
    A = parse_matrix(text)
    if mult is not None:
        return MultisetConfig(A, _parse_mult(mult, A.cols))
    M, position = MultisetConfig.fold(A)
    if M.k:
        notice(f"note: folded {M.k} repeated column(s); assembled column order {[p + 1 for p in position]}")
    return M


def _parse_mult(text: str, n: int) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise MatrixFormatError(f"bad multiplicity vector {text!r}", 0) from None
    if len(vals) != n:
        raise MatrixFormatError(f"--mult has {len(vals)} entries, ground has {n} columns", 0)
    return vals


# ----------------------------------------------------------------- output

def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return str(x)


_FLAT = re.compile(r"\[\s+([-\d,\s]*?)\s+\]")


def _dumps(d) -> str:
    # indented JSON with innermost integer arrays kept on one line
    text = json.dumps(_jsonable(d), indent=2)
    return _FLAT.sub(lambda m: "[" + " ".join(m.group(1).split()) + "]", text)


class Emitter:
    def __init__(self, fmt: str, out: str | None):
        self.fmt = fmt
        self.out = out
        self.chunks: list[str] = []

    def vectors(self, vs, key="vectors"):
        if self.fmt == "json":
            self.chunks.append(json.dumps({key: [list(v) for v in vs], "count": str(len(vs))}))
        else:
            self.chunks.extend(" ".join(map(str, v)) for v in vs)

    def obj(self, d: dict, text_lines=None):
        if self.fmt == "json" or text_lines is None:
            self.chunks.append(_dumps(d))
        else:
            self.chunks.extend(text_lines)

    def scalar(self, key: str, value: int):
        # big integers always travel as decimal strings in JSON
        self.chunks.append(json.dumps({key: str(value)}) if self.fmt == "json" else str(value))

    def flush(self):
        text = "\n".join(c.rstrip("\n") for c in self.chunks) + ("\n" if self.chunks else "")
        if self.out:
            d = os.path.dirname(os.path.abspath(self.out))
            fd, tmp = tempfile.mkstemp(dir=d, prefix=".toricdual-")
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self.out)
        else:
            sys.stdout.write(text)


# --------------------------------------------------------------- commands

def _graver_of(M: MultisetConfig, limit: int):
    return multiset_graver(M, limit=limit) if M.k else graver(M.ground)


def _oracle_graver(M: MultisetConfig, G, box: int):
    from .oracle import graver_box

    A = M.assembled()
    brute = graver_box(A, box)
    inside = [u for u in G if max(map(abs, u)) <= box]
    if brute != inside:
        raise OracleMismatch(f"Graver basis disagrees with the box-{box} brute force")
    if not M.k and graver_completion(A) != graver_via_bouquet(A):
        raise OracleMismatch("direct completion and bouquet lift disagree")


def cmd_analyze(args, em):
    M = load_config(args.input, args.mult, _notice)
    rep = analyze(M, limit=args.limit)
    lines = None
    if args.format == "text":
        lines = [
            f"columns: {rep['cols']} (ground {rep['ground_cols']}), rank {rep['rank']}",
            f"projective: {rep['projective']}",
            f"self-dual: {rep['selfdual']} ({rep.get('path')})" + (f"; {rep['reason']}" if rep.get("reason") else ""),
            f"pyramidality: {rep['pyramidality']}",
            f"robustness: {rep['robustness']} [{rep['robustness_route']}]",
        ]
        lines += [f"{k}: {v}" for k, v in rep["counts"].items()]
        lines += [f"{k} size: {len(v)}" for k, v in rep["bases"].items() if v is not None]
        lines += [f"note: {x}" for x in rep["notes"]]
    em.obj(rep, lines)


def cmd_gale(args, em):
    M = load_config(args.input, args.mult, _notice)
    g = gale_transform(M.assembled())
    em.obj({"n": g.n, "rank": g.r, "rows": [list(r) for r in g.rows]},
           [" ".join(map(str, r)) if r else "" for r in g.rows])


def cmd_bouquets(args, em):
    M = load_config(args.input, args.mult, _notice)
    dec = bouquet_decompose(M.assembled())
    lines = [f"{b.kind:9s} members {[i + 1 for i in b.members]} c_B {list(b.c)} a_B {list(b.a)}"
             for b in dec.bouquets]
    em.obj(dec.to_json(), lines)


def cmd_glm_build(args, em):
    text, _ = _read_text(args.input)
    obj = json.loads(text)
    if "multiplicities" in obj:
        fam = PyramidalFamilySpec.from_json(obj)
        C = build_selfdual_family(fam).ground
        spec = fam.full_spec()
    else:
        spec = GlmSpec.from_json(obj)
        C = build_glm(spec)
    if args.verify:
        spec2, perm = decompose_to_glm(C)
        if kernel_lattice_basis(C.select_columns(perm)) != kernel_lattice_basis(build_glm(spec2)):
            raise OracleMismatch("glm decompose does not preserve the kernel")
    em.obj({"rows": C.rows, "cols": C.cols, "matrix": C.to_rows(), "spec": spec.to_json()},
           [format_matrix(C)])


def cmd_glm_decompose(args, em):
    M = load_config(args.input, args.mult, _notice)
    A = M.assembled()
    spec, perm = decompose_to_glm(A)
    if args.verify:
        if kernel_lattice_basis(A.select_columns(perm)) != kernel_lattice_basis(build_glm(spec)):
            raise OracleMismatch("decomposition does not preserve the kernel")
    d = spec.to_json()
    d["permutation"] = [p + 1 for p in perm]
    em.obj(d)


def cmd_graver(args, em):
    M = load_config(args.input, args.mult, _notice)
    G = _graver_of(M, args.limit)
    if args.oracle:
        _oracle_graver(M, G, args.box)
    em.vectors(G, "graver")


def cmd_circuits(args, em):
    M = load_config(args.input, args.mult, _notice)
    em.vectors(circuits(M.assembled()), "circuits")


def cmd_markov(args, em):
    M = load_config(args.input, args.mult, _notice)
    Gc = graver(M.ground)
    try:
        full = _graver_of(M, args.limit)
    except EnumerationInfeasible:
        _notice("note: Graver basis too large; using the closed form")
        full = None
    mm = markov_basis(M, Gc, full)
    if args.oracle and full is not None and M.k:
        try:
            from .markov import minimal_markov_multiset

            if minimal_markov_multiset(M, Gc) != mm:
                raise OracleMismatch("closed-form and fiber-based Markov bases differ")
        except HypothesisError:
            pass
    em.vectors(mm, "minimal_markov")


def cmd_indispensable(args, em):
    M = load_config(args.input, args.mult, _notice)
    A = M.assembled()
    G = _graver_of(M, args.limit)
    ind = indispensables(A, G)
    if args.oracle and ind != indispensables(A, G, method="fiber"):
        raise OracleMismatch("semiconformal search and fiber test disagree")
    em.vectors(ind, "indispensables")


def cmd_universal_markov(args, em):
    M = load_config(args.input, args.mult, _notice)
    em.vectors(universal_markov(M.assembled(), _graver_of(M, args.limit)), "universal_markov")


def cmd_selfdual(args, em):
    M = load_config(args.input, args.mult, _notice)
    v = is_selfdual(M)
    s, _ = pyramidality_of_multiset(M)
    d = v.to_json()
    d["pyramidality"] = s
    em.obj(d, [f"self-dual: {v.is_selfdual}", f"path: {v.path}", f"bouquet sums: {list(v.bouquet_sums)}",
               f"pyramidality: {s}"] + ([f"reason: {v.reason}"] if v.reason else []))


def cmd_robust(args, em):
    M = load_config(args.input, args.mult, _notice)
    rv = classify_robustness(M, limit=args.limit, verify=args.verify)
    em.obj(rv.to_json(), [f"{rv.tag} [{rv.route}]"] + ([rv.note] if rv.note else [])
           + [" = ".join(" ".join(map(str, v)) for v in w) for w in rv.witnesses])


def cmd_count(args, em):
    M = load_config(args.input, args.mult, _notice)
    Gc = graver(M.ground)
    if args.what == "graver":
        value = multiset_graver_count(Gc, M.mult)
    elif args.what == "markov-bases":
        try:
            full = _graver_of(M, args.limit)
        except EnumerationInfeasible:
            full = None
        value, _ = markov_count(M, Gc, full)
    else:
        value = ugb_count_single_repeat(M, Gc)
    em.scalar(args.what.replace("-", "_"), value)


# ------------------------------------------------------------------ parser

def _notice(msg):
    print(msg, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mult", help="comma-separated repetition counts k_i, one per ground column")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verify", action="store_true", help="run self-consistency checks")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    common.add_argument("--box", type=int, default=6, help="box bound for brute-force oracles")
    common.add_argument("--limit", type=int, default=REPORT_LIMIT, help="largest basis to enumerate")
    common.add_argument("--out", help="write output to this path")

    p = argparse.ArgumentParser(prog="toricdual", description="Exact toric configuration analysis.")
    sub = p.add_subparsers(dest="command", required=True)
    simple = {
        "analyze": cmd_analyze,
        "gale": cmd_gale,
        "bouquets": cmd_bouquets,
        "graver": cmd_graver,
        "circuits": cmd_circuits,
        "markov": cmd_markov,
        "indispensable": cmd_indispensable,
        "universal-markov": cmd_universal_markov,
        "selfdual": cmd_selfdual,
        "robust": cmd_robust,
    }
    for name, fn in simple.items():
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input", help="matrix file, inline matrix text, or spec JSON")
        sp.set_defaults(func=fn)
    glm = sub.add_parser("glm").add_subparsers(dest="glm_command", required=True)
    b = glm.add_parser("build", parents=[common])
    b.add_argument("input", help="GLM spec or pyramidal family spec (JSON)")
    b.set_defaults(func=cmd_glm_build)
    d = glm.add_parser("decompose", parents=[common])
    d.add_argument("input")
    d.set_defaults(func=cmd_glm_decompose)
    c = sub.add_parser("count", parents=[common])
    c.add_argument("what", choices=("graver", "markov-bases", "ugb"))
    c.add_argument("input")
    c.set_defaults(func=cmd_count)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    em = Emitter(args.format, args.out)
    try:
        args.func(args, em)
    except HypothesisError as exc:
        print(f"hypothesis failed [{exc.criterion}]: {exc}", file=sys.stderr)
        return 2
    except MatrixFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (EnumerationInfeasible, OracleMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    em.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
