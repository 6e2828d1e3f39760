"""Command line interface: ``clusterfold <command> [flags]``.

Exit codes: 0 success, 1 a mathematical check came out false, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .charfun import (
    CharacterError,
    EulerCharacteristicError,
    catalog_char,
    character_of,
    cluster_char,
    count_comp_series,
    match_minor,
    verify_exchange,
    verify_minor_identity,
)
from .coordring import (
    D,
    check_identity,
    criterion_six,
    is_totally_positive,
    load_matrix,
    random_positive_parametrization,
    random_unitriangular,
    validate_word,
)
from .exactalg import GF
from .folding import (
    FoldingError,
    check_pi_projection,
    folded_mutate,
    g_on_catalog,
    hexagon_cluster_polys,
    hexagon_dot,
    hexagon_json,
    projected_character,
    projected_minor,
    slots,
    stable_exchange_graph,
)
from .repcore import (
    CATALOG_IDS,
    CATALOG_MINORS,
    PROJECTIVE_IDS,
    InvalidModule,
    catalog_rep,
    decompose,
    ext1_dim,
    is_local_endomorphism_ring,
    parse_rep,
    validate,
)
from .rigidmut import MutationError, RigidObject, T0, enumerate_maximal_rigid, exchange_graph, mutate

WORDS = ("213213", "121321")
MATH_ERRORS = (MutationError, FoldingError, EulerCharacteristicError, CharacterError, InvalidModule)


@dataclass
class SuiteConfig:
    seed: int = 20100
    random_samples: int = 1000
    positive_samples: int = 200
    bound: int = 100
    primes: tuple[int, ...] = (2, 3, 5, 7, 11, 13)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))


def _listing(bad, limit: int = 3) -> str:
    return "" if not bad else ", ".join(map(str, bad[:limit])) + (" ..." if len(bad) > limit else "")


def _guard(res: SuiteResult, name: str, fn: Callable[[], tuple[bool, str] | bool]):
    try:
        out = fn()
    except MATH_ERRORS as exc:
        res.add(name, False, str(exc))
        return
    ok, detail = out if isinstance(out, tuple) else (out, "")
    res.add(name, ok, detail)


# ---------------------------------------------------------------------------
# verification suites


def suite_ext(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("ext")
    reps = {c: catalog_rep(c) for c in CATALOG_IDS}
    bad = [c for c, x in reps.items() if not validate(x)]
    res.add("catalog modules satisfy the preprojective relations", not bad, ", ".join(bad))
    bad = [c for c, x in reps.items() if not is_local_endomorphism_ring(x)]
    res.add("catalog modules are indecomposable (local endomorphism ring)", not bad, ", ".join(bad))
    vanishing = [c for c in CATALOG_IDS if all(ext1_dim(reps[c], reps[d]) == 0 for d in CATALOG_IDS)]
    res.add("Ext^1 vanishes against the catalog exactly for the projectives", tuple(vanishing) == PROJECTIVE_IDS,
            ", ".join(vanishing))
    asym = [(a, b) for a in CATALOG_IDS for b in CATALOG_IDS if ext1_dim(reps[a], reps[b]) != ext1_dim(reps[b], reps[a])]
    res.add("2-Calabi-Yau symmetry dim Ext^1(X,Y) = dim Ext^1(Y,X) on 144 pairs", not asym, _listing(asym))
    return res


def suite_char(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("char")
    for w in WORDS:
        res.add(f"{w} represents the longest element", validate_word(w))
        for cid in CATALOG_IDS:
            def one(cid=cid, w=w):
                got = str(match_minor(catalog_rep(cid), w))
                return got == CATALOG_MINORS[cid], "" if got == CATALOG_MINORS[cid] else f"got {got}"
            _guard(res, f"phi_{cid} pulls back to {CATALOG_MINORS[cid]} along {w}", one)
    p2 = catalog_rep("P2")
    counts = {(typ, p): count_comp_series(p2.reduce(GF(p)), typ) for typ in ("2132", "2312") for p in cfg.primes}
    res.add("P2 has exactly one composition series of types 2132 and 2312",
            all(v == 1 for v in counts.values()), _listing([(k, v) for k, v in counts.items() if v != 1]))
    return res


def suite_exchange(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("exchange")

    def example():
        m1 = mutate(T0, "U32")
        m2 = mutate(m1.result, "SOC2")
        ok = (
            m1.result == RigidObject.parse("SOC2,S1,U12")
            and {m1.forward.middle, m1.backward.middle} == {("SOC2",), ("P3",)}
            and m2.result == RigidObject.parse("S1,U12,U21")
            and {m2.forward.middle, m2.backward.middle} == {("S1", "P2"), ("U12", "P3")}
        )
        return ok, f"{m1.result.label()} then {m2.result.label()}"

    _guard(res, "worked mutation example at T0 (mu_2 then mu_1)", example)
    try:
        g = exchange_graph()
    except MutationError as exc:
        res.add("exchange graph construction", False, str(exc))
        return res
    res.add("exchange graph has 14 vertices and 21 edges", (len(g.vertices), len(g.edges)) == (14, 21),
            f"{len(g.vertices)} vertices, {len(g.edges)} edges")
    res.add("exchange graph is 3-regular", all(g.degree(v) == 3 for v in g.vertices))
    res.add("exchange graph equals the brute-force enumeration", set(g.vertices) == enumerate_maximal_rigid())

    def involutive():
        bad = [(v, s) for v in g.vertices for s in v.nonprojective if mutate(mutate(v, s).result, mutate(v, s).added).result != v]
        return not bad, _listing(bad)

    _guard(res, "mutation is involutive at every (vertex, slot)", involutive)
    for w in WORDS:
        bad = [e.pair for e in g.edges if not verify_exchange(e, w)]
        res.add(f"phi(T_i) phi(T_i*) = phi(E) + phi(E') on all edges, word {w}", not bad, _listing(bad))
    bad = [e.pair for e in g.edges if not verify_minor_identity(e)]
    res.add("edge identities hold between minors of the generic matrix", not bad, _listing(bad))
    printed = [
        ((D(12, 24), D(23, 34)), ((D(123, 234), D(2, 4)), (D(3, 4), D(12, 34)))),
        ((D(1, 2), D(2, 4)), ((D(12, 24),), (D(1, 4),))),
        ((D(12, 24), D(1, 3)), ((D(1, 2), D(12, 34)), (D(12, 23), D(1, 4)))),
    ]
    for lhs, rhs in printed:
        name = "*".join(map(str, lhs)) + " = " + " + ".join("*".join(map(str, t)) for t in rhs)
        res.add(f"identity {name}", check_identity(lhs, rhs))
    return res


def positivity_samples(cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    for _ in range(cfg.random_samples):
        # half with positive entries, otherwise almost no sample is totally positive
        yield "random", random_unitriangular(rng, cfg.bound, positive=rng.random() < 0.5)
    for k in range(cfg.positive_samples):
        yield "positive", random_positive_parametrization(rng, WORDS[k % 2], cfg.bound)


def suite_positivity(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("positivity")
    disagree = 0
    tp = {"random": 0, "positive": 0}
    total = {"random": 0, "positive": 0}
    for kind, m in positivity_samples(cfg):
        full = is_totally_positive(m)
        total[kind] += 1
        tp[kind] += full
        if full != criterion_six(m):
            disagree += 1
    res.add("six-minor criterion agrees with all twelve minors", disagree == 0,
            f"{disagree} discrepancies over {sum(total.values())} samples (seed {cfg.seed})")
    res.add("positive parametrizations are totally positive", tp["positive"] == total["positive"],
            f"{tp['positive']}/{total['positive']}")
    res.add("random samples contain both outcomes", 0 < tp["random"] < total["random"],
            f"{tp['random']}/{total['random']} totally positive")
    return res


def suite_fold(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("fold")
    _guard(res, "pi lands in the fixed points of M -> Psi^-1 (M^T)^-1 Psi", check_pi_projection)
    try:
        g = stable_exchange_graph()
    except MATH_ERRORS as exc:
        res.add("stable exchange graph construction", False, str(exc))
        return res
    res.add("6 stable maximal rigid objects", len(g.vertices) == 6, str(len(g.vertices)))
    res.add("stable exchange graph is a single 6-cycle", g.is_single_cycle())

    def commute():
        for v in g.vertices:
            folded_mutate(v, 1)
        return True

    _guard(res, "mu_1 mu_3 = mu_3 mu_1 on every stable object", commute)
    pairs = [(D(12, 23), D(2, 4)), (D(1, 2), D(3, 4)), (D(23, 34), D(1, 3)), (D(1, 4), D(123, 234))]
    for a, b in pairs:
        res.add(f"pi({a}) = pi({b})", projected_minor(a) == projected_minor(b))
    bad = [c for c in CATALOG_IDS if projected_character(c) != projected_character(g_on_catalog(c))]
    res.add("pi(phi_X) = pi(phi_gX) for every catalog X", not bad, _listing(bad))
    expected = [
        ((13, 34), (23, 34)), ((13, 34), (1, 2)), ((12, 24), (1, 2)),
        ((12, 24), (2, 4)), ((2, 3), (2, 4)), ((2, 3), (23, 34)),
    ]
    want = {frozenset(projected_minor(D(*s)) for s in pair) for pair in expected}
    got = set(hexagon_cluster_polys(g))
    res.add("hexagon clusters match the listed C2 clusters", got == want)
    return res


SUITES = {
    "ext": suite_ext,
    "char": suite_char,
    "exchange": suite_exchange,
    "positivity": suite_positivity,
    "fold": suite_fold,
}


def run_suites(names, cfg: SuiteConfig | None = None) -> list[SuiteResult]:
    cfg = cfg or SuiteConfig()
    return [SUITES[n](cfg) for n in names]


# ---------------------------------------------------------------------------
# commands


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def cmd_catalog(args) -> int:
    rows = []
    for cid in CATALOG_IDS:
        x = catalog_rep(cid)
        rows.append({
            "id": cid,
            "dim": list(x.dim),
            "projective": cid in PROJECTIVE_IDS,
            "character": str(catalog_char(cid, args.word).poly),
            "minor": str(match_minor(x, args.word)),
        })
    if args.json:
        _emit(_dump({"word": args.word, "modules": rows}), None)
    else:
        for r in rows:
            dim = " ".join(map(str, r["dim"]))
            print(f"{r['id']:<5} dim {dim}  {r['minor']:<12} {r['character']}")
    bad = [r["id"] for r in rows if r["minor"] != CATALOG_MINORS[r["id"]]]
    if bad:
        print(f"character/minor correspondence fails for {bad}", file=sys.stderr)
        return 1
    return 0


def _load_module(spec: str):
    if spec in CATALOG_IDS:
        return catalog_rep(spec)
    path = Path(spec)
    if not path.exists():
        raise FileNotFoundError(f"{spec} is neither a catalog id ({', '.join(CATALOG_IDS)}) nor a file")
    try:
        return parse_rep(path.read_text())
    except InvalidModule as exc:
        raise ValueError(f"{spec}: {exc}") from exc


def cmd_char(args) -> int:
    x = _load_module(args.module)
    if not validate(x):
        print("module violates the preprojective relations", file=sys.stderr)
        return 1
    phi = cluster_char(x, args.word).poly
    if args.json:
        try:
            m = str(match_minor(x, args.word))
        except CharacterError:
            m = None
        _emit(_dump({"module": args.module, "word": args.word, "character": str(phi), "minor": m,
                     "summands": list(decompose(x))}), None)
    else:
        print(phi)
        try:
            print(match_minor(x, args.word))
        except CharacterError:
            parts = decompose(x)
            print("*".join(CATALOG_MINORS[c] for c in parts) + f"  (via {' + '.join(parts)})")
    if phi != character_of(x, args.word):
        print("character is not multiplicative on the decomposition", file=sys.stderr)
        return 1
    return 0


def cmd_graph(args) -> int:
    g = exchange_graph()
    if args.dot:
        _emit(g.to_dot(), args.dot)
    if args.json:
        _emit(_dump(g.to_json()), args.json)
    if not (args.dot or args.json):
        for v in g.vertices:
            nbrs = "; ".join(f"{s}->{w.label()}" for s, w in sorted(g.adjacency[v].items()))
            print(f"{v.label():<18} {nbrs}")
    print(f"{len(g.vertices)} vertices, {len(g.edges)} edges", file=sys.stderr)
    return 0


def _ses_text(ses) -> str:
    mid = " + ".join(ses.middle) if ses.middle else "0"
    return f"0 -> {decompose(ses.left.source)[0]} -> {mid} -> {decompose(ses.right.target)[0]} -> 0"


def cmd_mutate(args) -> int:
    t = RigidObject.parse(args.object)
    mu = mutate(t, args.slot)
    if args.json:
        _emit(_dump({
            "source": list(t.summands),
            "result": list(mu.result.summands),
            "removed": mu.removed,
            "added": mu.added,
            "forward_middle": list(mu.forward.middle),
            "backward_middle": list(mu.backward.middle),
        }), None)
    else:
        print(f"T  = {t}")
        print(f"mutate at {mu.removed}: {mu.removed} -> {mu.added}")
        print(f"T' = {mu.result}")
        print(_ses_text(mu.forward))
        print(_ses_text(mu.backward))
    return 0


def cmd_positivity(args) -> int:
    m = load_matrix(args.matrix)
    full = is_totally_positive(m)
    six = criterion_six(m)
    chosen = six if args.criterion == "six" else full
    if args.json:
        _emit(_dump({"criterion": args.criterion, "totally_positive": chosen, "six": six, "twelve": full}), None)
    else:
        print(("totally positive" if chosen else "not totally positive") + f" (criterion {args.criterion})")
    if six != full:
        print("six-minor criterion disagrees with the twelve minors", file=sys.stderr)
        return 1
    return 0


def cmd_fold(args) -> int:
    g = stable_exchange_graph()
    if args.graph:
        _emit(_dump(hexagon_json(g)) if args.json else hexagon_dot(g), args.out)
    else:
        for v in g.vertices:
            fixed, pair = slots(v)
            print(f"{v.label():<18} fixed {fixed}, swapped {pair[0]}/{pair[1]}")
    return 0 if g.is_single_cycle() and len(g.vertices) == 6 else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = SuiteConfig(seed=args.seed)
    results = run_suites(names, cfg)
    if args.json:
        _emit(_dump({r.suite: [{"check": c.name, "ok": c.ok, "detail": c.detail} for c in r.checks] for r in results}), None)
    else:
        for r in results:
            print(f"== {r.suite}")
            for c in r.checks:
                print(c.line())
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clusterfold", description="Exact computations for the preprojective algebra of type A3.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="indecomposable rigid modules with characters and minors")
    c.add_argument("--json", action="store_true")
    c.add_argument("--word", default=WORDS[0])
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("char", help="cluster character of a module")
    c.add_argument("--module", required=True, help="catalog id or module file")
    c.add_argument("--word", default=WORDS[0])
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_char)

    c = sub.add_parser("graph", help="exchange graph of maximal rigid objects")
    c.add_argument("--dot", metavar="FILE")
    c.add_argument("--json", metavar="FILE")
    c.set_defaults(func=cmd_graph)

    c = sub.add_parser("mutate", help="mutate a maximal rigid object at a summand")
    c.add_argument("--object", required=True, help="comma separated catalog ids")
    c.add_argument("--slot", required=True, choices=[i for i in CATALOG_IDS if i not in PROJECTIVE_IDS])
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_mutate)

    c = sub.add_parser("positivity", help="total positivity of a unitriangular matrix")
    c.add_argument("--matrix", required=True, metavar="FILE")
    c.add_argument("--criterion", choices=("six", "twelve"), default="six")
    c.add_argument("--seed", type=int, default=SuiteConfig.seed, help="unused for a single matrix; kept for symmetry with verify")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_positivity)

    c = sub.add_parser("fold", help="stable objects and the folded exchange hexagon")
    c.add_argument("--graph", action="store_true", help="emit the hexagon (DOT unless --json)")
    c.add_argument("--json", action="store_true")
    c.add_argument("--out", metavar="FILE")
    c.set_defaults(func=cmd_fold)

    c = sub.add_parser("verify", help="run verification suites")
    c.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    c.add_argument("--seed", type=int, default=SuiteConfig.seed)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except MATH_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
