"""Command line front end.

Exit codes: 0 ok, 1 unreadable or malformed input, 2 groupoid or functor
axioms violated, 3 finality criteria disagree, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .dec import comprehensive_factorize, dec, dec_functor, is_final_lemma
from .gpd import (
    ConsistencyError,
    Groupoid,
    InternalFunctor,
    boff_factorize,
    cartesian_lift,
    compose_functors,
    functors_equal,
    groupoid_from_tables,
    is_discrete_fibration,
    is_essentially_surjective,
    is_faithful,
    is_full,
    is_isomorphism,
    pi0,
    pi0_map,
    support,
    support_functor,
    validate_functor,
    validate_groupoid,
)
from .oracle import EnumerationBounds
from .setcore import BoundaryError, FinMap, FinSet
from .sweep import (
    check_orthogonality,
    finality_verdicts,
    orthogonality_triples,
    run_sweep,
)

EXIT_OK, EXIT_PARSE, EXIT_AXIOM, EXIT_DISAGREE, EXIT_CONSISTENCY = range(5)

log = logging.getLogger("gpdfact")


class ParseError(Exception):
    pass


class AxiomError(Exception):
    def __init__(self, problems):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


# -- documents ---------------------------------------------------------------

def _need(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    if not isinstance(doc[key], kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return doc[key]


def _labels(xs, what):
    if not all(isinstance(x, str) for x in xs):
        raise ParseError(f"{what} labels must be strings")
    if len(set(xs)) != len(xs):
        raise ParseError(f"duplicate {what} label")
    return xs


def _known(label, pool, what):
    if label not in pool:
        raise ParseError(f"unknown {what} {label!r}")
    return label


def parse_groupoid(doc) -> Groupoid:
    objects = _labels(_need(doc, "objects", list), "object")
    raw = _need(doc, "arrows", list)
    arrows = []
    for a in raw:
        name, d, c = _need(a, "name", str), _need(a, "d", str), _need(a, "c", str)
        arrows.append((name, _known(d, objects, "object"), _known(c, objects, "object")))
    names = _labels([a[0] for a in arrows], "arrow")
    units, inv = _need(doc, "units", dict), _need(doc, "inv", dict)
    for x, u in units.items():
        _known(x, objects, "object")
        _known(u, names, "arrow")
    for a, b in inv.items():
        _known(a, names, "arrow")
        _known(b, names, "arrow")
    comp = {}
    for t in _need(doc, "comp", list):
        if not (isinstance(t, list) and len(t) == 3):
            raise ParseError("comp entries are triples [g, h, gh]")
        g, h, gh = (_known(x, names, "arrow") for x in t)
        if comp.setdefault((g, h), gh) != gh:
            raise AxiomError([f"two composites given for ({g}, {h})"])

    problems = [f"object {x} has no unit" for x in objects if x not in units]
    problems += [f"arrow {a} has no inverse" for a in names if a not in inv]
    ends = {n: (d, c) for n, d, c in arrows}
    composable = {(g, h) for g in names for h in names if ends[g][1] == ends[h][0]}
    problems += [f"no composite given for ({g}, {h})" for g, h in sorted(composable - comp.keys())]
    problems += [f"composite listed for non-composable pair ({g}, {h})"
                 for g, h in sorted(comp.keys() - composable)]
    if problems:
        raise AxiomError(problems)
    try:
        gpd = groupoid_from_tables(objects, arrows, units, inv, comp)
    except (BoundaryError, ValueError) as exc:
        raise AxiomError([str(exc)]) from None
    problems = validate_groupoid(gpd)
    if problems:
        raise AxiomError(problems)
    return gpd


def _load_json(path: Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def _groupoid_ref(ref, base: Path) -> Groupoid:
    if isinstance(ref, str):
        return parse_groupoid(_load_json(base / ref))
    return parse_groupoid(ref)


def parse_functor(doc, base: Path = Path(".")) -> InternalFunctor:
    if not isinstance(doc, dict) or "dom" not in doc or "cod" not in doc:
        raise ParseError("a functor document needs dom and cod")
    h, g = _groupoid_ref(doc["dom"], base), _groupoid_ref(doc["cod"], base)
    f0, f1 = _need(doc, "f0", dict), _need(doc, "f1", dict)
    for part, src, dst in ((f0, h.obj, g.obj), (f1, h.arr, g.arr)):
        for k, v in part.items():
            if not (src.has(k) and isinstance(v, str) and dst.has(v)):
                raise ParseError(f"bad map entry {k!r}: {v!r}")
    problems = [f"object {x} is not mapped" for x in h.obj.labels if x not in f0]
    problems += [f"arrow {a} is not mapped" for a in h.arr.labels if a not in f1]
    if problems:
        raise AxiomError(problems)
    f = InternalFunctor(h, g, FinMap.from_labels(h.obj, g.obj, f0),
                        FinMap.from_labels(h.arr, g.arr, f1))
    problems = validate_functor(f)
    if problems:
        raise AxiomError(problems)
    return f


def load(path) -> Groupoid | InternalFunctor:
    path = Path(path)
    doc = _load_json(path)
    if isinstance(doc, dict) and "dom" in doc:
        return parse_functor(doc, path.parent)
    return parse_groupoid(doc)


def groupoid_document(h: Groupoid) -> dict:
    lab = h.arr.labels
    return {
        "objects": list(h.obj.labels),
        "arrows": [{"name": lab[a], "d": h.obj[h.d(a)], "c": h.obj[h.c(a)]} for a in h.arr],
        "units": {h.obj[x]: lab[h.e(x)] for x in h.obj},
        "inv": {lab[a]: lab[h.i(a)] for a in h.arr},
        "comp": [[lab[g], lab[k], lab[h.m(p)]]
                 for p, (g, k) in enumerate(zip(h.p1.table, h.p2.table))],
    }


def functor_document(f: InternalFunctor, dom=None, cod=None) -> dict:
    return {
        "dom": dom if dom is not None else groupoid_document(f.dom),
        "cod": cod if cod is not None else groupoid_document(f.cod),
        "f0": f.f0.as_dict(),
        "f1": f.f1.as_dict(),
    }


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _write(path: Path, doc) -> None:
    path.write_text(_dump(doc), encoding="utf-8")


# -- commands ----------------------------------------------------------------

def _functor(args) -> InternalFunctor:
    f = load(args.path)
    if not isinstance(f, InternalFunctor):
        raise ParseError("expected a functor document")
    return f


def cmd_validate(args) -> int:
    x = load(args.path)
    if isinstance(x, InternalFunctor):
        print(f"valid functor: {len(x.dom.obj)} objects, {len(x.dom.arr)} arrows -> "
              f"{len(x.cod.obj)} objects, {len(x.cod.arr)} arrows")
    else:
        print(f"valid groupoid: {len(x.obj)} objects, {len(x.arr)} arrows")
    return EXIT_OK


def analysis(f: InternalFunctor) -> dict:
    verdicts = finality_verdicts(f)
    return {
        "full": is_full(f),
        "faithful": is_faithful(f),
        "essentially_surjective": is_essentially_surjective(f),
        "discrete_fibration": is_discrete_fibration(f),
        "final": verdicts,
        "agreement": len(set(verdicts.values())) == 1,
        "pi0": {"dom": len(pi0(f.dom).components), "cod": len(pi0(f.cod).components),
                "map": pi0_map(f).as_dict()},
    }


def cmd_analyze(args) -> int:
    report = analysis(_functor(args))
    text = _dump(report)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return EXIT_OK if report["agreement"] else EXIT_DISAGREE


def factorization_summary(f: InternalFunctor, r) -> dict:
    return {
        "T0": len(r.T.obj),
        "T1": len(r.T.arr),
        "K_after_J_is_F": functors_equal(compose_functors(r.J, r.K), f),
        "K_discrete_fibration": is_discrete_fibration(r.K),
        "J_final": is_final_lemma(r.J),
        "J_isomorphism": is_isomorphism(r.J),
        "K_isomorphism": is_isomorphism(r.K),
    }


def cmd_factorize(args) -> int:
    f = _functor(args)
    r = comprehensive_factorize(f)
    summary = factorization_summary(f, r)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write(out / "T.json", groupoid_document(r.T))
        _write(out / "J.json", functor_document(r.J, cod="T.json"))
        _write(out / "K.json", functor_document(r.K, dom="T.json"))
    sys.stdout.write(_dump(summary))
    ok = summary["K_after_J_is_F"] and summary["K_discrete_fibration"] and summary["J_final"]
    return EXIT_OK if ok else EXIT_CONSISTENCY


def cmd_pi0(args) -> int:
    x = load(args.path)
    if isinstance(x, InternalFunctor):
        out = {"dom": _classes(x.dom), "cod": _classes(x.cod), "map": pi0_map(x).as_dict()}
    else:
        out = _classes(x)
    sys.stdout.write(_dump(out))
    return EXIT_OK


def _classes(h: Groupoid) -> dict:
    data = pi0(h)
    out = {k: [] for k in data.components.labels}
    for x in h.obj:
        out[data.components[data.q(x)]].append(h.obj[x])
    return out


def _emit(args, doc) -> int:
    if getattr(args, "out", None):
        _write(Path(args.out), doc)
    else:
        sys.stdout.write(_dump(doc))
    return EXIT_OK


def cmd_dec(args) -> int:
    x = load(args.path)
    if isinstance(x, InternalFunctor):
        return _emit(args, functor_document(dec_functor(x)))
    return _emit(args, groupoid_document(dec(x)))


def cmd_support(args) -> int:
    x = load(args.path)
    if isinstance(x, InternalFunctor):
        return _emit(args, functor_document(support_functor(x)))
    return _emit(args, groupoid_document(support(x).relation))


def cmd_lift(args) -> int:
    g = load(args.path)
    if not isinstance(g, Groupoid):
        raise ParseError("lift expects a groupoid document")
    spec = _load_json(Path(args.map))
    table = _need(spec, "map", dict)
    if not all(isinstance(v, str) and g.obj.has(v) for v in table.values()):
        raise ParseError("map values must be objects of the groupoid")
    xs = FinSet(_labels(list(table), "object"))
    lifted, _ = cartesian_lift(FinMap.from_labels(xs, g.obj, table), g)
    return _emit(args, groupoid_document(lifted))


def cmd_boff(args) -> int:
    f = _functor(args)
    bo, ff, _ = boff_factorize(f)
    doc = {
        "middle": groupoid_document(bo.cod),
        "bo": {"f0": bo.f0.as_dict(), "f1": bo.f1.as_dict()},
        "ff": {"f0": ff.f0.as_dict(), "f1": ff.f1.as_dict()},
    }
    return _emit(args, doc)


def cmd_sweep(args) -> int:
    bounds = EnumerationBounds(args.max_components, args.max_objects_per_component,
                               args.max_group_order, args.max_total_arrows)
    report = run_sweep(bounds, jobs=args.jobs, squares=not args.skip_squares)
    for line in report.lines():
        print(line)
    orth = check_orthogonality(orthogonality_triples(bounds))
    print(f"orthogonality: {orth.checked} checked, {len(orth.failures)} failures")
    for what in report.consistency_errors[:20]:
        print(f"  consistency: {what}")
    for name, t in report.tallies.items():
        for what in t.failures[:20]:
            print(f"  {name}: {what}")
    if report.consistency_errors:
        return EXIT_CONSISTENCY
    if report.disagreements or orth.failures:
        return EXIT_DISAGREE
    print("0 disagreements")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gpdfact", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, out=False):
        s = sub.add_parser(name, help=help_)
        s.add_argument("path")
        if out:
            s.add_argument("--out")
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "check a groupoid or functor document")
    add("analyze", cmd_analyze, "fullness, faithfulness, finality verdicts", out=True)
    add("factorize", cmd_factorize, "final / discrete fibration factorization", out=True)
    add("pi0", cmd_pi0, "connected components")
    add("dec", cmd_dec, "décalage of a groupoid or functor", out=True)
    add("support", cmd_support, "support equivalence relation", out=True)
    lift = add("lift", cmd_lift, "cartesian lift along a map into the objects", out=True)
    lift.add_argument("--map", required=True, help='JSON file {"map": {x: object}}')
    add("boff", cmd_boff, "(bijective on objects, fully faithful) factorization", out=True)

    s = sub.add_parser("sweep", help="exhaustive check over small groupoids")
    d = EnumerationBounds()
    s.add_argument("--max-components", type=int, default=d.max_components)
    s.add_argument("--max-objects-per-component", type=int, default=d.max_objects_per_component)
    s.add_argument("--max-group-order", type=int, default=d.max_vertex_group_order)
    s.add_argument("--max-total-arrows", type=int, default=d.max_total_arrows)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--skip-squares", action="store_true",
                   help="leave out the pullback-square checks")
    s.set_defaults(fn=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AxiomError as exc:
        print("axiom violations:", file=sys.stderr)
        for msg in exc.problems:
            print(f"  {msg}", file=sys.stderr)
        return EXIT_AXIOM
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
