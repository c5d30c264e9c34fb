"""Command-line front end.

Subcommands: validate, reduce, whitehead, pi1, order, branch, split, report.
Exit codes: 0 success (including diagnostics-only outcomes), 1 input errors,
2 invariant violations (a checked fact of the construction failed, which is
the most informative outcome).
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys

from . import __version__
from .branched import (
    build_branched,
    check_product_complement,
    delete_sectors,
    detect_disk_of_contact,
    detect_twisted_disk,
    run_splitting,
    trace_to_jsonl,
    trivial_sectors,
)
from .contact import contact_bound_check, corner_report
from .diagram import HeegaardDiagram, orientation_variants, parse_diagram, tighten
from .errors import HeegaardError, InvariantViolation
from .groups import (
    Budget,
    WordOracle,
    homology_invariants,
    homology_order,
    presentation,
    rebase,
    region_words,
)
from .moves import complexity, find_all_waves, find_waves, minimize, U_SIDE, V_SIDE
from .orders import DEFAULT_CONSTRAINTS, NEGATIVE, POSITIVE, search_positive_cone, minimal_region
from .whitehead import CUT_ALONG_U, CUT_ALONG_V, whitehead_graph
from .words import format_word, parse_word


def _read_diagram(path: str) -> HeegaardDiagram:
    with open(path) as fh:
        return parse_diagram(fh.read())


def _mult_json(graph) -> dict:
    out = {}
    for pair, count in sorted(
        graph.multiplicities.items(), key=lambda kv: sorted(kv[0])
    ):
        labels = sorted(f"{name}{'+' if s > 0 else '-'}" for name, s in pair)
        out["/".join(labels)] = count
    return out


def _diagram_report(d: HeegaardDiagram) -> dict:
    regions = d.regions()
    waves = []
    tight = d.is_tight()
    if tight:
        for fam in (U_SIDE, V_SIDE):
            for w in find_waves(d, fam):
                waves.append(
                    {
                        "target": w.target_curve,
                        "arc": list(w.arc),
                        "side": "plus" if w.side > 0 else "minus",
                        "endpoints": [w.start, w.end],
                    }
                )
    report = {
        "vertices": d.vertex_count,
        "edges": d.complex.edge_count,
        "faces": [
            {
                "id": r.id,
                "size": r.size,
                "cycle": [
                    [e.curve, e.arc_index, e.side, e.direction]
                    for e in r.edge_cycle
                ],
            }
            for r in regions
        ],
        "euler": d.complex.euler_characteristic(),
        "tight": tight,
        "waves": waves,
    }
    if tight:
        graph = whitehead_graph(d, CUT_ALONG_V)
        c = complexity(d)
        report["whitehead"] = {"form": graph.form, "multiplicities": _mult_json(graph)}
        report["complexity"] = [c.c1, c.c2, c.c3]
    else:
        report["whitehead"] = None
        report["complexity"] = None
    return report


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _parse_budget(text: str | None) -> Budget:
    budget = Budget()
    if not text:
        return budget
    mapping = {
        "coset": "max_coset_rows",
        "ball": "max_ball_radius",
        "conjugates": "max_conjugates",
        "conjlen": "max_conjugator_len",
        "conjnodes": "max_conjugate_nodes",
        "dehn": "max_dehn_steps",
    }
    for part in text.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in mapping:
            raise HeegaardError(f"unknown budget key {key!r}")
        setattr(budget, mapping[key], int(value))
    return budget


def _parse_constraints(items) -> tuple:
    out = []
    for item in items or ():
        word_text, _, sig = item.rpartition(":")
        if sig not in ("+", "-"):
            raise HeegaardError(f"constraint must end with :+ or :-, got {item!r}")
        out.append((parse_word(word_text), POSITIVE if sig == "+" else NEGATIVE))
    return tuple(out) if out else DEFAULT_CONSTRAINTS


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    d = _read_diagram(args.diagram)
    _emit(_diagram_report(d), args.json)
    return 0


def cmd_reduce(args) -> int:
    d = _read_diagram(args.diagram)
    before = d.total_crossings()
    d = tighten(d)
    d = minimize(d)
    payload = {
        "before": before,
        "after": d.total_crossings(),
        "complexity": list(complexity(d).as_tuple()),
        "diagram": d.to_text(),
    }
    _emit(payload, args.json)
    return 0


def cmd_whitehead(args) -> int:
    d = _read_diagram(args.diagram)
    d.require_tight()
    payload = {}
    for key, side in (("cut_along_V", CUT_ALONG_V), ("cut_along_U", CUT_ALONG_U)):
        graph = whitehead_graph(d, side)
        payload[key] = {
            "form": graph.form,
            "multiplicities": _mult_json(graph),
            "parameters": graph.parameters,
        }
    _emit(payload, args.json)
    return 0


def cmd_pi1(args) -> int:
    d = _read_diagram(args.diagram)
    pres = presentation(d)
    oracle = WordOracle(pres, _parse_budget(args.budget))
    gens = {}
    for name, word in (("g1", (1,)), ("g2", (2,)), ("h1", (3,)), ("h2", (4,))):
        gens[name] = oracle.is_trivial_word(word).value
    payload = {
        "presentation": pres.describe(),
        "homology_invariants": homology_invariants(pres),
        "homology_order": homology_order(pres),
        "group_order_if_finite": oracle.group_order_if_finite(),
        "generator_triviality": gens,
    }
    if args.word:
        verdict = oracle.is_trivial_word(parse_word(args.word))
        payload["word"] = {
            "input": args.word,
            "verdict": verdict.value,
            "certificate": _json_safe(verdict.certificate),
        }
    _emit(payload, args.json)
    return 0


def cmd_order(args) -> int:
    d = _read_diagram(args.diagram)
    pres = presentation(d)
    oracle = WordOracle(pres, _parse_budget(args.budget))
    cone = search_positive_cone(
        pres,
        args.depth,
        _parse_constraints(args.constraint),
        oracle=oracle,
    )
    _emit(cone.describe(), args.json)
    return 0


def _build_pipeline(d, depth, budget, try_orientations=True, steps=0, seed=0):
    """Shared pipeline: orientation/cone search, labelling, build, delete."""
    last_error: HeegaardError | None = None
    variants = (
        orientation_variants(d) if try_orientations else [((False,) * 4, d)]
    )
    for flips, dv in variants:
        pres = presentation(dv)
        oracle = WordOracle(pres, budget)
        try:
            cone = search_positive_cone(pres, depth, oracle=oracle)
            lab = region_words(dv, 0)
            base = minimal_region(lab, cone)
            lab = rebase(lab, base)
            surface = build_branched(dv, lab)
            report = trivial_sectors(surface, oracle)
            b0 = delete_sectors(surface, report.trivial_ids, oracle)
            return {
                "diagram": dv,
                "flips": flips,
                "presentation": pres,
                "oracle": oracle,
                "cone": cone,
                "labeling": lab,
                "base_region": base,
                "surface": surface,
                "trivial_report": report,
                "b0": b0,
            }
        except HeegaardError as err:
            last_error = err
    assert last_error is not None
    raise last_error


def _best_effort_reduce(d) -> tuple:
    """Tighten always; minimize when the wave moves go through.

    Returns (diagram, notes).  A failed wave move is a hypothesis-violation
    diagnostic, not a dead end for the remaining stages.
    """
    notes = []
    d = tighten(d)
    try:
        d = minimize(d)
    except HeegaardError as err:
        notes.append(f"reduction incomplete ({err.code}): {err}")
    return d, notes


def cmd_branch(args) -> int:
    d = _read_diagram(args.diagram)
    d, _notes = _best_effort_reduce(d)
    ctx = _build_pipeline(d, args.depth, _parse_budget(args.budget))
    b0 = ctx["b0"]
    payload = {
        "orientation_flips": list(ctx["flips"]),
        "base_region": ctx["base_region"],
        "surface": ctx["surface"].describe(),
        "deleted": list(b0.deleted_regions),
        "after_delete": b0.describe(),
        "corner_report": corner_report(b0).describe(),
        "product_complement": check_product_complement(b0).__dict__,
    }
    _emit(payload, args.json)
    return 0


def cmd_split(args) -> int:
    d = _read_diagram(args.diagram)
    d, _notes = _best_effort_reduce(d)
    ctx = _build_pipeline(d, args.depth, _parse_budget(args.budget))
    final, trace = run_splitting(
        ctx["b0"], ctx["cone"], steps=args.steps, seed=args.seed,
        oracle=ctx["oracle"],
    )
    sys.stdout.write(trace_to_jsonl(trace))
    return 0


def cmd_report(args) -> int:
    d = _read_diagram(args.diagram)
    payload: dict = {
        "version": __version__,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "input": {"path": args.diagram, "vertices": d.vertex_count},
        "seed": args.seed,
        "cone_depth": args.depth,
        "steps": args.steps,
    }
    diagnostics: list[str] = []
    exit_code = 0
    reduced, reduce_notes = _best_effort_reduce(d)
    diagnostics.extend(reduce_notes)
    payload["reduce"] = {
        "after": reduced.total_crossings(),
        "complexity": list(complexity(reduced).as_tuple()),
        "wave_free": not find_all_waves(reduced),
    }
    payload["validate"] = _diagram_report(reduced)
    graph_v = whitehead_graph(reduced, CUT_ALONG_V)
    graph_u = whitehead_graph(reduced, CUT_ALONG_U)
    payload["whitehead"] = {
        "cut_along_V": {"form": graph_v.form, "multiplicities": _mult_json(graph_v)},
        "cut_along_U": {"form": graph_u.form, "multiplicities": _mult_json(graph_u)},
    }
    if "Unrecognized" in (graph_v.form, graph_u.form):
        diagnostics.append(
            "whitehead graph unrecognized: diagram violates the genus-2 "
            "classification hypotheses"
        )
    budget = _parse_budget(args.budget)
    verdict = "DiagnosticsOnly"
    try:
        ctx = _build_pipeline(reduced, args.depth, budget)
        pres = ctx["presentation"]
        payload["presentation"] = {
            **pres.describe(),
            "homology_invariants": homology_invariants(pres),
            "homology_order": homology_order(pres),
            "group_order_if_finite": ctx["oracle"].group_order_if_finite(),
        }
        payload["order"] = {
            "orientation_flips": list(ctx["flips"]),
            **ctx["cone"].describe(),
        }
        payload["labels"] = {
            str(rid): format_word(w)
            for rid, w in sorted(ctx["labeling"].labels.items())
        }
        payload["branch"] = {
            "base_region": ctx["base_region"],
            "sectors": len(ctx["surface"].live_sectors()),
            "trivial_sectors": list(ctx["trivial_report"].trivial_ids),
            "unknown_sectors": list(ctx["trivial_report"].unknown_ids),
            "after_delete": ctx["b0"].describe(),
        }
        b0 = ctx["b0"]
        payload["corners"] = corner_report(b0).describe()
        product = check_product_complement(b0)
        payload["product_complement"] = {
            "is_product": product.is_product,
            "conclusion": product.conclusion,
        }
        final, trace = run_splitting(
            b0, ctx["cone"], steps=args.steps, seed=args.seed,
            oracle=ctx["oracle"],
        )
        payload["split"] = {
            "initial_digest": trace.initial_digest,
            "final_digest": trace.final_digest,
            "steps": trace.steps_executed,
            "halted": trace.halted,
            "halt_reason": trace.halt_reason,
            "type_counts": {str(k): v for k, v in trace.type_counts.items()},
            "undecided_skips": trace.undecided_skips,
        }
        witness = detect_disk_of_contact(final, ctx["oracle"])
        witnesses = [witness] if witness else []
        payload["contact"] = contact_bound_check(b0, witnesses).describe()
        positivity = detect_twisted_disk(final, ctx["cone"])
        payload["positivity"] = {
            "passed": positivity.passed,
            "unknown_sectors": list(positivity.unknowns),
        }
        if trace.halted:
            diagnostics.append(
                f"splitting halted: {trace.halt_reason}; the branched surface "
                "carried a closed surface or ran out of decided sites"
            )
            verdict = "HypothesisViolation"
            exit_code = 2
        elif product.is_product and trace.steps_executed > 0:
            verdict = "FoliationCriterionMet"
    except InvariantViolation as err:
        diagnostics.append(f"{err.code}: {err}")
        verdict = "HypothesisViolation"
        exit_code = 2
    except HeegaardError as err:
        diagnostics.append(f"{err.code}: {err}")
        verdict = "DiagnosticsOnly"
    payload["diagnostics"] = diagnostics
    payload["verdict"] = verdict
    print(json.dumps(payload, sort_keys=True, indent=2))
    return exit_code


def _json_safe(obj):
    if isinstance(obj, tuple):
        return [_json_safe(x) for x in obj]
    if isinstance(obj, (list, dict, str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heegaard2",
        description="Genus-2 Heegaard diagram engine: reduction, branched "
        "surfaces, left orders, and splitting runs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, steps=False):
        p.add_argument("diagram", help="diagram file")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--cone-depth", dest="depth", type=int, default=2)
        p.add_argument("--budget", default=None,
                       help="comma list, e.g. coset=40000,conjugates=4")
        if steps:
            p.add_argument("--steps", type=int, default=1000)
            p.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("validate", help="parse, validate, trace faces"))
    common(sub.add_parser("reduce", help="remove bigons and waves"))
    common(sub.add_parser("whitehead", help="classify the Whitehead graphs"))
    p_pi1 = sub.add_parser("pi1", help="presentation and homology")
    common(p_pi1)
    p_pi1.add_argument("--word", default=None, help="test a word, e.g. 'g1 g2^-1'")
    p_order = sub.add_parser("order", help="search a positive cone")
    common(p_order)
    p_order.add_argument("--constraint", action="append",
                         help="sign constraint like 'g1:+' (repeatable)")
    common(sub.add_parser("branch", help="build the branched surface"))
    common(sub.add_parser("split", help="run the splitting process"), steps=True)
    common(sub.add_parser("report", help="full pipeline report"), steps=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "validate": cmd_validate,
        "reduce": cmd_reduce,
        "whitehead": cmd_whitehead,
        "pi1": cmd_pi1,
        "order": cmd_order,
        "branch": cmd_branch,
        "split": cmd_split,
        "report": cmd_report,
    }
    try:
        return handlers[args.command](args)
    except HeegaardError as err:
        payload = err.to_json()
        if getattr(args, "json", False) or args.command == "report":
            print(json.dumps(payload, sort_keys=True))
        else:
            print(f"error[{err.code}]: {err}", file=sys.stderr)
        return err.exit_code
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
