import json, sys, time
sys.path.insert(0, "src")
from heegaard2.diagram import HeegaardDiagram, orientation_variants
from heegaard2.groups import presentation, region_words, rebase, WordOracle, Budget
from heegaard2.orders import search_positive_cone, minimal_region
from heegaard2.branched import build_branched, trivial_sectors, delete_sectors, run_splitting
from heegaard2.errors import HeegaardError

def chain(dv, depth, steps):
    p = presentation(dv)
    oracle = WordOracle(p, Budget(max_coset_rows=3000))
    cone = search_positive_cone(p, depth, oracle=oracle, node_budget=400000)
    lab = region_words(dv, 0)
    m = minimal_region(lab, cone)
    lab = rebase(lab, m)
    b = build_branched(dv, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    final, trace = run_splitting(b0, cone, steps=steps, seed=11, oracle=oracle)
    return trace, rep

rows = [json.loads(l) for l in open("tools/pipeline_candidates.jsonl")]
t0 = time.time()
for idx, r in enumerate(rows):
    if time.time() - t0 > 3000: break
    d0 = HeegaardDiagram.parse(r["text"])
    for flips, dv in orientation_variants(d0):
        try:
            trace, rep = chain(dv, 2, 400)
        except HeegaardError:
            continue
        if trace.halted and trace.halt_reason == "AllSitesUndecided":
            # retry deeper
            for depth in (3,):
                try:
                    trace3, rep3 = chain(dv, depth, 2500)
                except HeegaardError as e:
                    print(idx, flips, "depth3 fail:", getattr(e, "code", e), flush=True)
                    continue
                print(idx, flips, "depth3:", "halted" if trace3.halted else "RUNS",
                      trace3.halt_reason, trace3.steps_executed, trace3.type_counts, flush=True)
                if not trace3.halted:
                    print("VIABLE", json.dumps({"n": r["n"], "flips": list(flips),
                                                "text": dv.to_text()}), flush=True)
        elif not trace.halted:
            print(idx, flips, "runs at depth 2 already!", trace.type_counts, flush=True)
            print("VIABLE", json.dumps({"n": r["n"], "flips": list(flips),
                                        "text": dv.to_text()}), flush=True)
