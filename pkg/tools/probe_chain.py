import json, sys, time
sys.path.insert(0, "src")
from heegaard2.diagram import HeegaardDiagram
from heegaard2.groups import presentation, region_words, rebase, WordOracle, Budget, homology_order
from heegaard2.orders import search_positive_cone, minimal_region
from heegaard2.branched import (build_branched, trivial_sectors, delete_sectors,
    run_splitting, check_product_complement)
from heegaard2.errors import HeegaardError

def chain(text, depth=2, steps=300):
    d = HeegaardDiagram.parse(text)
    p = presentation(d)
    oracle = WordOracle(p, Budget(max_coset_rows=4000))
    if oracle.group_order_if_finite() is not None:
        return None, "finite"
    cone = search_positive_cone(p, depth, oracle=oracle, node_budget=150000)
    lab = region_words(d, 0)
    m = minimal_region(lab, cone)
    lab = rebase(lab, m)
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    pc = check_product_complement(b0)
    final, trace = run_splitting(b0, cone, steps=steps, seed=11, oracle=oracle)
    if trace.halted:
        return None, "halted:" + str(trace.halt_reason)
    return {
        "h1": homology_order(p),
        "trivial": len(rep.trivial_ids),
        "unknown": len(rep.unknown_ids),
        "product": pc.is_product,
        "types": trace.type_counts,
        "skips": trace.undecided_skips,
    }, "ok"

cands = [json.loads(l) for l in open("tools/pipeline_candidates.jsonl")]
out = open("tools/chain_ok.jsonl", "w")
stats = {}
t0 = time.time()
for i, r in enumerate(cands):
    try:
        info, verdict = chain(r["text"])
    except HeegaardError as e:
        verdict = e.code
        info = None
    stats[verdict] = stats.get(verdict, 0) + 1
    if info is not None:
        out.write(json.dumps({"n": r["n"], "text": r["text"], **info}) + "\n")
        out.flush()
    if i % 20 == 0:
        print(i, stats, f"{time.time()-t0:.0f}s", flush=True)
print("DONE", stats)
