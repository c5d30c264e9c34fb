import json, time, sys
sys.path.insert(0, "src")
from heegaard2.diagram import HeegaardDiagram
from heegaard2.groups import presentation, WordOracle, Budget, homology_order
from heegaard2.orders import search_positive_cone
from heegaard2.errors import ObstructionError, BudgetExceededError

rows = [json.loads(l) for l in open("tools/corpus_raw.jsonl")]
seen=set(); uniq=[]
for r in rows:
    if r["text"] not in seen:
        seen.add(r["text"]); uniq.append(r)
cands = [r for r in uniq if r["kind"]=="minimal" and r["n"]>=6]
cands.sort(key=lambda r: -r["n"])
out = open("tools/pipeline_candidates.jsonl", "w")
stats = {"finite":0, "cone_ok":0, "cone_ok_h1finite":0, "obstructed":0, "budget":0}
for i, r in enumerate(cands):
    d = HeegaardDiagram.parse(r["text"])
    p = presentation(d)
    oracle = WordOracle(p, Budget(max_coset_rows=2000))
    if oracle.group_order_if_finite() is not None:
        stats["finite"] += 1
        continue
    try:
        cone = search_positive_cone(p, 2, oracle=oracle, node_budget=100000)
    except ObstructionError:
        stats["obstructed"] += 1
        continue
    except BudgetExceededError:
        stats["budget"] += 1
        continue
    stats["cone_ok"] += 1
    h1 = homology_order(p)
    if h1 is not None:
        stats["cone_ok_h1finite"] += 1
    out.write(json.dumps({"n": r["n"], "h1": h1, "text": r["text"]}) + "\n")
    out.flush()
    if i % 200 == 0:
        print(i, stats, flush=True)
print("DONE", stats)
