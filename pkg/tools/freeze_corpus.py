"""Assemble the frozen test corpus from search results.

Writes tests/data/*.hd plus tests/data/manifest.json.  Members:

* minimal:  valid + tight + wave-free (subarc and chord) + both Whitehead
  forms recognized + every meridian pair crossing
* planted_wave: has waves; minimize lands on a minimal-quality diagram
* planted_bigon: a minimal member with one finger bigon inserted
* filling_only: valid larger diagrams for the Euler/face suite (grown by
  finger isotopies, so not minimal-position; excluded from form criteria)
* pipeline: minimal members whose full order-and-splitting chain runs
  without halting (from tools/pipeline_found_*.jsonl when present)
"""

import glob
import json
import pathlib
import sys

sys.path.insert(0, "src")

from heegaard2.diagram import HeegaardDiagram
from heegaard2.whitehead import CUT_ALONG_U, CUT_ALONG_V, whitehead_graph
from heegaard2.groups import presentation, homology_order
from heegaard2.moves import complexity, find_all_waves, is_wave_free, minimize
from heegaard2.plant import plant_bigon, plant_finger
from heegaard2.errors import HeegaardError

DATA = pathlib.Path("tests/data")


def quality(d):
    if not d.is_tight():
        return False
    m = d.crossing_matrix()
    if min(m[0][0], m[0][1], m[1][0], m[1][1]) < 1:
        return False
    if not is_wave_free(d):
        return False
    if whitehead_graph(d, CUT_ALONG_V).form == "Unrecognized":
        return False
    if whitehead_graph(d, CUT_ALONG_U).form == "Unrecognized":
        return False
    return True


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for old in DATA.glob("*.hd"):
        old.unlink()
    refiltered = json.load(open("tools/corpus_refiltered.json"))
    manifest = []

    pipeline_texts = []
    for path in sorted(glob.glob("tools/pipeline_found_*.jsonl")):
        for line in open(path):
            pipeline_texts.append(json.loads(line))

    # pipeline members first (they are also minimal-quality)
    seen = set()
    count = 0
    for r in pipeline_texts:
        d = HeegaardDiagram.parse(r["text"])
        if not quality(d):
            continue
        if d.canonical_key() in seen:
            continue
        seen.add(d.canonical_key())
        name = f"pipe_{count:02d}_n{r['n']}.hd"
        (DATA / name).write_text(d.to_text())
        p = presentation(d)
        manifest.append({
            "file": name, "kind": "pipeline", "n": r["n"],
            "form_v": whitehead_graph(d, CUT_ALONG_V).form,
            "form_u": whitehead_graph(d, CUT_ALONG_U).form,
            "complexity": list(complexity(d).as_tuple()),
            "h1": homology_order(p),
        })
        count += 1
        if count >= 4:
            break

    # minimal members: spread sizes and forms
    by_bucket = {}
    for r in refiltered["good"]:
        d = HeegaardDiagram.parse(r["text"])
        if d.canonical_key() in seen:
            continue
        fv = whitehead_graph(d, CUT_ALONG_V).form
        fu = whitehead_graph(d, CUT_ALONG_U).form
        by_bucket.setdefault((r["n"], fv, fu), []).append((r, fv, fu))
    picked = []
    want_small = [4, 5]
    for key in sorted(by_bucket, key=lambda k: (-k[0], k[1], k[2])):
        if len(picked) >= 8:
            break
        picked.append(by_bucket[key][0])
    for n_small in want_small:
        for key in sorted(by_bucket):
            if key[0] == n_small:
                picked.append(by_bucket[key][0])
                break
    if not any(r["n"] == 8 for r, _, _ in picked):
        for key in sorted(by_bucket):
            if key[0] == 8:
                picked.append(by_bucket[key][0])
                break

    minimal_members = []
    for i, (r, fv, fu) in enumerate(picked):
        d = HeegaardDiagram.parse(r["text"])
        if d.canonical_key() in seen:
            continue
        seen.add(d.canonical_key())
        name = f"min_{i:02d}_n{r['n']}.hd"
        (DATA / name).write_text(r["text"])
        p = presentation(d)
        manifest.append({
            "file": name, "kind": "minimal", "n": r["n"],
            "form_v": fv, "form_u": fu,
            "complexity": list(complexity(d).as_tuple()),
            "h1": homology_order(p),
        })
        minimal_members.append(d)

    # reducible members with frozen reductions
    seen_red = set()
    count = 0
    for r in refiltered["red"]:
        if count >= 4:
            break
        d = HeegaardDiagram.parse(r["text"])
        try:
            m = minimize(d)
        except HeegaardError:
            continue
        if not quality(m) or m.canonical_key() in seen_red:
            continue
        seen_red.add(m.canonical_key())
        name = f"wave_{count:02d}_n{r['n']}.hd"
        (DATA / name).write_text(r["text"])
        manifest.append({
            "file": name, "kind": "planted_wave", "n": r["n"],
            "reduced": m.to_text(),
            "reduced_complexity": list(complexity(m).as_tuple()),
            "wave_count": len(find_all_waves(d)),
        })
        count += 1

    # planted bigons on minimal members
    count = 0
    for d in minimal_members:
        if count >= 3:
            break
        b = plant_bigon(d)
        if b is None:
            continue
        name = f"bigon_{count:02d}_n{b.vertex_count}.hd"
        (DATA / name).write_text(b.to_text())
        manifest.append({
            "file": name, "kind": "planted_bigon", "n": b.vertex_count,
            "bigons": len(b.find_bigons()), "tightened_n": d.vertex_count,
        })
        count += 1

    # filling-only members grown by finger isotopies up to large sizes
    grown = []
    targets = [14, 20, 28, 38]
    for base in minimal_members:
        cur = base
        remaining = list(targets)
        while remaining and cur.vertex_count < 40:
            nxt = plant_finger(cur, same_curve=False)
            if nxt is None:
                break
            cur = nxt
            if cur.vertex_count >= remaining[0]:
                grown.append(cur)
                remaining.pop(0)
        if not remaining:
            break
        grown = []
    for i, d in enumerate(grown):
        name = f"fill_{i:02d}_n{d.vertex_count}.hd"
        (DATA / name).write_text(d.to_text())
        manifest.append({
            "file": name, "kind": "filling_only", "n": d.vertex_count,
        })

    (DATA / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    print(f"froze {len(manifest)} corpus members")
    for m in manifest:
        print(" ", m["file"], m["kind"], m["n"], m.get("form_v", ""),
              m.get("form_u", ""), m.get("h1", ""))


if __name__ == "__main__":
    main()
