"""Offline corpus search: find and freeze test diagrams.

Writes candidate diagrams as JSON lines to tools/corpus_raw.jsonl:
  kind "minimal": valid + tight + wave-free + all pair counts >= 1 +
                  both Whitehead forms recognized
  kind "reducible": valid + tight + has waves + minimize succeeds and lands
                  on a diagram passing the minimal filters (records both)
"""

import json
import random
import sys
import time

sys.path.insert(0, "src")

from heegaard2.diagram import HeegaardDiagram
from heegaard2.moves import complexity, find_all_waves, is_wave_free, minimize
from heegaard2.whitehead import CUT_ALONG_U, CUT_ALONG_V, whitehead_graph
from heegaard2.errors import HeegaardError


def random_diagram(n, rng):
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    k = rng.randint(1, n - 1)
    u1, u2 = ids[:k], ids[k:]
    ids2 = list(range(1, n + 1))
    rng.shuffle(ids2)
    l = rng.randint(1, n - 1)
    v1, v2 = ids2[:l], ids2[l:]
    signs = {x: rng.choice([1, -1]) for x in range(1, n + 1)}
    try:
        return HeegaardDiagram(n, u1, u2, v1, v2, signs)
    except HeegaardError:
        return None


def is_minimal_quality(d):
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
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 2024
    budget = float(sys.argv[2]) if len(sys.argv) > 2 else 600.0
    rng = random.Random(seed)
    t0 = time.time()
    seen = set()
    out = open("tools/corpus_raw.jsonl", "a")
    counts = {"minimal": 0, "reducible": 0}
    trials = 0
    while time.time() - t0 < budget:
        trials += 1
        n = rng.choice([4, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 12, 13, 14, 15, 16])
        d = random_diagram(n, rng)
        if d is None or not d.is_tight():
            continue
        key = d.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        try:
            waves = find_all_waves(d)
        except HeegaardError:
            continue
        if not waves:
            if is_minimal_quality(d):
                counts["minimal"] += 1
                out.write(json.dumps({"kind": "minimal", "n": d.vertex_count,
                                      "text": d.to_text()}) + "\n")
                out.flush()
        else:
            try:
                m = minimize(d)
            except HeegaardError:
                continue
            if is_minimal_quality(m):
                counts["reducible"] += 1
                out.write(json.dumps({
                    "kind": "reducible", "n": d.vertex_count,
                    "text": d.to_text(), "reduced": m.to_text(),
                    "reduced_c": complexity(m).as_tuple()}) + "\n")
                out.flush()
    print(f"seed={seed} trials={trials} counts={counts}")


if __name__ == "__main__":
    main()
