# Copyright 2026 The kgnews Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Writes the reference ROUGE scores for the bundled corpus.

An independent implementation used only to produce data/rouge/oracle.json:
lowercase, strip ASCII punctuation, split on whitespace; clipped n-gram
overlap for ROUGE-N and an LCS table for ROUGE-L.

    python3 tools/rouge_oracle.py [--dir data/rouge]
"""

import argparse
import collections
import json
import pathlib
import string


def tokens(text):
    drop = str.maketrans("", "", string.punctuation)
    return text.lower().translate(drop).split()


def prf(hits, cand_total, ref_total):
    p = hits / cand_total if cand_total else 0.0
    r = hits / ref_total if ref_total else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return {"precision": p, "recall": r, "f1": f}


def rouge_n(cand, ref, n):
    grams = lambda ts: collections.Counter(tuple(ts[i:i + n]) for i in range(len(ts) - n + 1))
    c, r = grams(cand), grams(ref)
    hits = sum(min(v, r[k]) for k, v in c.items())
    return prf(hits, sum(c.values()), sum(r.values()))


def lcs(a, b):
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            table[i + 1][j + 1] = table[i][j] + 1 if x == y else max(table[i][j + 1], table[i + 1][j])
    return table[-1][-1]


def rouge_l(cand, ref):
    return prf(lcs(cand, ref), len(cand), len(ref))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "rouge"))
    root = pathlib.Path(ap.parse_args().dir)
    pairs = {}
    for cand_path in sorted((root / "candidate").glob("*.txt")):
        cand = tokens(cand_path.read_text())
        ref = tokens((root / "reference" / cand_path.name).read_text())
        pairs[cand_path.name] = {"1": rouge_n(cand, ref, 1), "2": rouge_n(cand, ref, 2),
                                 "L": rouge_l(cand, ref)}
    mean = {m: sum(p[m]["f1"] for p in pairs.values()) / len(pairs) for m in ("1", "2", "L")}
    (root / "oracle.json").write_text(json.dumps({"pairs": pairs, "mean_f1": mean},
                                                 indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
