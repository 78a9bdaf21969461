"""Extract the per-dissection symbol terms of generic G(a,...;x) from the reference text."""

import json
import re
import sys

FUNCS = {2: "G(a,b;x)", 3: "G(a,b,c;x)", 4: "G(a,b,c,d;x)"}
HEADS = {2: "weight two}", 3: "weight three}", 4: "weight four}"}


def extract(text):
    out = []
    for w in (2, 3, 4):
        start = text.index("symbol of a generic multiple polylogarithm of " + HEADS[w])
        end = text.index("\\end{center}", start)
        terms = re.findall(r"\$([+-]?\s*[a-z]{2}\s*\|[^$]*)\$", text[start:end])
        terms = [re.sub(r"\s+", " ", t.replace("\\sha", " sha ")).strip() for t in terms]
        terms = [t if t[0] in "+-" else "+" + t for t in terms]
        out.append({"weight": w, "function": FUNCS[w], "terms": terms})
    return out


if __name__ == "__main__":
    with open(sys.argv[1]) as f:
        data = extract(f.read())
    with open(sys.argv[2], "w") as f:
        f.write("[\n " + ",\n ".join(json.dumps(e) for e in data) + "\n]\n")
    for e in data:
        print(e["weight"], len(e["terms"]))
