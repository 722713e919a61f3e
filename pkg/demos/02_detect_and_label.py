"""Detect planted compounds in a generated corpus and label their future.

Run: python3 demos/02_detect_and_label.py
"""

from tagmerge.compound import classify_trend, detect_candidates, label_candidate
from tagmerge.corpus import CorpusIndex, month_of
from tagmerge.errors import InsufficientHistoryError
from tagmerge.synth import generate, reference_scenario

result = generate(reference_scenario())
index = CorpusIndex(result.tweets)
print(f"corpus: {len(index)} tweets over {len(index.months)} months")

candidates = detect_candidates(index)
print(f"{len(candidates)} compound candidates (each splits one way into known tags)\n")

header = f"{'compound':>24} {'parts':>28} {'born':>8} {'2mo':>10} {'6mo':>10} {'10mo':>10} trend"
print(header)
for cand in candidates:
    labels = []
    for horizon in (2, 6, 10):
        try:
            labels.append(label_candidate(index, cand, horizon).value)
        except InsufficientHistoryError:
            labels.append("(short)")
    trend = classify_trend(index, cand).value if labels[2] == "Popular" else "-"
    parts = f"{cand.part_a.canonical}+{cand.part_b.canonical}"
    born = month_of(cand.compound_first_seen)
    print(f"{cand.compound.canonical:>24} {parts:>28} {born:>8} "
          f"{labels[0]:>10} {labels[1]:>10} {labels[2]:>10} {trend}")

# the generator's manifest records what it planted; the detector found it
planted = {row.compound for row in result.manifest}
found = {c.compound.canonical for c in candidates}
print(f"\nplanted == detected: {planted == found}")
