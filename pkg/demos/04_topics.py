"""Fit a small topic model and inspect what each topic collects.

Run: python3 demos/04_topics.py
"""

import numpy as np

from tagmerge.topicmodel import HashtagDocument, fit_lda

rng = np.random.default_rng(0)

weather = ("snow", "storm", "cold", "wind", "frost", "cloud")
sports = ("goal", "match", "score", "team", "coach", "season")

documents = []
for i in range(60):
    vocab = weather if i % 2 == 0 else sports
    tokens = tuple(vocab[int(j)] for j in rng.integers(0, len(vocab), size=18))
    documents.append(HashtagDocument(doc_id=f"doc{i:02d}", hashtag="demo", tokens=tokens))

# validate_every re-checks token bookkeeping after every sweep
model = fit_lda(documents, n_topics=2, alpha=0.5, iterations=200, seed=0, validate_every=1)

for k in range(2):
    top = ", ".join(model.top_words(k, 6))
    print(f"topic {k}: {top}")

phi = model.phi()
print(f"\ntopic-word rows sum to one: {np.allclose(phi.sum(axis=1), 1.0)}")

doc = documents[0].doc_id
print(f"{doc} words ranked within its own vocabulary: "
      f"{', '.join(model.top_words_in_doc(doc, 0, 4))}")
