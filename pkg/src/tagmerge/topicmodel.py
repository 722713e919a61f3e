"""Latent topic structure of hashtag tweet collections.

Each hashtag-and-window pair becomes one bag-of-words document; topics are
fit by collapsed Gibbs sampling with symmetric priors. Sampling is seeded
and single-threaded, so a fixed seed reproduces the model bit for bit.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from .corpus import CorpusIndex, observation_window, tokenize

logger = logging.getLogger(__name__)

MODEL_FORMAT = "tagmerge-topics"
MODEL_VERSION = 1


@dataclass(frozen=True)
class HashtagDocument:
    """Concatenated tweet tokens of one hashtag over one time window."""

    doc_id: str
    hashtag: str
    tokens: tuple[str, ...]


def build_documents(
    index: CorpusIndex, hashtags: list[str], window: tuple[int, int]
) -> list[HashtagDocument]:
    """One document per hashtag from tweets inside the open window.

    Hashtag and mention tokens are dropped; what remains is the plain text
    vocabulary. Empty documents are kept but flagged in the log.
    """
    lo, hi = window
    docs = []
    for canon in hashtags:
        tokens: list[str] = []
        for tweet in index.tweets_between(canon, lo, hi):
            tokens.extend(tokenize(tweet.text, keep_tags=False, keep_mentions=False))
        if not tokens:
            logger.warning("document for %r over (%d, %d) is empty", canon, lo, hi)
        docs.append(HashtagDocument(doc_id=f"{canon}@{hi}", hashtag=canon, tokens=tuple(tokens)))
    return docs


class TopicModel:
    """Fitted LDA state: final-sweep count matrices plus priors."""

    def __init__(
        self,
        n_topics: int,
        alpha: float,
        beta: float,
        vocab: tuple[str, ...],
        doc_ids: tuple[str, ...],
        word_topic: np.ndarray,
        doc_topic: np.ndarray,
        doc_vocab: tuple[frozenset[int], ...],
        seed: int,
        iterations: int,
    ):
        self.n_topics = n_topics
        self.alpha = alpha
        self.beta = beta
        self.vocab = vocab
        self.word_index = {w: i for i, w in enumerate(vocab)}
        self.doc_ids = doc_ids
        self.doc_index = {d: i for i, d in enumerate(doc_ids)}
        self.word_topic = word_topic  # V x K
        self.doc_topic = doc_topic  # D x K
        self.doc_vocab = doc_vocab
        self.seed = seed
        self.iterations = iterations

    @property
    def topic_totals(self) -> np.ndarray:
        return self.word_topic.sum(axis=0)

    def phi(self) -> np.ndarray:
        """Topic-word probabilities, rows (topics) summing to one."""
        v = len(self.vocab)
        totals = self.topic_totals[:, None].astype(float)
        return (self.word_topic.T + self.beta) / (totals + v * self.beta)

    def has_doc(self, doc_id: str) -> bool:
        return doc_id in self.doc_index

    def top_words(self, topic: int, n: int = 100) -> list[str]:
        """Highest-probability words of a topic; ties resolve alphabetically."""
        if not 0 <= topic < self.n_topics:
            raise ValueError(f"topic {topic} out of range")
        column = self.word_topic[:, topic]
        order = sorted(range(len(self.vocab)), key=lambda i: (-column[i], self.vocab[i]))
        return [self.vocab[i] for i in order[:n]]

    def top_words_in_doc(self, doc_id: str, topic: int, n: int = 100) -> list[str]:
        """Topic ranking restricted to words the document actually contains."""
        if not self.has_doc(doc_id):
            raise ValueError(f"model was not fitted over document {doc_id!r}")
        if not 0 <= topic < self.n_topics:
            raise ValueError(f"topic {topic} out of range")
        column = self.word_topic[:, topic]
        members = sorted(self.doc_vocab[self.doc_index[doc_id]])
        order = sorted(members, key=lambda i: (-column[i], self.vocab[i]))
        return [self.vocab[i] for i in order[:n]]

    def to_payload(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "n_topics": self.n_topics,
            "alpha": self.alpha,
            "beta": self.beta,
            "seed": self.seed,
            "iterations": self.iterations,
            "vocab": list(self.vocab),
            "doc_ids": list(self.doc_ids),
            "word_topic": self.word_topic.tolist(),
            "doc_topic": self.doc_topic.tolist(),
            "doc_vocab": [sorted(s) for s in self.doc_vocab],
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":")))
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "TopicModel":
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        if payload.get("format") != MODEL_FORMAT or payload.get("version") != MODEL_VERSION:
            raise ValueError(f"{path}: not a supported topic model file")
        return cls(
            n_topics=payload["n_topics"],
            alpha=payload["alpha"],
            beta=payload["beta"],
            vocab=tuple(payload["vocab"]),
            doc_ids=tuple(payload["doc_ids"]),
            word_topic=np.array(payload["word_topic"], dtype=np.int64),
            doc_topic=np.array(payload["doc_topic"], dtype=np.int64),
            doc_vocab=tuple(frozenset(s) for s in payload["doc_vocab"]),
            seed=payload["seed"],
            iterations=payload["iterations"],
        )


def fit_lda(
    documents: list[HashtagDocument],
    n_topics: int,
    alpha: float | None = None,
    beta: float = 0.01,
    iterations: int = 1000,
    seed: int = 0,
    validate_every: int | None = None,
) -> TopicModel:
    """Collapsed Gibbs sampling over the document set.

    alpha defaults to 50 / n_topics. With `validate_every` set, token count
    bookkeeping is re-checked after every so many sweeps and any imbalance
    raises immediately.
    """
    if n_topics < 2:
        raise ValueError(f"need at least 2 topics, got {n_topics}")
    if iterations < 1:
        raise ValueError("iterations must be positive")
    if alpha is None:
        alpha = 50.0 / n_topics
    vocab = tuple(sorted({tok for doc in documents for tok in doc.tokens}))
    if not vocab:
        raise ValueError("all documents are empty, nothing to fit")
    word_index = {w: i for i, w in enumerate(vocab)}

    doc_of: list[int] = []
    word_of: list[int] = []
    for d, doc in enumerate(documents):
        for tok in doc.tokens:
            doc_of.append(d)
            word_of.append(word_index[tok])
    doc_arr = np.array(doc_of, dtype=np.int64)
    word_arr = np.array(word_of, dtype=np.int64)
    n_tokens = len(word_arr)
    n_docs = len(documents)
    v = len(vocab)

    rng = np.random.default_rng(seed)
    assignments = rng.integers(0, n_topics, size=n_tokens)

    word_topic = np.zeros((v, n_topics), dtype=np.int64)
    doc_topic = np.zeros((n_docs, n_topics), dtype=np.int64)
    topic_total = np.zeros(n_topics, dtype=np.int64)
    np.add.at(word_topic, (word_arr, assignments), 1)
    np.add.at(doc_topic, (doc_arr, assignments), 1)
    np.add.at(topic_total, assignments, 1)

    v_beta = v * beta
    for sweep in range(iterations):
        for t in range(n_tokens):
            w = word_arr[t]
            d = doc_arr[t]
            k = assignments[t]
            word_topic[w, k] -= 1
            doc_topic[d, k] -= 1
            topic_total[k] -= 1
            weights = (word_topic[w] + beta) * (doc_topic[d] + alpha) / (topic_total + v_beta)
            cum = np.cumsum(weights)
            draw = rng.random() * cum[-1]
            k_new = int(np.searchsorted(cum, draw, side="right"))
            if k_new == n_topics:
                k_new = n_topics - 1
            assignments[t] = k_new
            word_topic[w, k_new] += 1
            doc_topic[d, k_new] += 1
            topic_total[k_new] += 1
        if validate_every and (sweep + 1) % validate_every == 0:
            _check_counts(word_topic, doc_topic, topic_total, n_tokens, assignments, n_topics)

    _check_counts(word_topic, doc_topic, topic_total, n_tokens, assignments, n_topics)
    doc_vocab = tuple(
        frozenset(int(w) for w in np.unique(word_arr[doc_arr == d])) for d in range(n_docs)
    )
    return TopicModel(
        n_topics=n_topics,
        alpha=alpha,
        beta=beta,
        vocab=vocab,
        doc_ids=tuple(doc.doc_id for doc in documents),
        word_topic=word_topic,
        doc_topic=doc_topic,
        doc_vocab=doc_vocab,
        seed=seed,
        iterations=iterations,
    )


def _check_counts(word_topic, doc_topic, topic_total, n_tokens, assignments, n_topics):
    if int(word_topic.sum()) != n_tokens or int(doc_topic.sum()) != n_tokens:
        raise AssertionError("token counts drifted during sampling")
    if int(topic_total.sum()) != n_tokens:
        raise AssertionError("topic totals drifted during sampling")
    if not np.array_equal(word_topic.sum(axis=0), topic_total):
        raise AssertionError("word-topic matrix disagrees with topic totals")
    if assignments.min() < 0 or assignments.max() >= n_topics:
        raise AssertionError("topic assignment out of range")


def top_words(model: TopicModel, topic: int, n: int = 100) -> list[str]:
    return model.top_words(topic, n)


def fit_candidate_topics(
    index: CorpusIndex,
    candidates,
    n_topics: int,
    obs_months: int = 6,
    alpha: float | None = None,
    beta: float = 0.01,
    iterations: int = 1000,
    seed: int = 0,
) -> tuple[TopicModel, dict[tuple[str, int], str]]:
    """Fit one model over every constituent document of the given candidates.

    Each constituent contributes a document over that candidate's own
    observation window, so the model never sees text from a candidate's
    future. Returns the model plus a (hashtag, t0) -> doc_id map.
    """
    doc_keys: dict[tuple[str, int], str] = {}
    documents: list[HashtagDocument] = []
    for cand in candidates:
        window = observation_window(cand.compound_first_seen, obs_months)
        for part in (cand.part_a.canonical, cand.part_b.canonical):
            key = (part, cand.compound_first_seen)
            if key in doc_keys:
                continue
            doc = build_documents(index, [part], window)[0]
            doc_keys[key] = doc.doc_id
            documents.append(doc)
    documents.sort(key=lambda d: d.doc_id)
    model = fit_lda(
        documents, n_topics=n_topics, alpha=alpha, beta=beta, iterations=iterations, seed=seed
    )
    return model, doc_keys
