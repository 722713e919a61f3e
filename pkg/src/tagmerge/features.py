"""Socio-linguistic features of compound candidates.

Every extractor reads only tweets inside the candidate's observation
window, the open interval of `obs_months` months ending at the compounding
instant. Nothing at or after t0 may influence a vector; appending later
tweets to the corpus must leave previously computed vectors bit-identical.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .compound import CompoundCandidate, segment_hashtag
from .corpus import CorpusIndex, Tweet, observation_window, tokenize
from .errors import InsufficientHistoryError
from .lexicon import Dictionary, EntityGazetteer, NgramTable, PosLexicon, ner_tag, pos_tag
from .topicmodel import TopicModel

logger = logging.getLogger(__name__)

GROUP_HASHTAG = "hashtag_content"
GROUP_TWEET = "tweet_content"
GROUP_USER = "user"
GROUPS = (GROUP_HASHTAG, GROUP_TWEET, GROUP_USER)

POS_SLOTS = 20
NE_SLOTS = 20
OOV_PAIRS = ("INV-INV", "INV-OOV", "OOV-INV", "OOV-OOV")

SCHEMA_FORMAT = "tagmerge-features"
SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# distribution helpers

def entropy(weights: Sequence[float] | np.ndarray) -> float:
    """Shannon entropy in nats of a count or probability vector."""
    arr = np.asarray(weights, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("entropy needs a non-empty 1-d vector")
    if np.any(arr < 0):
        raise ValueError("entropy weights must be non-negative")
    total = arr.sum()
    if total <= 0:
        raise ValueError("entropy weights must not all be zero")
    p = arr / total
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def kl_divergence(p: Sequence[float] | np.ndarray, q: Sequence[float] | np.ndarray) -> float:
    """KL(p || q) in nats. q must dominate p (q > 0 wherever p > 0)."""
    p_arr = np.asarray(p, dtype=float)
    q_arr = np.asarray(q, dtype=float)
    if p_arr.shape != q_arr.shape or p_arr.ndim != 1:
        raise ValueError("kl_divergence needs two 1-d vectors of equal length")
    p_arr = p_arr / p_arr.sum()
    q_arr = q_arr / q_arr.sum()
    mask = p_arr > 0
    if np.any(q_arr[mask] <= 0):
        raise ValueError("q must be positive wherever p is positive")
    return float(np.sum(p_arr[mask] * np.log(p_arr[mask] / q_arr[mask])))


def overlap_coefficient(a: set, b: set) -> float:
    """|A n B| / min(|A|, |B|); zero when either set is empty."""
    if not a or not b:
        return 0.0
    return len(a & b) / min(len(a), len(b))


# ---------------------------------------------------------------------------
# schema types

@dataclass(frozen=True)
class ObservationConfig:
    """Windowing and model-size settings a feature schema depends on."""

    obs_months: int = 6
    horizon_months: int = 10
    lda_topics: int = 30


@dataclass(frozen=True)
class ZoneCombo:
    """Tag pairs observed at one candidate's compounding zone."""

    pos: tuple[str, str]
    ne: tuple[str, str]
    oov: str


@dataclass(frozen=True)
class ComboSchema:
    """Frozen top-pair lists backing the binary combination features.

    Each of the 20 POS and 20 NE slots is bound to a pair or left unbound;
    unbound slots always emit zero. Binding happens once, on training data.
    """

    pos_pairs: tuple[tuple[str, str] | None, ...]
    ne_pairs: tuple[tuple[str, str] | None, ...]

    def __post_init__(self):
        if len(self.pos_pairs) != POS_SLOTS or len(self.ne_pairs) != NE_SLOTS:
            raise ValueError(f"combo schema must have {POS_SLOTS}+{NE_SLOTS} slots")

    def to_payload(self) -> dict:
        return {
            "pos_pairs": [" ".join(p) if p else None for p in self.pos_pairs],
            "ne_pairs": [" ".join(p) if p else None for p in self.ne_pairs],
            "oov_pairs": list(OOV_PAIRS),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "ComboSchema":
        def parse(items):
            return tuple(tuple(s.split(" ", 1)) if s else None for s in items)

        return cls(pos_pairs=parse(payload["pos_pairs"]), ne_pairs=parse(payload["ne_pairs"]))


def _slot_names() -> tuple[list[str], list[str], list[str]]:
    pos = [f"pos_combo_{i:02d}" for i in range(POS_SLOTS)]
    ne = [f"ne_combo_{i:02d}" for i in range(NE_SLOTS)]
    oov = [f"zone_{p.lower().replace('-', '_')}" for p in OOV_PAIRS]
    return pos, ne, oov


def feature_layout() -> tuple[tuple[str, ...], dict[str, str], frozenset[str]]:
    """Canonical feature order, group tags, and the binary feature set."""
    pos_names, ne_names, oov_names = _slot_names()
    names: list[str] = ["char_length", "word_count", "ngram_presence", "pos_diversity"]
    names += pos_names + ne_names + oov_names
    tweet_names = [
        "word_overlap",
        "ngram_overlap",
        "avg_common_ngram_freq",
        "collocation_frequency",
        "clarity_a",
        "clarity_b",
        "word_diversity_a",
        "word_diversity_b",
        "topic_overlap",
    ]
    user_names = [
        "unique_users_a",
        "unique_users_b",
        "common_users",
        "unique_mentions_a",
        "unique_mentions_b",
        "common_mentions",
        "unique_retweets_a",
        "unique_retweets_b",
        "common_retweets",
    ]
    names += tweet_names + user_names
    groups = {n: GROUP_HASHTAG for n in names[: 4 + POS_SLOTS + NE_SLOTS + len(OOV_PAIRS)]}
    groups.update({n: GROUP_TWEET for n in tweet_names})
    groups.update({n: GROUP_USER for n in user_names})
    binary = frozenset(["ngram_presence"] + pos_names + ne_names + oov_names)
    return tuple(names), groups, binary


@dataclass(frozen=True)
class FeatureSchema:
    """Names, groups, combo bindings, and config behind a feature matrix."""

    names: tuple[str, ...]
    groups: dict[str, str]
    binary: frozenset[str]
    combo: ComboSchema
    config: ObservationConfig

    @property
    def schema_id(self) -> str:
        payload = json.dumps(
            {
                "names": list(self.names),
                "groups": self.groups,
                "combo": self.combo.to_payload(),
                "config": [self.config.obs_months, self.config.horizon_months, self.config.lda_topics],
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:12]

    def binary_mask(self) -> np.ndarray:
        return np.array([n in self.binary for n in self.names], dtype=bool)


@dataclass(frozen=True)
class FeatureVector:
    """One candidate's features, keyed by name in schema order."""

    values: dict[str, float]
    schema_id: str

    def as_array(self, names: Sequence[str]) -> np.ndarray:
        return np.array([self.values[n] for n in names], dtype=float)


def derive_combo_schema(combos: Iterable[ZoneCombo]) -> ComboSchema:
    """Bind the top-20 POS and NE pair slots by training-set prevalence.

    POS pairs touching the unknown tag X and the all-none NE pair carry no
    signal and are never bound. Ties break on the pair spelling so the
    binding is deterministic.
    """
    pos_counts: dict[tuple[str, str], int] = {}
    ne_counts: dict[tuple[str, str], int] = {}
    for combo in combos:
        if "X" not in combo.pos:
            pos_counts[combo.pos] = pos_counts.get(combo.pos, 0) + 1
        if combo.ne != ("none", "none"):
            ne_counts[combo.ne] = ne_counts.get(combo.ne, 0) + 1

    def top(counts: dict[tuple[str, str], int], slots: int):
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        pairs: list[tuple[str, str] | None] = [pair for pair, _ in ranked[:slots]]
        pairs += [None] * (slots - len(pairs))
        return tuple(pairs)

    return ComboSchema(pos_pairs=top(pos_counts, POS_SLOTS), ne_pairs=top(ne_counts, NE_SLOTS))


def build_schema(combos: Iterable[ZoneCombo], config: ObservationConfig) -> FeatureSchema:
    names, groups, binary = feature_layout()
    return FeatureSchema(
        names=names,
        groups=groups,
        binary=binary,
        combo=derive_combo_schema(combos),
        config=config,
    )


# ---------------------------------------------------------------------------
# hashtag content features

def char_length(candidate: CompoundCandidate) -> int:
    return len(candidate.compound.canonical)


def word_count(candidate: CompoundCandidate, dictionary: Dictionary) -> int:
    return len(segment_hashtag(candidate.compound, dictionary))


def ngram_presence(candidate: CompoundCandidate, dictionary: Dictionary, table: NgramTable) -> int:
    """1 when any 2..5-word window of the segmented compound is a known phrase."""
    words = [w.lower() for w in segment_hashtag(candidate.compound, dictionary)]
    for n in range(2, 6):
        for i in range(len(words) - n + 1):
            if " ".join(words[i : i + n]) in table.entries:
                return 1
    return 0


def pos_diversity(
    candidate: CompoundCandidate, pos_lexicon: PosLexicon, dictionary: Dictionary
) -> float:
    """Entropy of the POS tag distribution over the compound's words."""
    words = segment_hashtag(candidate.compound, dictionary)
    tags = pos_tag(pos_lexicon, words)
    counts: dict[str, int] = {}
    for tag in tags:
        counts[tag] = counts.get(tag, 0) + 1
    return entropy(list(counts.values()))


def compounding_zone(candidate: CompoundCandidate, dictionary: Dictionary) -> tuple[str, str]:
    """Last word of the first constituent and first word of the second."""
    left = segment_hashtag(candidate.part_a, dictionary)
    right = segment_hashtag(candidate.part_b, dictionary)
    return left[-1], right[0]


def zone_combo(
    candidate: CompoundCandidate,
    dictionary: Dictionary,
    pos_lexicon: PosLexicon,
    gazetteer: EntityGazetteer,
) -> ZoneCombo:
    """POS, entity, and vocabulary-membership pairs at the compounding zone.

    The two zone words are tagged as one sequence, so a gazetteer phrase
    spanning the boundary yields a B-/I- pair.
    """
    word_a, word_b = compounding_zone(candidate, dictionary)
    pos_pair = tuple(pos_tag(pos_lexicon, [word_a, word_b]))
    ne_pair = tuple(ner_tag(gazetteer, [word_a, word_b]))
    status_a = "INV" if word_a.lower() in dictionary.words else "OOV"
    status_b = "INV" if word_b.lower() in dictionary.words else "OOV"
    return ZoneCombo(pos=pos_pair, ne=ne_pair, oov=f"{status_a}-{status_b}")


def combo_bits(combo: ZoneCombo, schema: ComboSchema) -> dict[str, float]:
    """Expand one zone combo into the 44 binary slot values."""
    pos_names, ne_names, oov_names = _slot_names()
    out: dict[str, float] = {}
    for name, pair in zip(pos_names, schema.pos_pairs):
        out[name] = 1.0 if pair is not None and pair == combo.pos else 0.0
    for name, pair in zip(ne_names, schema.ne_pairs):
        out[name] = 1.0 if pair is not None and pair == combo.ne else 0.0
    for name, pair in zip(oov_names, OOV_PAIRS):
        out[name] = 1.0 if combo.oov == pair else 0.0
    return out


def combo_features(
    candidate: CompoundCandidate,
    schema: ComboSchema | None,
    dictionary: Dictionary,
    pos_lexicon: PosLexicon,
    gazetteer: EntityGazetteer,
) -> dict[str, float]:
    if schema is None:
        raise ValueError("combo features need a derived schema")
    combo = zone_combo(candidate, dictionary, pos_lexicon, gazetteer)
    return combo_bits(combo, schema)


# ---------------------------------------------------------------------------
# tweet content features

def _token_sets(tweets: Sequence[Tweet]) -> set[str]:
    out: set[str] = set()
    for tweet in tweets:
        out.update(tokenize(tweet.text))
    return out


def word_overlap(tweets_a: Sequence[Tweet], tweets_b: Sequence[Tweet]) -> float:
    """Overlap coefficient of the token sets of two tweet collections."""
    return overlap_coefficient(_token_sets(tweets_a), _token_sets(tweets_b))


def _valid_ngrams(tweets: Sequence[Tweet], table: NgramTable) -> set[str]:
    """Known phrases among the 2..5-token windows of each tweet."""
    found: set[str] = set()
    for tweet in tweets:
        toks = tokenize(tweet.text)
        for n in range(2, 6):
            for i in range(len(toks) - n + 1):
                phrase = " ".join(toks[i : i + n])
                if phrase in table.entries:
                    found.add(phrase)
    return found


def ngram_overlap(
    tweets_a: Sequence[Tweet], tweets_b: Sequence[Tweet], table: NgramTable
) -> float:
    """Overlap coefficient of the valid n-gram sets of two tweet collections."""
    return overlap_coefficient(_valid_ngrams(tweets_a, table), _valid_ngrams(tweets_b, table))


def avg_common_ngram_freq(
    tweets_a: Sequence[Tweet], tweets_b: Sequence[Tweet], table: NgramTable
) -> float:
    """Mean table frequency of the n-grams both collections share."""
    common = _valid_ngrams(tweets_a, table) & _valid_ngrams(tweets_b, table)
    if not common:
        return 0.0
    return float(np.mean([table.entries[g] for g in sorted(common)]))


def collocation_frequency(
    index: CorpusIndex, part_a: str, part_b: str, window: tuple[int, int]
) -> int:
    """Tweets in the window mentioning both constituent hashtags."""
    count = 0
    for tweet in index.tweets_between(part_a, *window):
        if part_b in tweet.hashtag_canonicals:
            count += 1
    return count


def hashtag_clarity(
    index: CorpusIndex, canonical: str, window: tuple[int, int], eps: float = 1e-6
) -> float:
    """KL divergence of the hashtag's language model from the background.

    High divergence means focused use. The background is the corpus token
    distribution up to the window's end, additively smoothed over its own
    vocabulary for the hashtag side; an empty collection scores zero.
    """
    bg_counts, bg_total = index.background_before(window[1])
    counts = np.zeros(len(index.vocabulary), dtype=np.int64)
    n_tokens = 0
    for tweet in index.tweets_between(canonical, *window):
        for tok in index.tokens_of(tweet):
            counts[index.word_index(tok)] += 1
            n_tokens += 1
    if n_tokens == 0:
        logger.warning("hashtag %r has no tweets in window, clarity set to 0", canonical)
        return 0.0
    support = bg_counts > 0
    v = int(support.sum())
    p = (counts[support] + eps) / (n_tokens + eps * v)
    q = bg_counts[support] / bg_total
    return float(np.sum(p * np.log(p / q)))


def word_diversity(index: CorpusIndex, canonical: str, window: tuple[int, int]) -> float:
    """Entropy of the hashtag's in-window unigram distribution."""
    counts: dict[str, int] = {}
    for tweet in index.tweets_between(canonical, *window):
        for tok in index.tokens_of(tweet):
            counts[tok] = counts.get(tok, 0) + 1
    if not counts:
        logger.warning("hashtag %r has no tweets in window, diversity set to 0", canonical)
        return 0.0
    return entropy(list(counts.values()))


def avg_topic_overlap(model: TopicModel, doc_a: str, doc_b: str, top_n: int = 100) -> float:
    """Mean per-topic overlap of the two documents' top-ranked words.

    For each topic the words of a document are ranked by that topic's
    word probabilities; the count of shared top words is averaged over
    topics.
    """
    if not model.has_doc(doc_a) or not model.has_doc(doc_b):
        raise ValueError(f"model was not fitted over both {doc_a!r} and {doc_b!r}")
    total = 0
    for k in range(model.n_topics):
        set_a = set(model.top_words_in_doc(doc_a, k, top_n))
        set_b = set(model.top_words_in_doc(doc_b, k, top_n))
        total += len(set_a & set_b)
    return total / model.n_topics


# ---------------------------------------------------------------------------
# user features

def user_features(
    index: CorpusIndex, part_a: str, part_b: str, window: tuple[int, int]
) -> dict[str, float]:
    """Audience statistics of both constituents over the window.

    Counts are of distinct user ids, distinct mentioned ids, and distinct
    retweet tweet ids; "common" counts the intersection.
    """
    tweets_a = index.tweets_between(part_a, *window)
    tweets_b = index.tweets_between(part_b, *window)
    users_a = {t.user_id for t in tweets_a}
    users_b = {t.user_id for t in tweets_b}
    mentions_a = {m for t in tweets_a for m in t.mentions}
    mentions_b = {m for t in tweets_b for m in t.mentions}
    retweets_a = {t.id for t in tweets_a if t.retweet_of is not None}
    retweets_b = {t.id for t in tweets_b if t.retweet_of is not None}
    return {
        "unique_users_a": float(len(users_a)),
        "unique_users_b": float(len(users_b)),
        "common_users": float(len(users_a & users_b)),
        "unique_mentions_a": float(len(mentions_a)),
        "unique_mentions_b": float(len(mentions_b)),
        "common_mentions": float(len(mentions_a & mentions_b)),
        "unique_retweets_a": float(len(retweets_a)),
        "unique_retweets_b": float(len(retweets_b)),
        "common_retweets": float(len(retweets_a & retweets_b)),
    }


# ---------------------------------------------------------------------------
# assembly

@dataclass
class FeatureResources:
    """Everything featurization needs beyond the corpus index."""

    dictionary: Dictionary
    ngrams: NgramTable
    pos_lexicon: PosLexicon
    gazetteer: EntityGazetteer
    topic_model: TopicModel | None = None
    topic_doc_keys: dict[tuple[str, int], str] | None = None


def featurize(
    candidate: CompoundCandidate,
    index: CorpusIndex,
    resources: FeatureResources,
    schema: FeatureSchema,
    combo: ZoneCombo | None = None,
) -> FeatureVector:
    """Full feature vector of one eligible candidate.

    Raises InsufficientHistoryError when the corpus does not span the whole
    observation window, and ValueError when the topic model does not cover
    the candidate's constituent documents.
    """
    if schema is None:
        raise ValueError("featurize needs a derived schema")
    config = schema.config
    t0 = candidate.compound_first_seen
    window = observation_window(t0, config.obs_months)
    if window[0] < index.coverage_start:
        raise InsufficientHistoryError(
            f"observation window of {candidate.compound.canonical!r} starts before corpus coverage"
        )

    part_a = candidate.part_a.canonical
    part_b = candidate.part_b.canonical
    tweets_a = index.tweets_between(part_a, *window)
    tweets_b = index.tweets_between(part_b, *window)

    values: dict[str, float] = {}
    values["char_length"] = float(char_length(candidate))
    values["word_count"] = float(word_count(candidate, resources.dictionary))
    values["ngram_presence"] = float(
        ngram_presence(candidate, resources.dictionary, resources.ngrams)
    )
    values["pos_diversity"] = pos_diversity(candidate, resources.pos_lexicon, resources.dictionary)

    if combo is None:
        combo = zone_combo(
            candidate, resources.dictionary, resources.pos_lexicon, resources.gazetteer
        )
    values.update(combo_bits(combo, schema.combo))

    values["word_overlap"] = word_overlap(tweets_a, tweets_b)
    values["ngram_overlap"] = ngram_overlap(tweets_a, tweets_b, resources.ngrams)
    values["avg_common_ngram_freq"] = avg_common_ngram_freq(tweets_a, tweets_b, resources.ngrams)
    values["collocation_frequency"] = float(
        collocation_frequency(index, part_a, part_b, window)
    )
    values["clarity_a"] = hashtag_clarity(index, part_a, window)
    values["clarity_b"] = hashtag_clarity(index, part_b, window)
    values["word_diversity_a"] = word_diversity(index, part_a, window)
    values["word_diversity_b"] = word_diversity(index, part_b, window)

    if resources.topic_model is None or resources.topic_doc_keys is None:
        raise ValueError("featurize needs a fitted topic model and its document keys")
    try:
        doc_a = resources.topic_doc_keys[(part_a, t0)]
        doc_b = resources.topic_doc_keys[(part_b, t0)]
    except KeyError as exc:
        raise ValueError(
            f"topic model lacks a document for constituent {exc.args[0]!r}"
        ) from None
    values["topic_overlap"] = avg_topic_overlap(resources.topic_model, doc_a, doc_b)

    values.update(user_features(index, part_a, part_b, window))

    ordered = {name: values[name] for name in schema.names}
    return FeatureVector(values=ordered, schema_id=schema.schema_id)


def featurize_all(
    candidates: Sequence[CompoundCandidate],
    index: CorpusIndex,
    resources: FeatureResources,
    schema: FeatureSchema,
) -> tuple[list[FeatureVector], list[ZoneCombo]]:
    """Vectors and zone combos for many candidates, in input order.

    Candidates are processed by ascending compounding time so the
    background cursor only moves forward.
    """
    combos = [
        zone_combo(c, resources.dictionary, resources.pos_lexicon, resources.gazetteer)
        for c in candidates
    ]
    vectors: list[FeatureVector | None] = [None] * len(candidates)
    order = sorted(range(len(candidates)), key=lambda i: candidates[i].compound_first_seen)
    for i in order:
        vectors[i] = featurize(candidates[i], index, resources, schema, combo=combos[i])
    return vectors, combos  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# feature matrix files

def _sidecar_path(csv_path) -> str:
    base = str(csv_path)
    if base.endswith(".csv"):
        base = base[: -len(".csv")]
    return base + ".schema.json"


def write_feature_csv(
    path,
    vectors: Sequence[FeatureVector],
    labels: Sequence[int],
    schema: FeatureSchema,
    combos: Sequence[ZoneCombo] | None = None,
) -> None:
    """Feature matrix as CSV plus a JSON sidecar describing the schema.

    The sidecar also carries each row's raw zone combo so later evaluation
    can re-derive combination slots inside training folds.
    """
    if len(vectors) != len(labels):
        raise ValueError("vectors and labels differ in length")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(schema.names) + ["label"])
        for vec, label in zip(vectors, labels):
            writer.writerow([repr(vec.values[n]) for n in schema.names] + [str(int(label))])
    sidecar = {
        "format": SCHEMA_FORMAT,
        "version": SCHEMA_VERSION,
        "schema_id": schema.schema_id,
        "features": [
            {"name": n, "group": schema.groups[n], "binary": n in schema.binary}
            for n in schema.names
        ],
        "combo": schema.combo.to_payload(),
        "config": {
            "obs_months": schema.config.obs_months,
            "horizon_months": schema.config.horizon_months,
            "lda_topics": schema.config.lda_topics,
        },
    }
    if combos is not None:
        sidecar["row_combos"] = [
            {"pos": " ".join(c.pos), "ne": " ".join(c.ne), "oov": c.oov} for c in combos
        ]
    with open(_sidecar_path(path), "w", encoding="utf-8") as fh:
        fh.write(json.dumps(sidecar, sort_keys=True, indent=1))
        fh.write("\n")


def read_feature_csv(
    path, schema_path=None
) -> tuple[np.ndarray, np.ndarray, FeatureSchema, list[ZoneCombo] | None]:
    """Load a feature matrix and its sidecar back into memory."""
    schema_path = schema_path or _sidecar_path(path)
    with open(schema_path, encoding="utf-8") as fh:
        sidecar = json.load(fh)
    if sidecar.get("format") != SCHEMA_FORMAT or sidecar.get("version") != SCHEMA_VERSION:
        raise ValueError(f"{schema_path}: not a supported feature schema file")
    names = tuple(f["name"] for f in sidecar["features"])
    groups = {f["name"]: f["group"] for f in sidecar["features"]}
    binary = frozenset(f["name"] for f in sidecar["features"] if f["binary"])
    cfg = sidecar["config"]
    schema = FeatureSchema(
        names=names,
        groups=groups,
        binary=binary,
        combo=ComboSchema.from_payload(sidecar["combo"]),
        config=ObservationConfig(
            obs_months=cfg["obs_months"],
            horizon_months=cfg["horizon_months"],
            lda_topics=cfg["lda_topics"],
        ),
    )
    rows: list[list[float]] = []
    labels: list[int] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != list(names) + ["label"]:
            raise ValueError(f"{path}: header does not match schema")
        for row in reader:
            if not row:
                continue
            rows.append([float(v) for v in row[:-1]])
            labels.append(int(row[-1]))
    combos = None
    if "row_combos" in sidecar:
        combos = [
            ZoneCombo(
                pos=tuple(c["pos"].split(" ", 1)),
                ne=tuple(c["ne"].split(" ", 1)),
                oov=c["oov"],
            )
            for c in sidecar["row_combos"]
        ]
        if len(combos) != len(rows):
            raise ValueError(f"{schema_path}: row_combos does not match the matrix")
    return np.array(rows, dtype=float), np.array(labels, dtype=int), schema, combos
