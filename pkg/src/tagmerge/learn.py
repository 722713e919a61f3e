"""Linear classifiers and evaluation protocol.

Both models are trained from scratch with full-batch (sub)gradient descent
under L2 regularization. Standardization statistics and combination-slot
bindings are always derived from training rows only, inside each fold, so
no test information leaks into the learner.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .features import FeatureSchema, FeatureVector, ZoneCombo, derive_combo_schema, read_feature_csv

MODEL_FORMAT = "tagmerge-model"
MODEL_VERSION = 1

MODEL_KINDS = ("logreg", "linsvm")


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 500
    l2: float = 1e-3
    seed: int = 0
    init_scale: float = 0.01


@dataclass(frozen=True)
class StandardizationStats:
    mean: np.ndarray
    std: np.ndarray
    binary_mask: np.ndarray


@dataclass
class Dataset:
    """Feature matrix with labels and enough metadata to refit honestly.

    `combos` holds each row's raw zone tag pairs; when present, fold-level
    training re-derives the combination slots from its own training rows.
    """

    matrix: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    groups: dict[str, str]
    binary_mask: np.ndarray
    schema_id: str
    combos: list[ZoneCombo] | None = None

    def __post_init__(self):
        if self.matrix.ndim != 2:
            raise ValueError("matrix must be 2-d")
        if len(self.labels) != self.matrix.shape[0]:
            raise ValueError("labels length does not match matrix")
        if len(self.feature_names) != self.matrix.shape[1]:
            raise ValueError("feature names do not match matrix width")
        if self.combos is not None and len(self.combos) != self.matrix.shape[0]:
            raise ValueError("combos length does not match matrix")

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_vectors(
        cls,
        vectors: list[FeatureVector],
        labels,
        schema: FeatureSchema,
        combos: list[ZoneCombo] | None = None,
    ) -> "Dataset":
        matrix = np.array([v.as_array(schema.names) for v in vectors], dtype=float)
        return cls(
            matrix=matrix,
            labels=np.asarray(labels, dtype=int),
            feature_names=schema.names,
            groups=dict(schema.groups),
            binary_mask=schema.binary_mask(),
            schema_id=schema.schema_id,
            combos=list(combos) if combos is not None else None,
        )

    @classmethod
    def from_csv(cls, path, schema_path=None) -> "Dataset":
        matrix, labels, schema, combos = read_feature_csv(path, schema_path)
        return cls(
            matrix=matrix,
            labels=labels,
            feature_names=schema.names,
            groups=dict(schema.groups),
            binary_mask=schema.binary_mask(),
            schema_id=schema.schema_id,
            combos=combos,
        )


def select_groups(dataset: Dataset, groups: tuple[str, ...]) -> Dataset:
    """Dataset restricted to the features of the given groups."""
    keep = [i for i, n in enumerate(dataset.feature_names) if dataset.groups[n] in groups]
    if not keep:
        raise ValueError(f"no features left after selecting groups {groups}")
    names = tuple(dataset.feature_names[i] for i in keep)
    has_slots = any(n.startswith(("pos_combo_", "ne_combo_")) for n in names)
    return Dataset(
        matrix=dataset.matrix[:, keep].copy(),
        labels=dataset.labels.copy(),
        feature_names=names,
        groups={n: dataset.groups[n] for n in names},
        binary_mask=dataset.binary_mask[keep].copy(),
        schema_id=dataset.schema_id,
        combos=list(dataset.combos) if (dataset.combos is not None and has_slots) else None,
    )


def balance_dataset(dataset: Dataset, seed: int = 0) -> Dataset:
    """Downsample the majority class to a 50/50 split, seeded."""
    labels = dataset.labels
    classes, counts = np.unique(labels, return_counts=True)
    if len(classes) != 2:
        raise ValueError("balancing needs exactly two classes")
    target = counts.min()
    rng = np.random.default_rng(seed)
    keep: list[int] = []
    for cls in classes:
        idx = np.where(labels == cls)[0]
        if len(idx) > target:
            idx = idx[np.sort(rng.permutation(len(idx))[:target])]
        keep.extend(idx.tolist())
    keep = sorted(keep)
    return Dataset(
        matrix=dataset.matrix[keep].copy(),
        labels=labels[keep].copy(),
        feature_names=dataset.feature_names,
        groups=dict(dataset.groups),
        binary_mask=dataset.binary_mask.copy(),
        schema_id=dataset.schema_id,
        combos=[dataset.combos[i] for i in keep] if dataset.combos is not None else None,
    )


# ---------------------------------------------------------------------------
# standardization

def standardize_fit(matrix: np.ndarray, binary_mask: np.ndarray) -> StandardizationStats:
    """Column means and deviations of the continuous features."""
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise ValueError("cannot fit standardization on an empty matrix")
    mean = matrix.mean(axis=0)
    std = matrix.std(axis=0)
    return StandardizationStats(mean=mean, std=std, binary_mask=np.asarray(binary_mask, dtype=bool))


def standardize_apply(stats: StandardizationStats, matrix: np.ndarray) -> np.ndarray:
    """Z-score continuous columns; binary columns pass through untouched.

    Zero-variance continuous columns map to zero. Each row transforms
    independently of every other row.
    """
    matrix = np.asarray(matrix, dtype=float)
    single = matrix.ndim == 1
    if single:
        matrix = matrix[None, :]
    out = matrix.copy()
    cont = ~stats.binary_mask
    std = stats.std[cont]
    centered = matrix[:, cont] - stats.mean[cont]
    with np.errstate(invalid="ignore", divide="ignore"):
        scaled = np.where(std > 0, centered / np.where(std > 0, std, 1.0), 0.0)
    out[:, cont] = scaled
    return out[0] if single else out


# ---------------------------------------------------------------------------
# models

@dataclass
class LinearModel:
    kind: str
    weights: np.ndarray
    bias: float
    config: TrainConfig
    stats: StandardizationStats
    schema_id: str
    feature_names: tuple[str, ...]
    loss_history: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def to_payload(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "kind": self.kind,
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "config": {
                "learning_rate": self.config.learning_rate,
                "epochs": self.config.epochs,
                "l2": self.config.l2,
                "seed": self.config.seed,
                "init_scale": self.config.init_scale,
            },
            "stats": {
                "mean": self.stats.mean.tolist(),
                "std": self.stats.std.tolist(),
                "binary_mask": self.stats.binary_mask.astype(int).tolist(),
            },
            "schema_id": self.schema_id,
            "feature_names": list(self.feature_names),
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":")))
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "LinearModel":
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        if payload.get("format") != MODEL_FORMAT or payload.get("version") != MODEL_VERSION:
            raise ValueError(f"{path}: not a supported model file")
        cfg = payload["config"]
        stats = payload["stats"]
        return cls(
            kind=payload["kind"],
            weights=np.array(payload["weights"], dtype=float),
            bias=float(payload["bias"]),
            config=TrainConfig(
                learning_rate=cfg["learning_rate"],
                epochs=cfg["epochs"],
                l2=cfg["l2"],
                seed=cfg["seed"],
                init_scale=cfg["init_scale"],
            ),
            stats=StandardizationStats(
                mean=np.array(stats["mean"], dtype=float),
                std=np.array(stats["std"], dtype=float),
                binary_mask=np.array(stats["binary_mask"], dtype=bool),
            ),
            schema_id=payload["schema_id"],
            feature_names=tuple(payload["feature_names"]),
        )


def logreg_loss_grad(
    weights: np.ndarray, bias: float, matrix: np.ndarray, labels: np.ndarray, l2: float
) -> tuple[float, np.ndarray, float]:
    """Mean regularized logistic loss and its exact gradient."""
    z = matrix @ weights + bias
    loss = float(np.mean(np.logaddexp(0.0, z) - labels * z) + 0.5 * l2 * np.dot(weights, weights))
    p = 0.5 * (1.0 + np.tanh(0.5 * z))
    err = p - labels
    grad_w = matrix.T @ err / len(labels) + l2 * weights
    grad_b = float(err.mean())
    return loss, grad_w, grad_b


def hinge_loss_grad(
    weights: np.ndarray, bias: float, matrix: np.ndarray, labels: np.ndarray, l2: float
) -> tuple[float, np.ndarray, float]:
    """Mean regularized hinge loss and a subgradient. Labels are 0/1."""
    signed = 2.0 * labels - 1.0
    margin = 1.0 - signed * (matrix @ weights + bias)
    loss = float(np.mean(np.maximum(margin, 0.0)) + 0.5 * l2 * np.dot(weights, weights))
    active = margin > 0
    grad_w = -(matrix[active].T @ signed[active]) / len(labels) + l2 * weights
    grad_b = float(-signed[active].sum() / len(labels))
    return loss, grad_w, grad_b


_LOSS_GRAD = {"logreg": logreg_loss_grad, "linsvm": hinge_loss_grad}


def _fit_linear(
    kind: str, matrix: np.ndarray, labels: np.ndarray, config: TrainConfig
) -> tuple[np.ndarray, float, np.ndarray]:
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    if len(np.unique(labels)) < 2:
        raise ValueError("training data holds a single class")
    loss_grad = _LOSS_GRAD[kind]
    rng = np.random.default_rng(config.seed)
    weights = rng.normal(0.0, config.init_scale, size=matrix.shape[1])
    bias = 0.0
    history = np.zeros(config.epochs + 1)
    for epoch in range(config.epochs):
        loss, grad_w, grad_b = loss_grad(weights, bias, matrix, labels, config.l2)
        history[epoch] = loss
        weights = weights - config.learning_rate * grad_w
        bias = bias - config.learning_rate * grad_b
    history[config.epochs] = loss_grad(weights, bias, matrix, labels, config.l2)[0]
    return weights, bias, history


def _train_on_matrix(
    kind: str,
    matrix: np.ndarray,
    labels: np.ndarray,
    binary_mask: np.ndarray,
    config: TrainConfig,
    schema_id: str,
    feature_names: tuple[str, ...],
) -> LinearModel:
    stats = standardize_fit(matrix, binary_mask)
    standardized = standardize_apply(stats, matrix)
    weights, bias, history = _fit_linear(kind, standardized, labels.astype(float), config)
    return LinearModel(
        kind=kind,
        weights=weights,
        bias=bias,
        config=config,
        stats=stats,
        schema_id=schema_id,
        feature_names=feature_names,
        loss_history=history,
    )


def train_logreg(dataset: Dataset, config: TrainConfig | None = None) -> LinearModel:
    """L2-regularized logistic regression by full-batch gradient descent."""
    config = config or TrainConfig()
    return _train_on_matrix(
        "logreg",
        dataset.matrix,
        dataset.labels,
        dataset.binary_mask,
        config,
        dataset.schema_id,
        dataset.feature_names,
    )


def train_linsvm(dataset: Dataset, config: TrainConfig | None = None) -> LinearModel:
    """Linear SVM by full-batch subgradient descent on the hinge loss."""
    config = config or TrainConfig()
    return _train_on_matrix(
        "linsvm",
        dataset.matrix,
        dataset.labels,
        dataset.binary_mask,
        config,
        dataset.schema_id,
        dataset.feature_names,
    )


def _raw_scores(model: LinearModel, matrix: np.ndarray) -> np.ndarray:
    standardized = standardize_apply(model.stats, matrix)
    z = standardized @ model.weights + model.bias
    if model.kind == "logreg":
        return 0.5 * (1.0 + np.tanh(0.5 * z))
    return z


def predict(model: LinearModel, vector: FeatureVector | np.ndarray) -> tuple[int, float]:
    """Label and score of one raw (unstandardized) feature vector."""
    if isinstance(vector, FeatureVector):
        arr = vector.as_array(model.feature_names)
    else:
        arr = np.asarray(vector, dtype=float)
    score = float(_raw_scores(model, arr[None, :])[0])
    threshold = 0.5 if model.kind == "logreg" else 0.0
    return (1 if score > threshold else 0), score


# ---------------------------------------------------------------------------
# evaluation

@dataclass
class EvalReport:
    kind: str
    accuracy: float
    precision: float
    recall: float
    f_score: float
    roc_area: float
    per_class: dict
    confusion: list
    n_rows: int
    per_fold: list = field(default_factory=list)
    protocol: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f_score": self.f_score,
            "roc_area": self.roc_area,
            "per_class": self.per_class,
            "confusion": self.confusion,
            "n_rows": self.n_rows,
            "per_fold": self.per_fold,
            "protocol": self.protocol,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    def format_table(self) -> str:
        lines = [
            f"rows: {self.n_rows}   model: {self.kind}   protocol: {self.protocol}",
            f"{'class':>10} {'precision':>10} {'recall':>10} {'f-score':>10} {'support':>8}",
        ]
        for cls in sorted(self.per_class):
            m = self.per_class[cls]
            lines.append(
                f"{cls:>10} {m['precision']:>10.4f} {m['recall']:>10.4f} "
                f"{m['f_score']:>10.4f} {m['support']:>8d}"
            )
        lines.append(
            f"{'weighted':>10} {self.precision:>10.4f} {self.recall:>10.4f} {self.f_score:>10.4f}"
        )
        lines.append(f"accuracy: {self.accuracy:.4f}   roc area: {self.roc_area:.4f}")
        return "\n".join(lines)


def roc_auc(scores, labels) -> float:
    """Area under the ROC curve via the rank statistic; ties count half."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be 1-d and equally long")
    n_pos = int((labels == 1).sum())
    n_neg = int((labels == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise ValueError("roc_auc needs both classes present")
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores))
    sorted_scores = scores[order]
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    rank_sum = float(ranks[labels == 1].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def _metrics(y_true: np.ndarray, y_pred: np.ndarray, scores: np.ndarray) -> dict:
    per_class = {}
    weighted = {"precision": 0.0, "recall": 0.0, "f_score": 0.0}
    n = len(y_true)
    for cls in (0, 1):
        tp = int(np.sum((y_pred == cls) & (y_true == cls)))
        fp = int(np.sum((y_pred == cls) & (y_true != cls)))
        fn = int(np.sum((y_pred != cls) & (y_true == cls)))
        support = int(np.sum(y_true == cls))
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f_score = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[str(cls)] = {
            "precision": precision,
            "recall": recall,
            "f_score": f_score,
            "support": support,
        }
        for key, value in (("precision", precision), ("recall", recall), ("f_score", f_score)):
            weighted[key] += value * support / n
    confusion = [
        [int(np.sum((y_true == 0) & (y_pred == 0))), int(np.sum((y_true == 0) & (y_pred == 1)))],
        [int(np.sum((y_true == 1) & (y_pred == 0))), int(np.sum((y_true == 1) & (y_pred == 1)))],
    ]
    return {
        "accuracy": float(np.mean(y_true == y_pred)),
        "per_class": per_class,
        "weighted": weighted,
        "confusion": confusion,
        "roc_area": roc_auc(scores, y_true),
    }


def stratified_folds(labels, n_folds: int, seed: int = 0) -> list[np.ndarray]:
    """Seeded stratified partition; fold sizes differ by at most one."""
    labels = np.asarray(labels, dtype=int)
    if n_folds < 2:
        raise ValueError("need at least 2 folds")
    if n_folds > len(labels):
        raise ValueError(f"cannot make {n_folds} folds from {len(labels)} rows")
    classes = np.unique(labels)
    if len(classes) < 2:
        raise ValueError("dataset holds a single class")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(n_folds)]
    for ci, cls in enumerate(classes):
        idx = np.where(labels == cls)[0]
        shuffled = idx[rng.permutation(len(idx))]
        base, rem = divmod(len(shuffled), n_folds)
        # alternate remainder placement between front and back folds so the
        # combined fold sizes stay within one of each other
        extras = set(range(rem)) if ci % 2 == 0 else set(range(n_folds - rem, n_folds))
        pos = 0
        for f in range(n_folds):
            size = base + (1 if f in extras else 0)
            folds[f].extend(shuffled[pos : pos + size].tolist())
            pos += size
    return [np.array(sorted(f), dtype=int) for f in folds]


COMBO_SLOT_PREFIXES = ("pos_combo_", "ne_combo_")


def _rebind_combo_columns(
    matrix: np.ndarray,
    feature_names: tuple[str, ...],
    combos: list[ZoneCombo],
    train_idx: np.ndarray,
) -> np.ndarray:
    """Copy of the matrix with combination slots derived from training rows."""
    schema = derive_combo_schema([combos[i] for i in train_idx])
    out = matrix.copy()
    name_to_col = {n: i for i, n in enumerate(feature_names)}
    pos_names = [n for n in feature_names if n.startswith("pos_combo_")]
    ne_names = [n for n in feature_names if n.startswith("ne_combo_")]
    for row, combo in enumerate(combos):
        for name, pair in zip(pos_names, schema.pos_pairs):
            out[row, name_to_col[name]] = 1.0 if pair is not None and pair == combo.pos else 0.0
        for name, pair in zip(ne_names, schema.ne_pairs):
            out[row, name_to_col[name]] = 1.0 if pair is not None and pair == combo.ne else 0.0
    return out


def _fit_eval_split(
    dataset: Dataset,
    kind: str,
    train_idx: np.ndarray,
    test_idx: np.ndarray,
    config: TrainConfig,
) -> tuple[np.ndarray, np.ndarray]:
    matrix = dataset.matrix
    if dataset.combos is not None and any(
        n.startswith(COMBO_SLOT_PREFIXES) for n in dataset.feature_names
    ):
        matrix = _rebind_combo_columns(matrix, dataset.feature_names, dataset.combos, train_idx)
    stats = standardize_fit(matrix[train_idx], dataset.binary_mask)
    train_m = standardize_apply(stats, matrix[train_idx])
    test_m = standardize_apply(stats, matrix[test_idx])
    weights, bias, _ = _fit_linear(kind, train_m, dataset.labels[train_idx].astype(float), config)
    z = test_m @ weights + bias
    if kind == "logreg":
        scores = 0.5 * (1.0 + np.tanh(0.5 * z))
        preds = (scores > 0.5).astype(int)
    else:
        scores = z
        preds = (scores > 0.0).astype(int)
    return preds, scores


def cross_validate(
    dataset: Dataset,
    kind: str = "logreg",
    n_folds: int = 10,
    seed: int = 0,
    config: TrainConfig | None = None,
) -> EvalReport:
    """Stratified k-fold cross validation with leak-free per-fold fitting."""
    config = config or TrainConfig()
    folds = stratified_folds(dataset.labels, n_folds, seed)
    all_idx = np.arange(dataset.n_rows)
    pooled_pred = np.zeros(dataset.n_rows, dtype=int)
    pooled_score = np.zeros(dataset.n_rows)
    per_fold = []
    for f, test_idx in enumerate(folds):
        train_idx = np.setdiff1d(all_idx, test_idx)
        preds, scores = _fit_eval_split(dataset, kind, train_idx, test_idx, config)
        pooled_pred[test_idx] = preds
        pooled_score[test_idx] = scores
        fold_metrics = _metrics(dataset.labels[test_idx], preds, scores)
        per_fold.append(
            {
                "fold": f,
                "n_test": int(len(test_idx)),
                "accuracy": fold_metrics["accuracy"],
                "roc_area": fold_metrics["roc_area"],
            }
        )
    m = _metrics(dataset.labels, pooled_pred, pooled_score)
    return EvalReport(
        kind=kind,
        accuracy=m["accuracy"],
        precision=m["weighted"]["precision"],
        recall=m["weighted"]["recall"],
        f_score=m["weighted"]["f_score"],
        roc_area=m["roc_area"],
        per_class=m["per_class"],
        confusion=m["confusion"],
        n_rows=dataset.n_rows,
        per_fold=per_fold,
        protocol={"mode": "cv", "folds": n_folds, "seed": seed},
    )


def holdout_evaluate(
    dataset: Dataset,
    kind: str = "logreg",
    test_fraction: float = 0.1,
    seed: int = 0,
    config: TrainConfig | None = None,
) -> EvalReport:
    """Stratified train/test split evaluation (9:1 by default)."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    config = config or TrainConfig()
    labels = dataset.labels
    classes = np.unique(labels)
    if len(classes) < 2:
        raise ValueError("dataset holds a single class")
    rng = np.random.default_rng(seed)
    test_parts = []
    for cls in classes:
        idx = np.where(labels == cls)[0]
        if len(idx) < 2:
            raise ValueError(f"class {cls} has fewer than 2 rows")
        n_test = min(len(idx) - 1, max(1, round(len(idx) * test_fraction)))
        shuffled = idx[rng.permutation(len(idx))]
        test_parts.append(shuffled[:n_test])
    test_idx = np.array(sorted(np.concatenate(test_parts)), dtype=int)
    train_idx = np.setdiff1d(np.arange(dataset.n_rows), test_idx)
    preds, scores = _fit_eval_split(dataset, kind, train_idx, test_idx, config)
    m = _metrics(labels[test_idx], preds, scores)
    return EvalReport(
        kind=kind,
        accuracy=m["accuracy"],
        precision=m["weighted"]["precision"],
        recall=m["weighted"]["recall"],
        f_score=m["weighted"]["f_score"],
        roc_area=m["roc_area"],
        per_class=m["per_class"],
        confusion=m["confusion"],
        n_rows=int(len(test_idx)),
        per_fold=[],
        protocol={
            "mode": "holdout",
            "test_fraction": test_fraction,
            "seed": seed,
            "n_train": int(len(train_idx)),
            "n_test": int(len(test_idx)),
        },
    )
