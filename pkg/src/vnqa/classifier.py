"""Answer-type classification by maximum entropy (multinomial logistic
regression) over sparse string features, trained with full-batch gradient
descent. Deterministic: weights start at zero and features iterate in
sorted order."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError
from .nlp import Tag, TaggedToken


class AnswerType(str, Enum):
    HUM = "HUM"
    NUM = "NUM"
    DTIME = "DTIME"
    LOC = "LOC"
    YESNO = "YESNO"
    DEF = "DEF"
    ENTY = "ENTY"


FeatureVector = dict[str, float]


def _length_bucket(count: int) -> str:
    if count <= 4:
        return "0-4"
    if count <= 8:
        return "5-8"
    return "9+"


def extract_features(tagged: list[TaggedToken], extra_extractors=()) -> FeatureVector:
    """Unigram features (proper nouns collapse to ``#NP``), the tail
    question-word phrase, and a length bucket. ``extra_extractors`` are
    callables returning additional feature dicts."""
    features: FeatureVector = {}
    words = [tt for tt in tagged if tt.tag is not Tag.X]
    for tt in words:
        surface = "#NP" if tt.tag is Tag.Np else tt.surface.casefold()
        name = f"uni={surface}"
        features[name] = features.get(name, 0.0) + 1.0
    question_words = [tt for tt in words if tt.tag is Tag.QW]
    if question_words:
        features[f"qw={question_words[-1].surface.casefold()}"] = 1.0
    if words:
        features[f"len={_length_bucket(len(words))}"] = 1.0
    for extractor in extra_extractors:
        for name, weight in extractor(tagged).items():
            features[name] = features.get(name, 0.0) + float(weight)
    return features


@dataclass
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 500
    l2: float = 1e-3


def softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def loss_and_gradient(weights, bias, x, y, l2):
    """Mean negative log-likelihood with L2 on the weights (not the bias).

    Returns (loss, weight gradient, bias gradient); used directly by the
    finite-difference gradient checks.
    """
    n = x.shape[0]
    probs = softmax(x @ weights + bias)
    log_probs = np.log(probs[np.arange(n), y])
    loss = -log_probs.mean() + 0.5 * l2 * float((weights**2).sum())
    delta = probs.copy()
    delta[np.arange(n), y] -= 1.0
    grad_w = x.T @ delta / n + l2 * weights
    grad_b = delta.mean(axis=0)
    return loss, grad_w, grad_b


class MaxentModel:
    def __init__(self, labels, feature_names, weights, bias, config: TrainConfig):
        self.labels = list(labels)
        self.feature_names = list(feature_names)
        self.feature_index = {name: i for i, name in enumerate(self.feature_names)}
        self.weights = np.asarray(weights, dtype=float)
        self.bias = np.asarray(bias, dtype=float)
        self.config = config

    def scores(self, features: FeatureVector) -> np.ndarray:
        scores = self.bias.copy()
        for name, value in features.items():
            idx = self.feature_index.get(name)
            if idx is not None:
                scores += value * self.weights[idx]
        return scores

    def predict_proba(self, features: FeatureVector) -> dict:
        probs = softmax(self.scores(features))
        return {label: float(p) for label, p in zip(self.labels, probs)}

    def predict(self, features: FeatureVector):
        """Argmax label and the full distribution; ties break towards the
        earlier label in enumeration order."""
        probs = softmax(self.scores(features))
        return self.labels[int(np.argmax(probs))], {
            label: float(p) for label, p in zip(self.labels, probs)
        }

    # -- persistence -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "labels": [label.value for label in self.labels],
            "features": self.feature_names,
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
            "config": {
                "learning_rate": self.config.learning_rate,
                "epochs": self.config.epochs,
                "l2": self.config.l2,
            },
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(self.to_dict(), handle, ensure_ascii=False, indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "MaxentModel":
        if data.get("version") != 1:
            raise ConfigError(f"unsupported model version: {data.get('version')!r}")
        return cls(
            labels=[AnswerType(v) for v in data["labels"]],
            feature_names=data["features"],
            weights=np.array(data["weights"], dtype=float),
            bias=np.array(data["bias"], dtype=float),
            config=TrainConfig(**data["config"]),
        )

    @classmethod
    def load(cls, path) -> "MaxentModel":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))


def train(dataset, config: TrainConfig | None = None, labels=None) -> MaxentModel:
    """Fit a maxent model on (FeatureVector, AnswerType) pairs.

    Labels default to the answer types present, in enumeration order; an
    explicitly requested label with no examples raises ConfigError.
    """
    config = config or TrainConfig()
    if not dataset:
        raise ConfigError("empty training set")
    present = {label for _, label in dataset}
    if labels is None:
        label_cls = type(next(iter(present)))
        labels = [label for label in label_cls if label in present]
    else:
        labels = list(labels)
        missing = [label for label in labels if label not in present]
        if missing:
            raise ConfigError(f"labels with zero examples: {[m.value for m in missing]}")
    label_index = {label: i for i, label in enumerate(labels)}
    for _, label in dataset:
        if label not in label_index:
            raise ConfigError(f"example labelled outside the label set: {label}")

    feature_names = sorted({name for features, _ in dataset for name in features})
    feature_index = {name: i for i, name in enumerate(feature_names)}
    x = np.zeros((len(dataset), len(feature_names)))
    y = np.zeros(len(dataset), dtype=int)
    for row, (features, label) in enumerate(dataset):
        for name, value in features.items():
            if not math.isfinite(value):
                raise ConfigError(f"non-finite feature weight: {name}")
            x[row, feature_index[name]] = value
        y[row] = label_index[label]

    weights = np.zeros((len(feature_names), len(labels)))
    bias = np.zeros(len(labels))
    for _ in range(config.epochs):
        _, grad_w, grad_b = loss_and_gradient(weights, bias, x, y, config.l2)
        weights -= config.learning_rate * grad_w
        bias -= config.learning_rate * grad_b
    return MaxentModel(labels, feature_names, weights, bias, config)
