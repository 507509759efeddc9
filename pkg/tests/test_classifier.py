import math
import random

import numpy as np
import pytest

from vnqa.classifier import (
    AnswerType,
    MaxentModel,
    TrainConfig,
    extract_features,
    loss_and_gradient,
    softmax,
    train,
)
from vnqa.errors import ConfigError
from vnqa.nlp import segment, tag
from vnqa.resources import data_path
from vnqa.service import load_corpus


def _toy_separable(n_per_label=10):
    dataset = []
    for i in range(n_per_label):
        dataset.append(({"qw=ai": 1.0, f"uni=w{i}": 1.0}, AnswerType.HUM))
        dataset.append(({"qw=bao_nhiêu": 1.0, f"uni=v{i}": 1.0}, AnswerType.NUM))
    return dataset


def test_separable_toy_set_reaches_perfect_training_accuracy():
    dataset = _toy_separable()
    model = train(dataset, TrainConfig(epochs=300))
    hits = sum(model.predict(x)[0] is y for x, y in dataset)
    assert hits == len(dataset)


def test_zero_learning_rate_stays_uniform():
    model = train(
        [({"uni=a": 1.0}, AnswerType.HUM), ({"uni=b": 1.0}, AnswerType.NUM)],
        TrainConfig(learning_rate=0.0, epochs=1),
    )
    _, dist = model.predict({"uni=a": 1.0})
    assert all(abs(p - 0.5) < 1e-12 for p in dist.values())


def test_zero_weight_tie_breaks_to_first_label():
    model = train(
        [({"uni=a": 1.0}, AnswerType.HUM), ({"uni=b": 1.0}, AnswerType.NUM)],
        TrainConfig(learning_rate=0.0, epochs=0),
    )
    label, _ = model.predict({"uni=unseen": 1.0})
    assert label is AnswerType.HUM  # enumeration order


def test_missing_label_raises():
    with pytest.raises(ConfigError):
        train(
            [({"uni=a": 1.0}, AnswerType.HUM)],
            labels=[AnswerType.HUM, AnswerType.NUM],
        )
    with pytest.raises(ConfigError):
        train([])


def test_gradient_matches_central_differences_50_draws():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(50):
        n, f, k = rng.integers(2, 8), rng.integers(2, 10), rng.integers(2, 5)
        x = (rng.random((n, f)) < 0.4) * rng.normal(1.0, 0.5, (n, f))
        y = rng.integers(0, k, n)
        weights = rng.normal(0, 0.5, (f, k))
        bias = rng.normal(0, 0.5, k)
        l2 = float(rng.choice([0.0, 1e-3, 1e-2]))
        _, grad_w, grad_b = loss_and_gradient(weights, bias, x, y, l2)
        h = 1e-5

        def fd(component, i, j=None):
            def loss_at(delta):
                w2, b2 = weights.copy(), bias.copy()
                if component == "w":
                    w2[i, j] += delta
                else:
                    b2[i] += delta
                return loss_and_gradient(w2, b2, x, y, l2)[0]

            return (loss_at(h) - loss_at(-h)) / (2 * h)

        for i in range(f):
            for j in range(k):
                approx = fd("w", i, j)
                worst = max(worst, abs(grad_w[i, j] - approx) / max(1.0, abs(approx)))
        for i in range(k):
            approx = fd("b", i)
            worst = max(worst, abs(grad_b[i] - approx) / max(1.0, abs(approx)))
    assert worst <= 1e-6


def test_probability_simplex():
    rng = np.random.default_rng(3)
    model = train(_toy_separable(), TrainConfig(epochs=100))
    for _ in range(100):
        features = {f"uni=w{rng.integers(0, 20)}": float(rng.normal(1, 2)) for _ in range(4)}
        _, dist = model.predict(features)
        assert all(p >= 0 for p in dist.values())
        assert abs(sum(dist.values()) - 1.0) <= 1e-9


def test_argmax_invariant_under_constant_score_shift():
    rng = np.random.default_rng(5)
    for _ in range(50):
        scores = rng.normal(0, 3, 5)
        shifted = scores + rng.normal(0, 10)
        assert int(np.argmax(softmax(scores))) == int(np.argmax(softmax(shifted)))


def test_serialization_roundtrip(tmp_path):
    model = train(_toy_separable(), TrainConfig(epochs=200))
    path = tmp_path / "model.json"
    model.save(path)
    clone = MaxentModel.load(path)
    rng = random.Random(9)
    for _ in range(100):
        features = {f"uni=w{rng.randint(0, 15)}": rng.uniform(-2, 2) for _ in range(3)}
        assert model.predict(features) == clone.predict(features)


def test_extract_features_fpt_question(lexicon):
    tagged = tag(segment("Thành viên chủ chốt của tập đoàn FPT là những ai?", lexicon), lexicon)
    features = extract_features(tagged)
    assert features["uni=thành_viên"] == 1.0
    assert features["uni=#NP"] == 1.0
    assert features["qw=là_những_ai"] == 1.0
    assert extract_features([]) == {}


def test_paraphrases_share_salient_features(lexicon):
    a = extract_features(tag(segment("Dân số của Hà Nội là bao nhiêu?", lexicon), lexicon))
    b = extract_features(tag(segment("Hà Nội có dân số bằng bao nhiêu?", lexicon), lexicon))
    shared = set(a) & set(b)
    assert {"uni=dân_số", "uni=#NP"} <= shared


def test_extractor_hooks_merge(lexicon):
    tagged = tag(segment("FPT là gì?", lexicon), lexicon)
    features = extract_features(tagged, extra_extractors=[lambda tt: {"hook": 2.0}])
    assert features["hook"] == 2.0


def test_corpus_crossvalidation_accuracy(lexicon):
    corpus = load_corpus(data_path("questions.tsv"))
    assert len(corpus) == 140
    per_label = {}
    for _, label in corpus:
        per_label[label] = per_label.get(label, 0) + 1
    assert set(per_label.values()) == {20}

    examples = [
        (extract_features(tag(segment(text, lexicon), lexicon)), label)
        for text, label in corpus
    ]
    rng = random.Random(2024)
    rng.shuffle(examples)
    folds = [examples[i::5] for i in range(5)]
    hits = total = 0
    for held_out in range(5):
        training = [x for i, fold in enumerate(folds) if i != held_out for x in fold]
        model = train(training, TrainConfig(epochs=300), labels=list(AnswerType))
        for features, label in folds[held_out]:
            hits += model.predict(features)[0] is label
            total += 1
    accuracy = hits / total
    print(f"5-fold CV accuracy: {accuracy:.4f}")
    assert accuracy >= 0.80


def test_fixture_model_classifies_worked_examples(service, lexicon):
    fpt = tag(segment("Thành viên chủ chốt của tập đoàn FPT là những ai?", lexicon), lexicon)
    hanoi = tag(segment("Dân số và diện tích của Hà Nội là bao nhiêu?", lexicon), lexicon)
    assert service.model.predict(extract_features(fpt))[0] is AnswerType.HUM
    assert service.model.predict(extract_features(hanoi))[0] is AnswerType.NUM


def test_non_finite_feature_rejected():
    with pytest.raises(ConfigError):
        train([({"bad": math.inf}, AnswerType.HUM), ({"x": 1.0}, AnswerType.NUM)])
