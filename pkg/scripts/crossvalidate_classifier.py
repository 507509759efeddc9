#!/usr/bin/env python3
"""5-fold cross-validation of the answer-type classifier on the bundled
question corpus, with a per-fold breakdown."""

import random
import sys

from vnqa.classifier import AnswerType, TrainConfig, extract_features, train
from vnqa.nlp import Lexicon, segment, tag
from vnqa.resources import data_path
from vnqa.service import load_corpus


def main(seed: int = 2024, folds: int = 5):
    lexicon = Lexicon.load(data_path("lexicon.tsv"))
    corpus = load_corpus(data_path("questions.tsv"))
    examples = [
        (extract_features(tag(segment(text, lexicon), lexicon)), label)
        for text, label in corpus
    ]
    rng = random.Random(seed)
    rng.shuffle(examples)
    splits = [examples[i::folds] for i in range(folds)]
    total_hits = 0
    for held_out in range(folds):
        training = [x for i, split in enumerate(splits) if i != held_out for x in split]
        model = train(training, TrainConfig(epochs=300), labels=list(AnswerType))
        hits = sum(model.predict(f)[0] is y for f, y in splits[held_out])
        total_hits += hits
        print(f"fold {held_out}: {hits}/{len(splits[held_out])}")
    accuracy = total_hits / len(examples)
    print(f"overall: {accuracy:.4f} ({total_hits}/{len(examples)})")
    return 0 if accuracy >= 0.80 else 1


if __name__ == "__main__":
    sys.exit(main(*(int(a) for a in sys.argv[1:])))
