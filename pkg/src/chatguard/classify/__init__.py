from chatguard.classify.interchange import (
    Prediction,
    choose_label,
    predict_corpus,
    read_predictions,
    write_predictions,
)
from chatguard.classify.lexicon import (
    SeverityLexicon,
    classify_lexicon,
    load_default_lexicon,
)
from chatguard.classify.naive_bayes import (
    NaiveBayesModel,
    TokenizerConfig,
    load_model,
    predict_nb,
    save_model,
    train_naive_bayes,
)
from chatguard.classify.remote import RemoteFailure, RemoteModelConfig, remote_classify
from chatguard.classify.backends import (
    LexiconBackend,
    NaiveBayesBackend,
    RemoteBackend,
)

__all__ = [
    "Prediction",
    "choose_label",
    "predict_corpus",
    "read_predictions",
    "write_predictions",
    "SeverityLexicon",
    "classify_lexicon",
    "load_default_lexicon",
    "NaiveBayesModel",
    "TokenizerConfig",
    "train_naive_bayes",
    "predict_nb",
    "save_model",
    "load_model",
    "RemoteModelConfig",
    "RemoteFailure",
    "remote_classify",
    "LexiconBackend",
    "NaiveBayesBackend",
    "RemoteBackend",
]
