from chatguard.corpus.models import (
    ClassDistribution,
    LabeledExample,
    SplitAssignment,
    UndersamplePolicy,
)
from chatguard.corpus.store import (
    examples_from_events,
    export_corpus,
    import_corpus,
    read_corpus,
    write_corpus,
)
from chatguard.corpus.transforms import (
    compute_distribution,
    normalize_text,
    split,
    undersample_majority,
)
from chatguard.corpus.language import LanguageProfile, is_english, load_default_profiles
from chatguard.corpus.export import export_prompt_completion, import_prompt_completion

__all__ = [
    "ClassDistribution",
    "LabeledExample",
    "SplitAssignment",
    "UndersamplePolicy",
    "LanguageProfile",
    "compute_distribution",
    "normalize_text",
    "split",
    "undersample_majority",
    "is_english",
    "load_default_profiles",
    "examples_from_events",
    "read_corpus",
    "write_corpus",
    "import_corpus",
    "export_corpus",
    "export_prompt_completion",
    "import_prompt_completion",
]
