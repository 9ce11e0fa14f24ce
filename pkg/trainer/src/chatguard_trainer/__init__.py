"""Desk-scale fine-tuning of pre-trained encoders for three-class toxicity.

Talks to the main toolkit exclusively through its file formats: reads the
canonical corpus (line-delimited JSON) and writes the prediction interchange
format that `chatguard evaluate` consumes unchanged.
"""

from chatguard_trainer.config import FineTuneConfig
from chatguard_trainer.training import TrainingLog, finetune_encoder
from chatguard_trainer.prediction import predict_to_file

__version__ = "0.1.0"

__all__ = ["FineTuneConfig", "TrainingLog", "finetune_encoder", "predict_to_file", "__version__"]
