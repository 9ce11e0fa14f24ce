"""Toolkit for harvesting DOTA 2 in-game chat and running a three-class
toxicity pipeline: collect, consolidate, filter, label, balance, split,
classify, and evaluate."""

from chatguard.labels import ToxicityLabel

__version__ = "0.1.0"

__all__ = ["ToxicityLabel", "__version__"]
