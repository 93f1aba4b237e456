"""Sentiment and stance scoring for vaccine tweets."""

import os as _os
from pathlib import Path as _Path

# Installed packages carry their own copy of the bundled tables.
if "VAXSENT_DATA_DIR" not in _os.environ and (_Path(__file__).parent / "data").is_dir():
    _os.environ["VAXSENT_DATA_DIR"] = str(_Path(__file__).parent / "data")

from ._core import (
    StageError,
    VaxsentError,
    __version__,
    exported_model_supported,
    inspect,
    label_names,
    normalize,
    polarity_group,
    run,
    stance,
    threshold,
    tokenize,
    vaccine_score,
    weight_sum,
)

__all__ = [
    "StageError",
    "VaxsentError",
    "__version__",
    "exported_model_supported",
    "inspect",
    "label_names",
    "normalize",
    "polarity_group",
    "run",
    "stance",
    "threshold",
    "tokenize",
    "vaccine_score",
    "weight_sum",
]
