"""Bundled case-study dataset: supplement-related adverbs.

28 forms across nine languages (Chinese, Tibetan, English, German, French,
Russian, Japanese, Korean, Vietnamese) against 18 function categories. The
source survey leaves the IS column without an expanded name and labels one
column SD (Sequential Coordinator); both are kept as printed.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..matrix import FormFunctionMatrix, parse_matrix

FIXTURE_NAME = "supplement_adverbs.csv"

FUNCTION_FULL_NAMES: dict[str, str | None] = {
    "AF": "Additive Focus",
    "SU": "Supplement",
    "RE": "Repetition",
    "CO": "Continuation",
    "GD": "Greater Degree",
    "DE": "Decrement",
    "IS": None,
    "CD": "Condition",
    "DC": "Discretional Condition",
    "PT": "Polarity Trigger",
    "SC": "Serious Condition",
    "WH": "Whatever",
    "SE": "Sequence",
    "SD": "Sequential Coordinator",
    "IC": "Inconsistency",
    "UE": "Unexpectedness",
    "BL": "Bottom Line",
    "DS": "Discourse Continuation",
}

LANGUAGE_FULL_NAMES = {
    "ZH": "Chinese",
    "BO": "Tibetan",
    "EN": "English",
    "DE": "German",
    "FR": "French",
    "RU": "Russian",
    "JA": "Japanese",
    "KO": "Korean",
    "VI": "Vietnamese",
}


def fixture_path() -> Path:
    """Filesystem path of the bundled CSV."""
    return Path(str(resources.files(__package__).joinpath(FIXTURE_NAME)))


def load_fixture() -> FormFunctionMatrix:
    """Parse the bundled dataset, attaching long function names."""
    text = fixture_path().read_text(encoding="utf-8")
    matrix = parse_matrix(text, "csv")
    labels = tuple(
        type(lab)(lab.id, lab.abbr, FUNCTION_FULL_NAMES.get(lab.abbr))
        for lab in matrix.functions
    )
    return FormFunctionMatrix(labels, matrix.forms)
