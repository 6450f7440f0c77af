"""Documented corrections to commonly printed forms of catalogued identities.

Each entry maps a printed statement to the corrected form this suite verifies,
with the independent confirmation used (recurrence, oracle, or derivation).
The identity suite encodes only the corrected forms; nothing is silently
patched.
"""

from __future__ import annotations

import json
from importlib import resources

_REQUIRED_KEYS = {"id", "location", "printed", "corrected", "confirmation"}


def _load():
    data = json.loads(
        resources.files("gramcalc").joinpath("data/errata.json").read_text()
    )
    for entry in data:
        missing = _REQUIRED_KEYS - entry.keys()
        if missing:
            raise ValueError(f"errata entry {entry.get('id')} missing {missing}")
    return data


ERRATA = _load()
ERRATA_BY_ID = {entry["id"]: entry for entry in ERRATA}


def errata_json() -> str:
    return json.dumps(ERRATA, indent=2)
