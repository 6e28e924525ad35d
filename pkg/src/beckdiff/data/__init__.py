"""Shipped fixtures: the algebra corpus and Cayley tables of small groups."""

import json
from importlib import resources

from ..errors import InputError


def read_fixture(name: str):
    """Parsed JSON of a shipped fixture; a missing or corrupt file raises :class:`InputError`."""
    try:
        text = resources.files(__name__).joinpath(name).read_text()
    except OSError as exc:
        raise InputError(f"missing fixture {name}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"corrupt fixture {name}: line {exc.lineno}") from exc
