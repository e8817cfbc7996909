"""Controlled vocabularies and prefix suggestion.

Vocabulary files are UTF-8, one token per line, '#' starts a comment.
Predefined tokens keep the intake forms free of typing errors; suggestion
feeds the form autocompletion dropdowns.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DuplicateName, ParseError
from .gazetteer import normalize_name


@dataclass
class Vocabulary:
    name: str
    entries: list[str]

    def __post_init__(self):
        seen: set[str] = set()
        for token in self.entries:
            key = normalize_name(token)
            if key in seen:
                raise DuplicateName(token, self.name)
            seen.add(key)
        self._keys = {normalize_name(t) for t in self.entries}

    def contains(self, token: str) -> bool:
        return normalize_name(token) in self._keys


def parse_vocabulary(name: str, text: str) -> Vocabulary:
    entries = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line and line.split(":", 1)[0].strip() in ("district", "moh", "phi", "gn"):
            raise ParseError("vocabulary file looks like a gazetteer document", line_no)
        entries.append(line)
    return Vocabulary(name, entries)


def load_vocabulary(name: str, path: str) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        return parse_vocabulary(name, fh.read())


def suggest_tokens(tokens: list[str], prefix: str, limit: int) -> list[str]:
    """Tokens whose normalized form starts with the normalized prefix.

    Lexicographic order on the normalized key, at most `limit` results.
    """
    wanted = normalize_name(prefix)
    matches = [t for t in tokens if normalize_name(t).startswith(wanted)]
    matches.sort(key=lambda t: (normalize_name(t), t))
    return matches[:limit]
