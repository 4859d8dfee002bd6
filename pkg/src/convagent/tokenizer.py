"""Utterance tokenization.

Input text is normalized to NFC, split on whitespace, and leading/trailing
punctuation (``? ! . , ; :``) is detached into separate tokens so a trailing
question mark never blocks a literal run.  Letter case is preserved;
case-folding is the scripts' burden.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import nfc

PUNCTUATION = "?!.,;:"


@dataclass(frozen=True)
class TokenSeq:
    tokens: tuple[str, ...]
    original: str

    def __len__(self) -> int:
        return len(self.tokens)

    def text(self) -> str:
        return " ".join(self.tokens)


def tokenize(utterance: str) -> TokenSeq:
    tokens: list[str] = []
    for chunk in nfc(utterance).split():
        leading: list[str] = []
        trailing: list[str] = []
        while chunk and chunk[0] in PUNCTUATION:
            leading.append(chunk[0])
            chunk = chunk[1:]
        while chunk and chunk[-1] in PUNCTUATION:
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(leading)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trailing))
    return TokenSeq(tuple(tokens), utterance)
