"""McCabe cyclomatic complexity by decision-token counting.

Two variants are computed. The traditional one counts every ``case`` label
of a switch; the modified one counts the ``switch`` once instead. Nothing
outside the fixed token sets below adds to either value (no ``catch``,
``goto``, ``default`` or ``do``).
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

from .lexer import Token, TokenKind

TRADITIONAL_KEYWORDS = frozenset({"for", "if", "while", "case"})
MODIFIED_KEYWORDS = frozenset({"for", "if", "while", "switch"})
DECISION_PUNCTUATORS = frozenset({"&&", "||", "?"})


def _count(body_tokens: Iterable[Token], keywords: frozenset) -> int:
    n = 1
    for t in body_tokens:
        if t.kind is TokenKind.KEYWORD and t.text in keywords:
            n += 1
        elif t.kind is TokenKind.PUNCTUATOR and t.text in DECISION_PUNCTUATORS:
            n += 1
    return n


def mcc_traditional(body_tokens: Iterable[Token]) -> int:
    return _count(body_tokens, TRADITIONAL_KEYWORDS)


def mcc_modified(body_tokens: Iterable[Token]) -> int:
    return _count(body_tokens, MODIFIED_KEYWORDS)


def file_mcc(functions: Sequence) -> Tuple[int, int]:
    """Per-file (traditional, modified) sums; ``(0, 0)`` when no bodies were found."""
    return (
        sum(f.mcc_traditional for f in functions),
        sum(f.mcc_modified for f in functions),
    )
