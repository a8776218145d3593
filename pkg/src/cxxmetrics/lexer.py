"""Lexical scanning of C-family sources.

The scanner never preprocesses or parses: it only splits text into opaque
spans (comments, literals, preprocessor directives) and plain tokens, which
is enough to classify physical lines, count statements and find decision
points.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

logger = logging.getLogger(__name__)


class TokenKind(str, enum.Enum):
    IDENTIFIER = "Identifier"
    KEYWORD = "Keyword"
    PUNCTUATOR = "Punctuator"
    STRING = "StringLiteral"
    CHAR = "CharLiteral"
    NUMBER = "NumberLiteral"
    COMMENT = "CommentSpan"
    PREPROCESSOR = "PreprocessorLine"


class LineClass(str, enum.Enum):
    BLANK = "Blank"
    COMMENT = "Comment"
    CODE = "Code"


KEYWORDS = frozenset(
    """
    alignas alignof and and_eq asm auto bitand bitor bool break case catch
    char char8_t char16_t char32_t class compl concept const consteval
    constexpr constinit const_cast continue co_await co_return co_yield
    decltype default delete do double dynamic_cast else enum explicit export
    extern false float for friend goto if inline int long mutable namespace
    new noexcept not not_eq nullptr operator or or_eq private protected
    public register reinterpret_cast requires return short signed sizeof
    static static_assert static_cast struct switch template this
    thread_local throw true try typedef typeid typename union unsigned using
    virtual void volatile wchar_t while xor xor_eq
    """.split()
)

# Longest first so that the greedy match below picks e.g. ">>=" over ">>".
PUNCTUATORS = sorted(
    """
    >>= <<= ->* ... <=> :: -> ++ -- && || == != <= >= += -= *= /= %= &= |= ^=
    << >> .* ## { } [ ] ( ) ; : , . ? ~ ! + - * / % ^ & | = < > #
    """.split(),
    key=len,
    reverse=True,
)

_STRING_PREFIXES = ("u8", "u", "U", "L")
_RAW_PREFIXES = ("R", "u8R", "uR", "UR", "LR")


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    @property
    def end_line(self) -> int:
        return self.line + self.text.count("\n")

    @property
    def is_code(self) -> bool:
        return self.kind not in (TokenKind.COMMENT,)

    def __repr__(self) -> str:
        return f"{self.kind.value}({self.text!r}@{self.line}:{self.column})"


def normalize_newlines(text: str) -> str:
    return text.replace("\r\n", "\n").replace("\r", "\n")


def count_physical_lines(text: str) -> int:
    """Number of physical lines; a trailing newline does not open a new line."""
    if not text:
        return 0
    return text.count("\n") + (0 if text.endswith("\n") else 1)


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or ch == "$" or ch.isalpha()


def _is_ident_char(ch: str) -> bool:
    return ch == "_" or ch == "$" or ch.isalnum()


class _Scanner:
    def __init__(self, text: str, diagnostics: Optional[List[str]]):
        self.text = text
        self.n = len(text)
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens: List[Token] = []
        self.diagnostics = diagnostics

    def diag(self, message: str) -> None:
        logger.debug(message)
        if self.diagnostics is not None:
            self.diagnostics.append(message)

    def emit(self, kind: TokenKind, start: int, line: int, col: int) -> None:
        self.tokens.append(Token(kind, self.text[start:self.pos], line, col))

    def advance_to(self, end: int) -> None:
        chunk = self.text[self.pos:end]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = len(chunk) - chunk.rfind("\n")
        else:
            self.col += len(chunk)
        self.pos = end

    def startswith(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def scan(self) -> List[Token]:
        text = self.text
        at_line_start = True
        in_directive = False
        while self.pos < self.n:
            ch = text[self.pos]
            if ch == "\n":
                at_line_start = True
                in_directive = False
                self.advance_to(self.pos + 1)
                continue
            if ch.isspace():
                self.advance_to(self.pos + 1)
                continue
            if self.startswith("//"):
                self.line_comment()
                continue
            if self.startswith("/*"):
                self.block_comment()
                at_line_start = False
                continue
            if in_directive or (at_line_start and ch == "#"):
                # The directive ends at an unescaped newline; a comment
                # interrupts it and the directive resumes after the comment.
                in_directive = not self.directive()
                at_line_start = False
                continue
            at_line_start = False
            if _is_ident_start(ch):
                self.word()
            elif ch.isdigit() or (ch == "." and self.pos + 1 < self.n and text[self.pos + 1].isdigit()):
                self.number()
            elif ch == '"':
                self.quoted(self.pos, '"', TokenKind.STRING)
            elif ch == "'":
                self.quoted(self.pos, "'", TokenKind.CHAR)
            else:
                self.punctuator()
        return self.tokens

    def line_comment(self) -> None:
        start, line, col = self.pos, self.line, self.col
        end = self.text.find("\n", self.pos)
        self.advance_to(self.n if end < 0 else end)
        self.emit(TokenKind.COMMENT, start, line, col)

    def block_comment(self) -> None:
        start, line, col = self.pos, self.line, self.col
        end = self.text.find("*/", self.pos + 2)
        if end < 0:
            self.diag(f"line {line}: unterminated block comment")
            self.advance_to(self.n)
        else:
            self.advance_to(end + 2)
        self.emit(TokenKind.COMMENT, start, line, col)

    def directive(self) -> bool:
        """Consume a directive segment; True when it reached the end of the directive."""
        text = self.text
        start, line, col = self.pos, self.line, self.col
        i = self.pos
        finished = True
        while i < self.n:
            c = text[i]
            if c == "\\" and text.startswith("\n", i + 1):
                i += 2
                continue
            if c == "\n":
                break
            if text.startswith("//", i) or text.startswith("/*", i):
                finished = text.startswith("//", i)
                break
            if c in "\"'":
                i = self._skip_quoted(i, c)
                continue
            i += 1
        end = i
        while end > start and text[end - 1] in " \t\f\v":
            end -= 1
        self.advance_to(end)
        if end > start:
            self.emit(TokenKind.PREPROCESSOR, start, line, col)
        self.advance_to(i)
        return finished

    def _skip_quoted(self, i: int, quote: str) -> int:
        """Index just past the literal opened at ``i``; stops before a bare newline."""
        text = self.text
        i += 1
        while i < self.n:
            c = text[i]
            if c == "\\":
                i += 2
                continue
            if c == quote:
                return i + 1
            if c == "\n":
                return i
            i += 1
        return self.n

    def word(self) -> None:
        text = self.text
        start, line, col = self.pos, self.line, self.col
        i = self.pos + 1
        while i < self.n and _is_ident_char(text[i]):
            i += 1
        word = text[start:i]
        nxt = text[i] if i < self.n else ""
        if nxt == '"' and word in _RAW_PREFIXES:
            self.raw_string(start, i, line, col)
            return
        if nxt in "\"'" and nxt and word in _STRING_PREFIXES:
            kind = TokenKind.STRING if nxt == '"' else TokenKind.CHAR
            self.quoted(start, nxt, kind, open_at=i)
            return
        self.advance_to(i)
        self.emit(TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENTIFIER, start, line, col)

    def raw_string(self, start: int, quote: int, line: int, col: int) -> None:
        text = self.text
        paren = text.find("(", quote + 1)
        delim_end = text.find("\n", quote + 1)
        if paren < 0 or (0 <= delim_end < paren) or paren - quote - 1 > 16:
            # Not a well-formed raw string opener; lex the prefix as a word.
            self.advance_to(quote)
            self.emit(TokenKind.IDENTIFIER, start, line, col)
            return
        terminator = ")" + text[quote + 1:paren] + '"'
        end = text.find(terminator, paren + 1)
        if end < 0:
            self.diag(f"line {line}: unterminated raw string literal")
            self.advance_to(self.n)
        else:
            self.advance_to(end + len(terminator))
        self.emit(TokenKind.STRING, start, line, col)

    def quoted(self, start: int, quote: str, kind: TokenKind, open_at: Optional[int] = None) -> None:
        line, col = self.line, self.col
        opener = self.pos if open_at is None else open_at
        end = self._skip_quoted(opener, quote)
        if end - 1 == opener or self.text[end - 1] != quote:
            self.diag(f"line {line}: unterminated {kind.value}")
        self.advance_to(end)
        self.emit(kind, start, line, col)

    def number(self) -> None:
        text = self.text
        start, line, col = self.pos, self.line, self.col
        i = self.pos + 1
        while i < self.n:
            c = text[i]
            if _is_ident_char(c) or c == ".":
                i += 1
            elif c in "+-" and text[i - 1] in "eEpP":
                i += 1
            elif c == "'" and i + 1 < self.n and text[i + 1].isalnum():
                i += 1
            else:
                break
        self.advance_to(i)
        self.emit(TokenKind.NUMBER, start, line, col)

    def punctuator(self) -> None:
        start, line, col = self.pos, self.line, self.col
        for p in PUNCTUATORS:
            if self.startswith(p):
                self.advance_to(self.pos + len(p))
                break
        else:
            self.advance_to(self.pos + 1)
        self.emit(TokenKind.PUNCTUATOR, start, line, col)


def tokenize(text: str, diagnostics: Optional[List[str]] = None) -> List[Token]:
    """Split ``text`` into tokens ordered by position.

    Comments, string/char literals and preprocessor directives come out as
    single opaque tokens. Problems such as an unterminated comment are
    appended to ``diagnostics`` when a list is supplied; scanning always
    runs to the end of the input.
    """
    return _Scanner(normalize_newlines(text), diagnostics).scan()


def code_tokens(tokens: Iterable[Token]) -> List[Token]:
    """Tokens that take part in syntax: no comments, no directives."""
    return [t for t in tokens if t.kind not in (TokenKind.COMMENT, TokenKind.PREPROCESSOR)]


def classify_lines(tokens: Iterable[Token], total_lines: int) -> List[LineClass]:
    """Classify each physical line as blank, comment-only or code.

    Whitespace never produces a token, so a line is blank exactly when no
    token contributes a non-whitespace character to it. A line touched by
    any non-comment token is code, even if it also carries a comment.
    """
    classes = [LineClass.BLANK] * total_lines
    for tok in tokens:
        target = LineClass.COMMENT if tok.kind is TokenKind.COMMENT else LineClass.CODE
        for offset, segment in enumerate(tok.text.split("\n")):
            idx = tok.line - 1 + offset
            if idx >= total_lines or not segment.strip():
                continue
            if classes[idx] is not LineClass.CODE:
                classes[idx] = target
    return classes


def line_counts(classes: Iterable[LineClass]) -> dict:
    counts = {"loc": 0, "bloc": 0, "cloc_comment": 0}
    for c in classes:
        if c is LineClass.CODE:
            counts["loc"] += 1
        elif c is LineClass.BLANK:
            counts["bloc"] += 1
        else:
            counts["cloc_comment"] += 1
    return counts


_COMPOUND_HEADS = frozenset({"if", "else", "for", "while", "do", "switch"})
_PAREN_HEADED = frozenset({"if", "for", "while", "switch"})


def matching_close(toks: List[Token], i: int) -> int:
    """Index of the bracket closing ``toks[i]``; -1 if it is never closed."""
    open_text = toks[i].text
    close_text = {"(": ")", "[": "]", "{": "}"}[open_text]
    depth = 0
    for j in range(i, len(toks)):
        t = toks[j]
        if t.kind is not TokenKind.PUNCTUATOR:
            continue
        if t.text == open_text:
            depth += 1
        elif t.text == close_text:
            depth -= 1
            if depth == 0:
                return j
    return -1


def count_statements(tokens: Iterable[Token], diagnostics: Optional[List[str]] = None) -> int:
    """Count statements: ``;`` terminators plus brace-bodied control constructs.

    Semicolons inside a ``for`` header are separators, not terminators. A
    construct headed by if/else/for/while/do/switch adds one when its body
    is a ``{`` block, since such a body has no terminator of its own.
    """
    toks = code_tokens(tokens)
    count = 0
    # Index just past the closing paren of every for-header currently open.
    for_header_ends: List[int] = []
    depth = 0
    for i, t in enumerate(toks):
        while for_header_ends and i >= for_header_ends[-1]:
            for_header_ends.pop()
        if t.kind is TokenKind.PUNCTUATOR:
            if t.text == ";" and not for_header_ends:
                count += 1
            elif t.text == "{":
                depth += 1
            elif t.text == "}":
                depth -= 1
                if depth < 0:
                    _note(diagnostics, f"line {t.line}: unmatched '}}'")
                    depth = 0
            continue
        if t.kind is not TokenKind.KEYWORD or t.text not in _COMPOUND_HEADS:
            continue
        j = i + 1
        if t.text in _PAREN_HEADED:
            if j >= len(toks) or toks[j].text != "(":
                continue
            close = matching_close(toks, j)
            if close < 0:
                continue
            if t.text == "for":
                for_header_ends.append(close)
            j = close + 1
        if j < len(toks) and toks[j].kind is TokenKind.PUNCTUATOR and toks[j].text == "{":
            count += 1
    if depth > 0:
        _note(diagnostics, f"{depth} unclosed '{{'")
    return count


def _note(diagnostics: Optional[List[str]], message: str) -> None:
    logger.debug(message)
    if diagnostics is not None:
        diagnostics.append(message)
