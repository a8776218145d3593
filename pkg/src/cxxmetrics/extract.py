"""Recovery of functions and classes from a token stream.

This is a brace-structure walk, not a C++ parser. At namespace and class
scope each ``{`` is classified from the tokens of the statement that leads
up to it; function bodies are then skipped as a unit, so nothing inside a
body is mistaken for a declaration.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .complexity import mcc_modified, mcc_traditional
from .lexer import (
    Token,
    TokenKind,
    classify_lines,
    code_tokens,
    count_physical_lines,
    count_statements,
    line_counts,
    matching_close,
    normalize_newlines,
    tokenize,
)
from .model import ClassRecord, FunctionRecord, SourceFileRecord

logger = logging.getLogger(__name__)

CLASS_KEYS = frozenset({"class", "struct", "union"})
ACCESS_WORDS = frozenset({"public", "private", "protected", "signals", "slots", "Q_SIGNALS", "Q_SLOTS"})
_FUNCTION_TAIL = frozenset({")", "const", "override", "noexcept", "volatile", "&", "&&", "final", "mutable"})
_NOT_MEMBER = frozenset({"typedef", "using", "friend", "static_assert", "enum", "namespace"})
_BASE_NOISE = frozenset({"public", "private", "protected", "virtual", "typename"})


def _is(tok: Token, text: str) -> bool:
    return tok.kind in (TokenKind.PUNCTUATOR, TokenKind.KEYWORD) and tok.text == text


def _skip_angles_forward(toks: Sequence[Token], i: int) -> int:
    """``toks[i]`` is ``<``; return the index just past its matching ``>``."""
    depth = 0
    paren = 0
    while i < len(toks):
        t = toks[i].text if toks[i].kind is TokenKind.PUNCTUATOR else ""
        if t == "(":
            paren += 1
        elif t == ")":
            paren -= 1
        elif paren == 0 and t == "<":
            depth += 1
        elif paren == 0 and t in (">", ">>"):
            depth -= len(t)
            if depth <= 0:
                return i + 1
        elif paren == 0 and t in (";", "{", "}"):
            return i
        i += 1
    return i


def _skip_angles_backward(toks: Sequence[Token], i: int) -> int:
    """``toks[i]`` is ``>``; return the index of its matching ``<``."""
    depth = 0
    while i >= 0:
        t = toks[i].text if toks[i].kind is TokenKind.PUNCTUATOR else ""
        if t in (">", ">>"):
            depth += len(t)
        elif t == "<":
            depth -= 1
            if depth <= 0:
                return i
        i -= 1
    return 0


def _strip_template_headers(prefix: Sequence[Token]) -> List[Token]:
    toks = list(prefix)
    while toks and _is(toks[0], "template"):
        if len(toks) > 1 and _is(toks[1], "<"):
            toks = toks[_skip_angles_forward(toks, 1):]
        else:
            toks = toks[1:]
    return toks


def _top_level(toks: Sequence[Token]):
    """Yield ``(index, token)`` for tokens outside (), [] and {} nesting."""
    depth = 0
    for i, t in enumerate(toks):
        if t.kind is TokenKind.PUNCTUATOR:
            if t.text in ("(", "[", "{"):
                if depth == 0:
                    yield i, t
                depth += 1
                continue
            if t.text in (")", "]", "}"):
                depth -= 1
                continue
        if depth == 0:
            yield i, t


def _split_top_level(toks: Sequence[Token], sep: str = ",", angles: bool = True) -> List[List[Token]]:
    parts: List[List[Token]] = [[]]
    depth = 0
    after_eq = False
    for t in toks:
        text = t.text if t.kind is TokenKind.PUNCTUATOR else None
        if text in ("(", "[", "{"):
            depth += 1
        elif text in (")", "]", "}"):
            depth -= 1
        elif angles and not after_eq and text == "<":
            depth += 1
        elif angles and not after_eq and text in (">", ">>"):
            depth -= len(text)
        elif depth == 0 and text == "=":
            after_eq = True
        elif depth <= 0 and text == sep:
            parts.append([])
            depth = 0
            after_eq = False
            continue
        parts[-1].append(t)
    return [p for p in parts if p]


def _nominal_name(toks: Sequence[Token]) -> str:
    """Join ``a :: b < T > :: c`` into ``a::b::c``, dropping template arguments."""
    names: List[str] = []
    i = 0
    while i < len(toks):
        t = toks[i]
        if _is(t, "<"):
            i = _skip_angles_forward(toks, i)
            continue
        if t.kind is TokenKind.IDENTIFIER:
            names.append(t.text)
        i += 1
    return "::".join(names)


def _trailing_qualified_id(toks: Sequence[Token]) -> str:
    parts: List[str] = []
    k = len(toks) - 1
    while k >= 0:
        if _is(toks[k], ">") or _is(toks[k], ">>"):
            k = _skip_angles_backward(toks, k) - 1
        if k < 0 or toks[k].kind is not TokenKind.IDENTIFIER:
            break
        parts.append(toks[k].text)
        k -= 1
        if k >= 0 and _is(toks[k], "::"):
            k -= 1
            continue
        break
    return "::".join(reversed(parts))


def _qualifier_before(toks: Sequence[Token], start: int) -> Optional[str]:
    """Owner named by ``A::B<T>::`` immediately before index ``start``."""
    parts: List[str] = []
    k = start
    while k >= 2 and _is(toks[k - 1], "::"):
        j = k - 2
        if _is(toks[j], ">") or _is(toks[j], ">>"):
            j = _skip_angles_backward(toks, j) - 1
        if j < 0 or toks[j].kind is not TokenKind.IDENTIFIER:
            break
        parts.append(toks[j].text)
        k = j
    return "::".join(reversed(parts)) or None


@dataclass
class _Signature:
    name: str
    owner: Optional[str]
    close_paren: int


def _function_signature(prefix: Sequence[Token]) -> Optional[_Signature]:
    """Locate the declarator ``[Q::]name(params)`` in a statement prefix."""
    first = None
    for i, t in _top_level(prefix):
        if _is(t, "("):
            first = i
            break
        if _is(t, "=") and not (i > 0 and _is(prefix[i - 1], "operator")):
            return None
    if first is None or first == 0:
        return None
    op = None
    for i in range(first - 1, -1, -1):
        if _is(prefix[i], "operator"):
            op = i
            break
        if prefix[i].kind is TokenKind.PUNCTUATOR and prefix[i].text in (";", "{", "}", ","):
            break
    paren = first
    if op is not None:
        if op == first - 1 and first + 1 < len(prefix) and _is(prefix[first + 1], ")"):
            name = "operator()"
            paren = first + 2
            if paren >= len(prefix) or not _is(prefix[paren], "("):
                return None
        else:
            words = [t.text for t in prefix[op + 1:first]]
            joiner = " " if words and words[0][:1].isalpha() else ""
            name = "operator" + joiner + " ".join(words) if joiner else "operator" + "".join(words)
        start = op
    else:
        tok = prefix[first - 1]
        if tok.kind is not TokenKind.IDENTIFIER:
            return None
        name = tok.text
        start = first - 1
        if start >= 1 and _is(prefix[start - 1], "~"):
            name = "~" + name
            start -= 1
    close = matching_close(list(prefix), paren)
    if close < 0:
        return None
    return _Signature(name, _qualifier_before(prefix, start), close)


@dataclass
class _Scope:
    kind: str  # "global", "namespace", "class"
    record: Optional[ClassRecord] = None
    open_index: int = 0


@dataclass
class _Structure:
    tokens: List[Token]
    diagnostics: List[str]
    path: str = ""
    code_lines: Set[int] = field(default_factory=set)
    functions: List[FunctionRecord] = field(default_factory=list)
    classes: List[ClassRecord] = field(default_factory=list)
    partials: Dict[str, ClassRecord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.ct = code_tokens(self.tokens)
        for t in self.tokens:
            if t.kind is TokenKind.COMMENT:
                continue
            for offset, segment in enumerate(t.text.split("\n")):
                if segment.strip():
                    self.code_lines.add(t.line + offset)

    def diag(self, message: str) -> None:
        logger.debug("%s: %s", self.path, message)
        self.diagnostics.append(message)

    def run(self) -> Tuple[List[FunctionRecord], List[ClassRecord]]:
        ct = self.ct
        n = len(ct)
        stack = [_Scope("global")]
        i = 0
        stmt = 0
        while i < n:
            t = ct[i]
            if t.kind is not TokenKind.PUNCTUATOR:
                i += 1
                continue
            text = t.text
            scope = stack[-1]
            if text == "(":
                close = matching_close(ct, i)
                i = close + 1 if close > 0 else i + 1
            elif text == ";":
                if scope.kind == "class":
                    self.member_declaration(scope.record, ct[stmt:i])
                i += 1
                stmt = i
            elif text == ":" and scope.kind == "class" and stmt < i and all(
                x.text in ACCESS_WORDS for x in ct[stmt:i]
            ):
                i += 1
                stmt = i
            elif text == "}":
                if len(stack) == 1:
                    self.diag(f"line {t.line}: unmatched '}}'")
                else:
                    self.close_scope(stack.pop(), i)
                i += 1
                stmt = i
            elif text == "{":
                i, stmt = self.open_brace(stack, stmt, i)
            else:
                i += 1
        while len(stack) > 1:
            scope = stack.pop()
            self.diag(f"scope opened at line {ct[scope.open_index].line} is never closed")
            self.close_scope(scope, n - 1)
        for rec in self.partials.values():
            rec.refresh_method_views()
        return self.functions, self.classes + [self.partials[k] for k in sorted(self.partials)]

    def open_brace(self, stack: List[_Scope], stmt: int, i: int) -> Tuple[int, int]:
        ct = self.ct
        scope = stack[-1]
        prefix = _strip_template_headers(ct[stmt:i])
        while prefix and prefix[0].text in ("typedef", "export", "inline") and not (
            len(prefix) > 1 and _is(prefix[1], "namespace")
        ):
            prefix = prefix[1:]
        if prefix and (_is(prefix[0], "namespace") or (
            len(prefix) > 1 and _is(prefix[0], "inline") and _is(prefix[1], "namespace")
        )):
            stack.append(_Scope("namespace", open_index=i))
            return i + 1, i + 1
        if len(prefix) == 2 and _is(prefix[0], "extern") and prefix[1].kind is TokenKind.STRING:
            stack.append(_Scope("namespace", open_index=i))
            return i + 1, i + 1

        close = matching_close(ct, i)
        if prefix and prefix[0].kind is TokenKind.KEYWORD and prefix[0].text in CLASS_KEYS:
            looks_like_function = prefix[-1].text in _FUNCTION_TAIL and any(
                _is(x, "(") for _, x in _top_level(prefix)
            ) and not _is(prefix[-1], "final")
            if not looks_like_function:
                record = self.open_class(stack, prefix)
                if record is None:
                    return (close + 1 if close > 0 else i + 1), stmt
                stack.append(_Scope("class", record, open_index=i))
                return i + 1, i + 1

        sig = _function_signature(prefix)
        if sig is not None:
            tail = prefix[sig.close_paren + 1:]
            in_init_list = any(_is(x, ":") for _, x in _top_level(tail))
            before = ct[i - 1]
            if in_init_list and not (_is(before, ")") or _is(before, "}")):
                # Brace initializer of a member in a constructor's init list.
                return (close + 1 if close > 0 else i + 1), stmt
            if close < 0:
                self.diag(f"line {ct[i].line}: body of '{sig.name}' is never closed; discarded")
                return i + 1, i + 1
            self.add_function(scope, sig, prefix, i, close)
            return close + 1, close + 1

        # Initializer lists, enum bodies, lambdas: opaque, statement continues.
        return (close + 1 if close > 0 else i + 1), stmt

    def open_class(self, stack: List[_Scope], prefix: List[Token]) -> Optional[ClassRecord]:
        head = prefix[1:]
        colon = None
        for j, x in _top_level(head):
            if _is(x, ":"):
                colon = j
                break
        name_part = head if colon is None else head[:colon]
        # Drop attribute and export-macro noise: [[...]], alignas(...), final.
        cleaned: List[Token] = []
        j = 0
        while j < len(name_part):
            x = name_part[j]
            if _is(x, "(") or _is(x, "["):
                j = matching_close(list(name_part), j) + 1 or len(name_part)
                if cleaned and cleaned[-1].kind is not TokenKind.PUNCTUATOR:
                    cleaned.pop()
                continue
            if x.text != "final":
                cleaned.append(x)
            j += 1
        # The class name is the trailing qualified-id; anything earlier is an export macro.
        name = _trailing_qualified_id(cleaned)
        line = prefix[0].line
        if not name:
            self.diag(f"line {line}: anonymous {prefix[0].text} skipped")
            return None
        enclosing = next((s.record.name for s in reversed(stack) if s.kind == "class"), None)
        qualified = f"{enclosing}::{name}" if enclosing else name
        bases: List[str] = []
        if colon is not None:
            for part in _split_top_level(head[colon + 1:]):
                base = _nominal_name([x for x in part if x.text not in _BASE_NOISE])
                if base:
                    bases.append(base)
        record = ClassRecord(name=qualified, base_names=bases, path=self.path, line=line)
        record.referenced_type_names.update(bases)
        return record

    def close_scope(self, scope: _Scope, close_index: int) -> None:
        if scope.kind != "class":
            return
        rec = scope.record
        for t in self.ct[scope.open_index:close_index + 1]:
            if t.kind is TokenKind.IDENTIFIER:
                rec.referenced_type_names.add(t.text)
        rec.refresh_method_views()
        self.classes.append(rec)

    def add_function(self, scope: _Scope, sig: _Signature, prefix: List[Token], open_i: int, close_i: int) -> None:
        ct = self.ct
        body = ct[open_i:close_i + 1]
        start_line = prefix[0].line if prefix else ct[open_i].line
        end_line = ct[close_i].line
        owner = sig.owner
        if scope.kind == "class":
            owner = f"{scope.record.name}::{owner}" if owner else scope.record.name
        # A constructor's init list touches attributes as much as its body does.
        tail = prefix[sig.close_paren + 1:]
        identifiers = frozenset(t.text for t in (*tail, *body) if t.kind is TokenKind.IDENTIFIER)
        callees = frozenset(
            body[k].text
            for k in range(len(body) - 1)
            if body[k].kind is TokenKind.IDENTIFIER and _is(body[k + 1], "(")
        )
        rec = FunctionRecord(
            name=sig.name,
            owner_class=owner,
            start_line=start_line,
            end_line=end_line,
            loc=sum(1 for ln in range(start_line, end_line + 1) if ln in self.code_lines),
            mcc_traditional=mcc_traditional(body),
            mcc_modified=mcc_modified(body),
            identifiers=identifiers,
            callees=callees,
            path=self.path,
        )
        self.functions.append(rec)
        if scope.kind == "class":
            scope.record.method_names.add(sig.name)
            scope.record.methods.append(rec)
        elif owner:
            partial = self.partials.get(owner)
            if partial is None:
                partial = self.partials[owner] = ClassRecord(name=owner, path=self.path, line=start_line, has_body=False)
            partial.method_names.add(sig.name)
            partial.methods.append(rec)
            partial.referenced_type_names.update(t.text for t in prefix if t.kind is TokenKind.IDENTIFIER)
            partial.referenced_type_names.update(identifiers)

    def member_declaration(self, rec: ClassRecord, stmt: List[Token]) -> None:
        stmt = _strip_template_headers(stmt)
        if not stmt or stmt[0].text in _NOT_MEMBER or stmt[0].text in CLASS_KEYS:
            return
        sig = _function_signature(stmt)
        if sig is not None:
            rec.method_names.add(sig.name)
            return
        opens = [i for i, x in _top_level(stmt) if _is(x, "(")]
        if opens:
            # Only the function-pointer form ``R (*name)(args)`` is named;
            # other parenthesised declarators are skipped.
            i = opens[0]
            inner = stmt[i + 1:i + 4]
            if (len(inner) == 3 and inner[0].text in ("*", "&")
                    and inner[1].kind is TokenKind.IDENTIFIER and _is(inner[2], ")")):
                rec.attribute_names.add(inner[1].text)
            return
        for declarator in _split_top_level(stmt):
            name = None
            for x in declarator:
                if x.kind is TokenKind.PUNCTUATOR and x.text in ("=", "{", "[", ":"):
                    break
                if x.kind is TokenKind.IDENTIFIER:
                    name = x.text
            if name:
                rec.attribute_names.add(name)


def scan_structure(tokens: List[Token], diagnostics: Optional[List[str]] = None, path: str = "") -> Tuple[List[FunctionRecord], List[ClassRecord]]:
    return _Structure(tokens, diagnostics if diagnostics is not None else [], path).run()


def extract_functions(tokens: List[Token], diagnostics: Optional[List[str]] = None) -> List[FunctionRecord]:
    """Function and method definitions that have a body, in source order."""
    functions, _ = scan_structure(tokens, diagnostics)
    return functions


def extract_classes(tokens: List[Token], diagnostics: Optional[List[str]] = None) -> List[ClassRecord]:
    """Classes defined in the token stream.

    Out-of-line definitions ``C::m`` are returned as records with
    ``has_body=False`` so that they can be merged into ``C`` later.
    """
    _, classes = scan_structure(tokens, diagnostics)
    return classes


def analyze_source(text: str, path: str = "") -> SourceFileRecord:
    """Run the whole per-file analysis on decoded source text."""
    diagnostics: List[str] = []
    text = normalize_newlines(text)
    tokens = tokenize(text, diagnostics)
    total = count_physical_lines(text)
    counts = line_counts(classify_lines(tokens, total))
    statements = count_statements(tokens, diagnostics)
    functions, classes = scan_structure(tokens, diagnostics, path)
    return SourceFileRecord(
        path=path,
        total_lines=total,
        statements=statements,
        functions=functions,
        classes=classes,
        diagnostics=diagnostics,
        **counts,
    )


def analyze_file(path: str, display_path: Optional[str] = None) -> SourceFileRecord:
    """Read and analyze one file; undecodable bytes are replaced with a diagnostic."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
        note = None
    except UnicodeDecodeError:
        text = raw.decode("utf-8", errors="replace")
        note = "invalid UTF-8 bytes replaced"
    record = analyze_source(text, display_path or path)
    if note:
        record.diagnostics.insert(0, note)
    return record
