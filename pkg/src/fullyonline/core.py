"""Text collection storage and the update-operator stream format."""
from __future__ import annotations

import io
import re
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable


class InvalidTextId(ValueError):
    pass


class StreamParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class UpdateOp:
    """Append ``ch`` to text number ``text_id`` (1-based)."""

    text_id: int
    ch: str

    def __post_init__(self):
        if self.text_id < 1:
            raise InvalidTextId(f"text id must be >= 1, got {self.text_id}")
        if len(self.ch) != 1:
            raise ValueError(f"an update appends exactly one character, got {self.ch!r}")


class TextStore:
    """Append-only collection of texts T_1..T_K.

    Text ids are registered lazily: appending to id ``K + 1`` opens a new
    empty text first.
    """

    def __init__(self):
        self.texts: list[list[str]] = []
        self.total_len = 0
        self.char_counts: Counter[str] = Counter()

    @property
    def num_texts(self) -> int:
        return len(self.texts)

    @property
    def alphabet(self) -> set[str]:
        return set(self.char_counts)

    @property
    def sigma(self) -> int:
        return len(self.char_counts)

    def append(self, op: UpdateOp) -> int:
        k = op.text_id
        if k < 1 or k > len(self.texts) + 1:
            raise InvalidTextId(f"text id {k} is not in 1..{len(self.texts) + 1}")
        if k == len(self.texts) + 1:
            self.texts.append([])
        text = self.texts[k - 1]
        text.append(op.ch)
        self.total_len += 1
        self.char_counts[op.ch] += 1
        return len(text)

    def length(self, k: int) -> int:
        if k < 1 or k > len(self.texts):
            return 0
        return len(self.texts[k - 1])

    def char_at(self, k: int, i: int) -> str:
        if k < 1 or k > len(self.texts):
            raise IndexError(f"no text with id {k}")
        text = self.texts[k - 1]
        if i < 1 or i > len(text):
            raise IndexError(f"position {i} out of range 1..{len(text)} for text {k}")
        return text[i - 1]

    def text(self, k: int) -> str:
        return "".join(self.texts[k - 1])

    def substring(self, k: int, i: int, j: int) -> str:
        """T_k[i..j], 1-based and inclusive."""
        return "".join(self.texts[k - 1][i - 1 : j])

    def as_strings(self) -> list[str]:
        return ["".join(t) for t in self.texts]

    def snapshot(self) -> tuple[str, ...]:
        return tuple(self.as_strings())


def replay(ops: Iterable[UpdateOp]) -> TextStore:
    store = TextStore()
    for op in ops:
        store.append(op)
    return store


# -- stream format ---------------------------------------------------------
#   <k> TAB <token>, token = one visible character or \xHH / \uHHHH

_ESCAPE = re.compile(r"\\x([0-9A-Fa-f]{2})|\\u([0-9A-Fa-f]{4})")


def _decode_token(token: str, lineno: int) -> str:
    if len(token) == 1:
        return token
    m = _ESCAPE.fullmatch(token)
    if m is None:
        raise StreamParseError(lineno, f"bad character token {token!r}")
    return chr(int(m.group(1) or m.group(2), 16))


def _encode_char(ch: str) -> str:
    code = ord(ch)
    if ch == "\\" or not ch.isprintable() or ch.isspace():
        if code <= 0xFF:
            return f"\\x{code:02X}"
        if code <= 0xFFFF:
            return f"\\u{code:04X}"
        raise ValueError(f"character U+{code:X} has no escape in the stream format")
    return ch


def parse_stream(source: str | bytes | IO) -> list[UpdateOp]:
    """Parse an update stream. Accepts text, bytes or a file object."""
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)
    ops = []
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.rstrip("\r\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise StreamParseError(lineno, "expected '<k>\\t<char>'")
        k_text, token = parts
        if not k_text.isdigit():
            raise StreamParseError(lineno, f"bad text id {k_text!r}")
        k = int(k_text)
        if k < 1:
            raise StreamParseError(lineno, "text id must be >= 1")
        ops.append(UpdateOp(k, _decode_token(token, lineno)))
    return ops


def serialize_stream(ops: Iterable[UpdateOp]) -> str:
    return "".join(f"{op.text_id}\t{_encode_char(op.ch)}\n" for op in ops)
