"""
Text syntax for words, classes, lagrangians and matrices.

Words are whitespace separated items; an item is an atom with an optional
power. Atoms are m<i>, l<i>, 0, [a1,...,ag;b1,...,bg] or a parenthesised word.
"""

from __future__ import annotations

import json
import re

import config
from src.topology.mcg import CurveClass, MappingClass, TwistLetter, TwistWord
from src.topology.symplectic import Lagrangian, SymplecticSpace
from src.utils.errors import DimensionMismatchError, WordSyntaxError

_INT = re.compile(r"-?\d+")


class _WordParser:
    def __init__(self, text: str, genus: int, permissive: bool):
        self.text = text
        self.genus = genus
        self.permissive = permissive
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str):
        if self._peek() != char:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise WordSyntaxError(f"expected {char!r}, found {found}", self.pos)
        self.pos += 1

    def _integer(self) -> int:
        self._skip()
        match = _INT.match(self.text, self.pos)
        if not match:
            raise WordSyntaxError("expected an integer", self.pos)
        self.pos = match.end()
        return int(match.group())

    def parse(self) -> tuple[TwistLetter, ...]:
        letters = self._sequence()
        if self._peek():
            raise WordSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return letters

    def _sequence(self) -> tuple[TwistLetter, ...]:
        letters: list[TwistLetter] = []
        while self._peek() not in ("", ")"):
            start = self.pos
            letters.extend(self._item())
            self._check_length(len(letters), start)
        return tuple(letters)

    def _item(self) -> tuple[TwistLetter, ...]:
        atom = self._atom()
        if self._peek() != "^":
            return atom
        self.pos += 1
        power_at = self.pos
        k = self._integer()
        self._check_length(len(atom) * abs(k), power_at)
        base = atom if k >= 0 else tuple(TwistLetter(c, -e) for c, e in reversed(atom))
        return base * abs(k)

    def _check_length(self, length: int, position: int):
        if length > config.MAX_PARSED_WORD_LENGTH:
            raise WordSyntaxError(
                f"word expands to {length} letters, more than {config.MAX_PARSED_WORD_LENGTH}", position
            )

    def _atom(self) -> tuple[TwistLetter, ...]:
        char = self._peek()
        start = self.pos
        if char == "(":
            self.pos += 1
            inner = self._sequence()
            self._expect(")")
            return inner
        if char == "[":
            return (TwistLetter(self._explicit_class(), 1),)
        if char == "0":
            self.pos += 1
            return (TwistLetter(CurveClass.zero(self.genus), 1),)
        if char in ("m", "l"):
            self.pos += 1
            match = re.compile(r"\d+").match(self.text, self.pos)
            if not match:
                raise WordSyntaxError(f"expected a handle index after {char!r}", self.pos)
            self.pos = match.end()
            index = int(match.group())
            if not 1 <= index <= self.genus:
                raise WordSyntaxError(f"handle index {index} outside 1..{self.genus}", start)
            make = CurveClass.meridian if char == "m" else CurveClass.longitude
            return (TwistLetter(make(self.genus, index - 1), 1),)
        if not char:
            raise WordSyntaxError("unexpected end of input", self.pos)
        raise WordSyntaxError(f"unexpected {char!r}", self.pos)

    def _explicit_class(self) -> CurveClass:
        start = self.pos
        self._expect("[")
        halves = [[], []]
        for half in range(2):
            halves[half].append(self._integer())
            while self._peek() == ",":
                self.pos += 1
                halves[half].append(self._integer())
            if half == 0:
                self._expect(";")
        self._expect("]")
        a, b = halves
        if len(a) != self.genus or len(b) != self.genus:
            raise WordSyntaxError(
                f"class needs {self.genus} meridian and {self.genus} longitude coefficients, got {len(a)} and {len(b)}",
                start,
            )
        return CurveClass.from_coefficients(a, b, self.permissive)


def parse_word(text: str, genus: int, permissive: bool = False) -> TwistWord:
    """e.g. parse_word("(m1 l1)^6 0^-1", 1) is the chain relator."""
    return TwistWord(genus, _WordParser(text, genus, permissive).parse())


def format_word(word: TwistWord) -> str:
    return str(word)


def parse_class(text: str, genus: int, permissive: bool = False) -> CurveClass:
    word = parse_word(text, genus, permissive)
    if len(word) != 1 or word.letters[0].exponent != 1:
        raise WordSyntaxError(f"expected a single class, got {len(word)} letters", 0)
    return word.letters[0].curve


def _integer_rows(text: str) -> list[list[int]]:
    text = text.strip()
    if text.startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON list: {exc}") from exc
        return [[int(x) for x in row] for row in rows]
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError as exc:
        raise ValueError(f"malformed integer rows {text!r}") from exc


def parse_lagrangian(text: str, genus: int) -> Lagrangian:
    """`std`, basis vectors as "1,0,0,1;0,1,-1,0", or a JSON list of vectors."""
    space = SymplecticSpace(genus)
    if text.strip().lower() == "std":
        return space.standard_lagrangian()
    vectors = _integer_rows(text)
    for v in vectors:
        if len(v) != space.dimension:
            raise DimensionMismatchError(f"lagrangian vector {v} should have {space.dimension} entries")
    return Lagrangian.span(space, vectors)


def parse_matrix(text: str, genus: int | None = None) -> MappingClass:
    rows = _integer_rows(text)
    f = MappingClass.from_rows(rows)
    if genus is not None and f.genus != genus:
        raise DimensionMismatchError(f"matrix of genus {f.genus} given for genus {genus}")
    return f
