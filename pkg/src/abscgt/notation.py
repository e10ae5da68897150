"""Text notation for game forms.

Grammar (whitespace is insignificant)::

    form  := term ("+" term)*
    term  := brace | named
    brace := "{" list "|" list "}"
    list  := <empty> | form ("," form)*
    named := INT | "*" | "hat(" INT ")" | "ostar(" NAT ")" | "zeta(" INT ")"
           | "adj(" form ")" | "conj(" form ")"

An integer ``n`` denotes ``n`` moves for Left (Right when negative) and ``+``
is the disjunctive sum.  The printer emits brace notation with the shorthands
``0``, ``*`` and integers, ordering options by ``(birthday, text)`` so that the
output does not depend on arena insertion order.
"""

from __future__ import annotations

from .errors import DomainError, GameError
from .forms import Arena, FormId


class NotationError(GameError, ValueError):
    """Base class for text notation errors."""


class ParseError(NotationError):
    """Syntax error at a given character offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class SemanticError(NotationError):
    """Well-formed text denoting an undefined form, e.g. ``zeta(1)``."""


_NAMED = ("hat", "ostar", "zeta", "adj", "conj")


class _Parser:
    def __init__(self, text: str, arena: Arena):
        self.text = text
        self.pos = 0
        self.arena = arena

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip(self) -> None:
        text = self.text
        while self.pos < len(text) and text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def integer(self, signed: bool = True) -> int:
        self.skip()
        start = self.pos
        negative = False
        if signed and self.peek() == "-":
            negative = True
            self.pos += 1
            self.skip()
        digits_at = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_at:
            self.pos = start
            raise self.error("expected an integer")
        value = int(self.text[digits_at:self.pos])
        return -value if negative else value

    def form(self) -> FormId:
        g = self.term()
        while self.peek() == "+":
            self.pos += 1
            g = self.arena.sum(g, self.term())
        return g

    def term(self) -> FormId:
        ch = self.peek()
        if ch == "{":
            return self.brace()
        if ch == "*":
            self.pos += 1
            return self.arena.star
        if ch == "-" or ch.isdigit():
            return self.arena.moves(self.integer())
        if ch.isalpha():
            return self.named()
        raise self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")

    def brace(self) -> FormId:
        self.expect("{")
        left = self.option_list("|")
        self.expect("|")
        right = self.option_list("}")
        self.expect("}")
        return self.arena.intern(left, right)

    def option_list(self, stop: str) -> list[FormId]:
        if self.peek() == stop:
            return []
        items = [self.form()]
        while self.peek() == ",":
            self.pos += 1
            items.append(self.form())
        return items

    def named(self) -> FormId:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        name = self.text[start:self.pos]
        if name not in _NAMED:
            self.pos = start
            raise self.error(f"unknown name {name!r}")
        self.expect("(")
        at = self.pos
        if name in ("adj", "conj"):
            inner = self.form()
            self.expect(")")
            return self.arena.adjoint(inner) if name == "adj" else self.arena.conjugate(inner)
        n = self.integer(signed=name != "ostar")
        self.expect(")")
        try:
            return self.arena.construct_family(name, n)
        except DomainError as exc:
            raise SemanticError(f"{exc} (at position {at})") from exc


def parse(text: str, arena: Arena) -> FormId:
    """Parse ``text`` into a form interned in ``arena``."""
    parser = _Parser(text, arena)
    g = parser.form()
    if parser.peek():
        raise parser.error(f"trailing input {parser.peek()!r}")
    return g


def parse_many(texts, arena: Arena) -> list[FormId]:
    return [parse(t, arena) for t in texts]


def as_integer(arena: Arena, g: FormId) -> int | None:
    """Return ``n`` if ``g`` is the form ``moves(n)``, else None."""
    table = arena.cache("as_integer")
    if g in table:
        return table[g]
    left, right = arena.node(g)
    value = None
    if not left and not right:
        value = 0
    elif len(left) == 1 and not right:
        k = as_integer(arena, left[0])
        if k is not None and k >= 0:
            value = k + 1
    elif len(right) == 1 and not left:
        k = as_integer(arena, right[0])
        if k is not None and k <= 0:
            value = k - 1
    table[g] = value
    return value


def render(g: FormId, arena: Arena, zero: str = "0") -> str:
    """Canonical text of ``g``; ``parse(render(g)) == g``."""
    table = arena.cache(("render", zero))
    hit = table.get(g)
    if hit is not None:
        return hit
    n = as_integer(arena, g)
    left, right = arena.node(g)
    if n is not None and (n != 0 or zero == "0"):
        text = str(n)
    elif left == (0,) and right == (0,):
        text = "*"
    else:
        text = "{%s|%s}" % (_render_set(left, arena, zero), _render_set(right, arena, zero))
    table[g] = text
    return text


def _render_set(ids, arena: Arena, zero: str) -> str:
    keyed = sorted((arena.birthday(x), render(x, arena, zero)) for x in ids)
    return ",".join(text for _, text in keyed)


def sort_key(g: FormId, arena: Arena) -> tuple[int, str]:
    """Arena-independent ordering used wherever output must be reproducible."""
    return arena.birthday(g), render(g, arena)
