"""
Text syntax for ring elements::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" natural)?
    atom   := integer | "x[" ordinal "," stage "]" | "z" | "y" id | "(" expr ")"

Division is exact localization: the divisor must be a unit of the ring.
"""

from ordeuclid.eucworld import RElement, Ring
from ordeuclid.ordinals import OrdinalSyntaxError, parse as parse_ordinal
from ordeuclid.polys import VarKind


def _is_digit(char: str) -> bool:
    return len(char) == 1 and "0" <= char <= "9"


class ElementSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class _ElementParser:
    def __init__(self, ring: Ring, text: str) -> None:
        self.ring = ring
        self.text = text
        self.pos = 0

    def _peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            found = self._peek() or "end of input"
            raise ElementSyntaxError(f"expected '{char}', found {found!r}", self.pos)
        self.pos += 1

    def _natural(self) -> int:
        self._peek()
        start = self.pos
        while self.pos < len(self.text) and _is_digit(self.text[self.pos]):
            self.pos += 1
        if start == self.pos:
            raise ElementSyntaxError("expected a natural number", start)
        return int(self.text[start : self.pos])

    def expr(self) -> RElement:
        value = self.term()
        while (op := self._peek()) in ("+", "-"):
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RElement:
        value = self.unary()
        while (op := self._peek()) in ("*", "/"):
            self.pos += 1
            rhs = self.unary()
            value = value * rhs if op == "*" else self._quotient(value, rhs)
        return value

    def _quotient(self, a: RElement, b: RElement) -> RElement:
        if b.is_zero():
            raise ZeroDivisionError("division by zero")
        return self.ring.element(a.num * b.den, a.den * b.num)

    def unary(self) -> RElement:
        if self._peek() == "-":
            self.pos += 1
            return -self.unary()
        return self.power()

    def power(self) -> RElement:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            return base ** self._natural()
        return base

    def atom(self) -> RElement:
        char = self._peek()
        start = self.pos
        if _is_digit(char):
            return self.ring.scalar(self._natural())
        if char == "(":
            self.pos += 1
            value = self.expr()
            self._expect(")")
            return value
        if char == "z":
            self.pos += 1
            return self.ring.gen_z()
        if char == "y":
            self.pos += 1
            vid = self._natural()
            if vid >= len(self.ring.registry) or self.ring.registry[vid].kind is not VarKind.Y:
                raise ElementSyntaxError(f"y{vid} is not an adjoined quotient", start)
            return self.ring.var(vid)
        if char == "x":
            self.pos += 1
            self._expect("[")
            comma = self.text.find(",", self.pos)
            if comma < 0:
                raise ElementSyntaxError("expected ',' inside x[...]", self.pos)
            try:
                beta = parse_ordinal(self.text[self.pos : comma])
            except OrdinalSyntaxError as e:
                raise ElementSyntaxError(str(e), self.pos + e.position) from e
            self.pos = comma + 1
            stage = self._natural()
            self._expect("]")
            return self.ring.gen(beta, stage)
        raise ElementSyntaxError(f"unexpected {char or 'end of input'!r}", start)

    def done(self) -> None:
        if self._peek():
            raise ElementSyntaxError(f"unexpected {self._peek()!r}", self.pos)


def parse_element(ring: Ring, text: str) -> RElement:
    parser = _ElementParser(ring, text)
    value = parser.expr()
    parser.done()
    return value
