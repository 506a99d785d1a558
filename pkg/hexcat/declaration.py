__all__ = [
    "Declaration",
    "SEPARATORS",
]


from dataclasses import dataclass
from typing import Sequence, overload

from .error import InvalidDeclaration

SEPARATORS = frozenset({":", "->", "=", ".", "~"})


@dataclass(frozen=True)
class Declaration:
    """Class representing a single line of an instance file."""

    line: int
    keyword: str
    arguments: Sequence[str] = ()

    @classmethod
    def parse(cls, line: int, source: str) -> "Declaration":
        """Split a line on whitespace and drop the separator tokens."""
        keyword, *tokens = source.split()
        arguments = [token.rstrip(":") for token in tokens if token not in SEPARATORS]
        return cls(line, keyword, tuple(argument for argument in arguments if argument))

    @overload
    def expect(self):
        ...

    @overload
    def expect(self, name1: str) -> str:
        ...

    @overload
    def expect(self, name1: str, name2: str, *names: str) -> Sequence[str]:
        ...

    def expect(self, *names: str):
        """Check declaration arguments."""
        if missing := names[len(self.arguments) :]:
            msg = f"Missing argument {', '.join(map(repr, missing))} for {self.keyword!r}."
            raise InvalidDeclaration(msg, self.line)
        if extra := self.arguments[len(names) :]:
            msg = f"Unexpected argument {', '.join(map(repr, extra))} for {self.keyword!r}."
            raise InvalidDeclaration(msg, self.line)
        if len(self.arguments) == 0:
            return
        if len(self.arguments) == 1:
            return self.arguments[0]
        return self.arguments
