__all__ = [
    "Extractor",
    "TextExtractor",
    "MarkdownExtractor",
    "INSTANCE_TAGS",
]


from dataclasses import replace
from typing import Iterable, Iterator, List, Mapping, Optional, Set

from markdown_it import MarkdownIt
from markdown_it.token import Token

from .declaration import Declaration
from .directive import Directive, InstanceBuilder
from .error import InvalidDeclaration

INSTANCE_TAGS = ("cat", "path", "gpd")


class Extractor:
    """Base class for extractors."""

    tags: Set[str]

    def __init__(self):
        self.tags = set()

    def extract(
        self,
        source: str,
        directives: Mapping[str, Directive],
        builder: Optional[InstanceBuilder] = None,
    ) -> InstanceBuilder:
        """Apply every declaration of the source to the builder."""
        return self.apply_directives(
            directives,
            self.parse_declarations(source, directives),
            builder,
        )

    def apply_directives(
        self,
        directives: Mapping[str, Directive],
        declarations: Iterable[Declaration],
        builder: Optional[InstanceBuilder] = None,
    ) -> InstanceBuilder:
        builder = builder if builder is not None else InstanceBuilder()
        for declaration in declarations:
            directives[declaration.keyword](declaration, builder)
        return builder

    def parse_declarations(
        self,
        source: str,
        directives: Mapping[str, Directive],
    ) -> Iterator[Declaration]:
        """Parse and yield declarations."""
        return iter([])


class TextExtractor(Extractor):
    """Extractor for plain instance files, one declaration per line."""

    def parse_declarations(
        self,
        source: str,
        directives: Mapping[str, Directive],
    ) -> Iterator[Declaration]:
        for line, content in enumerate(source.splitlines()):
            content = content.partition("#")[0].strip()
            if not content:
                continue
            declaration = Declaration.parse(line, content)
            if declaration.keyword not in directives:
                msg = f"Unknown keyword {declaration.keyword!r}."
                raise InvalidDeclaration(msg, line)
            yield declaration


class MarkdownExtractor(Extractor):
    """Extractor for literate instances in fenced code blocks."""

    text_extractor: TextExtractor
    parser: MarkdownIt

    def __init__(self):
        super().__init__()
        self.text_extractor = TextExtractor()
        self.parser = MarkdownIt()

    def parse_declarations(
        self,
        source: str,
        directives: Mapping[str, Directive],
    ) -> Iterator[Declaration]:
        tokens: List[Token] = self.parser.parse(source)

        #
        # ```cat
        # obj A
        # ```
        #
        for token in tokens:
            tag = token.info.strip().split(" ")[0] if token.info else ""
            if token.type != "fence" or tag not in INSTANCE_TAGS or not token.map:
                continue
            self.tags.add(tag)
            offset = token.map[0] + 1
            try:
                for declaration in self.text_extractor.parse_declarations(
                    token.content,
                    directives,
                ):
                    yield replace(declaration, line=declaration.line + offset)
            except InvalidDeclaration as exc:
                raise InvalidDeclaration(exc.reason, exc.line + offset) from None
