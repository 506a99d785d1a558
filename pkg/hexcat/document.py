__all__ = [
    "Document",
]


from dataclasses import InitVar, dataclass, field
from pathlib import Path
from typing import MutableMapping, Optional, Set, Union

from .category import FiniteCategory
from .directive import Directive, InstanceBuilder, get_builtin_directives
from .error import PreconditionError
from .extract import MarkdownExtractor, TextExtractor
from .groupoid import Groupoid, empty, point
from .instances import InstanceHandle, finite_groupoids, trivial_lex
from .options import DEFAULT_OPTIONS, HexcatOptions
from .path import PathCategory, TrivialStructure

FileSystemPath = Union[str, Path]


@dataclass
class Document:
    """Class representing an instance document."""

    path: InitVar[Optional[FileSystemPath]] = None
    text: InitVar[Optional[str]] = None
    markdown: InitVar[Optional[str]] = None

    name: str = "G"
    options: HexcatOptions = field(default_factory=lambda: DEFAULT_OPTIONS)
    builder: InstanceBuilder = field(default_factory=InstanceBuilder)
    tags: Set[str] = field(default_factory=set)

    directives: MutableMapping[str, Directive] = field(
        default_factory=get_builtin_directives,
        repr=False,
        compare=False,
    )
    text_extractor: TextExtractor = field(
        default_factory=TextExtractor,
        repr=False,
        compare=False,
    )
    markdown_extractor: MarkdownExtractor = field(
        default_factory=MarkdownExtractor,
        repr=False,
        compare=False,
    )

    def __post_init__(
        self,
        path: Optional[FileSystemPath] = None,
        text: Optional[str] = None,
        markdown: Optional[str] = None,
    ):
        if path:
            self.load(path)
        if text:
            self.add_text(text)
        if markdown:
            self.add_markdown(markdown)

    def load(self, path: FileSystemPath):
        """Load the declarations of the file at the specified location."""
        path = Path(path).resolve()
        self.name = path.stem
        if path.suffix == ".md":
            self.add_markdown(path.read_text())
        else:
            self.add_text(path.read_text(), path.suffix.lstrip("."))

    def add_text(self, source: str, tag: Optional[str] = None):
        self.text_extractor.extract(source, self.directives, self.builder)
        if tag:
            self.tags.add(tag)

    def add_markdown(self, source: str):
        self.markdown_extractor.extract(source, self.directives, self.builder)
        self.tags |= self.markdown_extractor.tags

    @property
    def kind(self) -> str:
        if "gpd" in self.tags or self.builder.kind == "gpd":
            return "gpd"
        if "path" in self.tags or self.builder.kind == "path":
            return "path"
        return "cat"

    @property
    def category(self) -> FiniteCategory:
        return self.builder.build_category(self.options)

    @property
    def structure(self) -> PathCategory:
        """Return the declared structure, or the trivial one on a plain category."""
        if self.kind == "cat":
            return TrivialStructure(self.category)
        return self.builder.build_structure(self.options)

    @property
    def groupoid(self) -> Groupoid:
        if self.kind != "gpd":
            raise PreconditionError("The document does not declare a groupoid.")
        return self.builder.build_groupoid(self.name)

    def instance(self) -> InstanceHandle:
        """Return the path category declared by the document."""
        if self.kind == "gpd":
            return finite_groupoids(
                [empty(), point(), self.groupoid],
                options=self.options,
            )
        structure = self.structure
        if isinstance(structure, TrivialStructure):
            return trivial_lex(structure.category)
        return InstanceHandle("explicit", structure)
