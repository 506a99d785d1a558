import pytest

from hexcat import (
    Document,
    ExplicitStructure,
    InvalidDeclaration,
    PreconditionError,
    TrivialStructure,
)

CHAIN = "obj 0\nobj 1\nmor a : 0 -> 1\n"


def test_empty():
    assert Document() == Document()
    assert Document().kind == "cat"
    assert Document(text="# nothing to see here\n") == Document()
    assert Document(markdown="Nothing to see here") == Document()


def test_text():
    document = Document(text=CHAIN)
    assert document.category.object_names == ("0", "1")
    assert isinstance(document.structure, TrivialStructure)
    assert document.instance().kind == "trivial-lex"


def test_text_equality():
    markdown = Document(markdown=f"# Chain\n\n```cat\n{CHAIN}```\n")
    assert Document(text=CHAIN).builder == markdown.builder
    assert markdown.tags == {"cat"}


def test_markdown_tags():
    document = Document(markdown="```path\nobj 1\nmor i : 1 -> 1\nid 1 = i\nfib i\n```\n")
    assert document.tags == {"path"}
    assert document.kind == "path"
    assert isinstance(document.structure, ExplicitStructure)
    assert document.instance().kind == "explicit"


def test_markdown_line_numbers():
    source = "# Title\n\n```cat\nobj A\nobj A\n```\n"
    with pytest.raises(InvalidDeclaration) as exc_info:
        Document(markdown=source)
    assert exc_info.value.line == 4
    assert str(exc_info.value) == "Object 'A' is already declared. (line 5)"


def test_markdown_unknown_keyword():
    source = "Some text.\n\n```gpd\nobj 0\nnode 1\n```\n"
    with pytest.raises(InvalidDeclaration, match=r"Unknown keyword 'node'\. \(line 5\)"):
        Document(markdown=source)


def test_load():
    document = Document(path="tests/instances/diamond.md")
    assert document.name == "diamond"
    assert document.tags == {"cat"}
    assert document.category.object_names == ("bot", "a", "b", "top")


def test_groupoid():
    document = Document(path="tests/instances/interval.gpd")
    assert document.kind == "gpd"
    groupoid = document.groupoid
    assert groupoid.name == "interval"
    assert len(groupoid.arrows) == 4

    instance = document.instance()
    assert instance.kind == "finite-groupoids"
    assert groupoid in instance.objects()


def test_groupoid_required():
    with pytest.raises(PreconditionError):
        Document(text=CHAIN).groupoid
