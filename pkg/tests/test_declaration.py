import pytest

from hexcat import (
    Declaration,
    InstanceBuilder,
    InvalidDeclaration,
    TextExtractor,
    get_builtin_directives,
)


@pytest.mark.parametrize(
    "source, declaration",
    [
        ("obj A", Declaration(0, "obj", ("A",))),
        ("mor f : A -> B", Declaration(0, "mor", ("f", "A", "B"))),
        ("comp g . f = h", Declaration(0, "comp", ("g", "f", "h"))),
        ("pobj X = PX r s t", Declaration(0, "pobj", ("X", "PX", "r", "s", "t"))),
        ("iso u: 0 ~ 1", Declaration(0, "iso", ("u", "0", "1"))),
        ("trivial", Declaration(0, "trivial")),
    ],
)
def test_parse(source: str, declaration: Declaration):
    parsed = next(TextExtractor().parse_declarations(source, get_builtin_directives()))
    assert parsed == declaration


def test_expect():
    assert Declaration(0, "obj", ("A",)).expect("name") == "A"
    assert Declaration(0, "id", ("A", "i")).expect("obj", "mor") == ("A", "i")

    with pytest.raises(InvalidDeclaration, match=r"Missing argument 'cod' for 'mor'\. \(line 1\)"):
        Declaration(0, "mor", ("f", "A")).expect("name", "dom", "cod")

    with pytest.raises(InvalidDeclaration, match=r"Unexpected argument 'x' for 'trivial'"):
        Declaration(4, "trivial", ("x",)).expect()


def test_comments():
    source = "# heading\nobj A  # trailing\n\n  \nobj B\n"
    declarations = list(TextExtractor().parse_declarations(source, get_builtin_directives()))
    assert declarations == [Declaration(1, "obj", ("A",)), Declaration(4, "obj", ("B",))]


def extract(source: str) -> InstanceBuilder:
    return TextExtractor().extract(source, get_builtin_directives())


def test_builder():
    builder = extract("obj A\nobj B\nmor f : A -> B\nfib f\nweq f\n")
    assert builder.kind == "path"
    assert builder.morphisms == [("f", "A", "B")]
    assert builder.fibrations == ["f"] and builder.weqs == ["f"]

    cat = builder.build_category()
    assert [name for name, _, _ in cat.morphism_table] == ["f", "id_A", "id_B"]
    assert cat.compose(cat.morphism_id("f"), cat.identity(cat.object_id("A"))) == 0


@pytest.mark.parametrize(
    "source, message",
    [
        ("obj A\nobj A\n", "Object 'A' is already declared. (line 2)"),
        ("obj A\nmor f : A -> B\n", "Unknown object 'B'. (line 2)"),
        ("obj A\nmor f : A -> A\nmor f : A -> A\n", "Morphism 'f' is already declared. (line 3)"),
        ("obj A\nobj B\nmor f : A -> B\nid A = f\n", "Identity 'f' is not an endomorphism of 'A'. (line 4)"),
        (
            "obj A\nobj B\nmor f : A -> B\ncomp f . f = f\n",
            "Morphisms 'f' and 'f' are not composable. (line 4)",
        ),
        ("obj A\nfib g\n", "Unknown morphism 'g'. (line 2)"),
        ("obj A\niso u: A ~ A\n", "Isomorphism 'u' must relate distinct objects. (line 2)"),
        ("obj A\ninv u = v\n", "Unknown isomorphism 'u'. (line 2)"),
    ],
)
def test_invalid(source: str, message: str):
    with pytest.raises(InvalidDeclaration) as exc_info:
        extract(source)
    assert str(exc_info.value) == message


def test_groupoid():
    builder = extract("obj 0\nobj 1\nobj 2\niso u: 0 ~ 1\ninv u = v\n")
    assert builder.kind == "gpd"

    groupoid = builder.build_groupoid("G")
    assert groupoid.objects == ("0", "1", "2")
    assert sorted(label for label, _, _ in groupoid.arrows) == ["id_0", "id_1", "id_2", "u", "v"]
    assert groupoid.check() == []
    assert len(groupoid.components) == 2


def test_path_object_directive():
    builder = extract("obj 1\nmor i : 1 -> 1\nid 1 = i\nfib i\nweq i\npobj 1 = 1 i i i\n")
    structure = builder.build_structure()
    data = structure.path_object(0)
    assert (data.path, data.r, data.s, data.t) == (0, 0, 0, 0)
