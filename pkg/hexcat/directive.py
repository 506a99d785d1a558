__all__ = [
    "Directive",
    "InstanceBuilder",
    "ObjectDirective",
    "MorphismDirective",
    "IdentityDirective",
    "CompositeDirective",
    "MarkingDirective",
    "PathObjectDirective",
    "TrivialDirective",
    "IsoDirective",
    "InverseDirective",
    "get_builtin_directives",
]


from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Protocol, Tuple

from .category import FiniteCategory
from .declaration import Declaration
from .error import InvalidDeclaration
from .groupoid import Groupoid, build_groupoid
from .options import HexcatOptions
from .path import ExplicitStructure, PathCategory, TrivialStructure


@dataclass
class InstanceBuilder:
    """Accumulates declarations until the category, structure or groupoid is built."""

    objects: List[str] = field(default_factory=list)
    morphisms: List[Tuple[str, str, str]] = field(default_factory=list)
    identities: Dict[str, str] = field(default_factory=dict)
    composites: Dict[Tuple[str, str], str] = field(default_factory=dict)
    fibrations: List[str] = field(default_factory=list)
    weqs: List[str] = field(default_factory=list)
    path_objects: Dict[str, Tuple[str, str, str, str]] = field(default_factory=dict)
    trivial: bool = False
    isos: List[Tuple[str, str, str]] = field(default_factory=list)
    inverses: Dict[str, str] = field(default_factory=dict)

    @property
    def kind(self) -> Literal["cat", "path", "gpd"]:
        if self.isos:
            return "gpd"
        if self.trivial or self.fibrations or self.weqs or self.path_objects:
            return "path"
        return "cat"

    def declare_object(self, name: str, line: int):
        if name in self.objects:
            raise InvalidDeclaration(f"Object {name!r} is already declared.", line)
        self.objects.append(name)

    def require_object(self, name: str, line: int):
        if name not in self.objects:
            raise InvalidDeclaration(f"Unknown object {name!r}.", line)

    def require_morphism(self, name: str, line: int) -> Tuple[str, str, str]:
        for morphism in self.morphisms:
            if morphism[0] == name:
                return morphism
        raise InvalidDeclaration(f"Unknown morphism {name!r}.", line)

    def build_category(self, options: Optional[HexcatOptions] = None) -> FiniteCategory:
        """Return the declared category, adding missing identities and their composites."""
        morphisms = list(self.morphisms)
        identities = dict(self.identities)
        for a in self.objects:
            if a not in identities:
                identities[a] = f"id_{a}"
                morphisms.append((f"id_{a}", a, a))

        composites = dict(self.composites)
        for f, a, b in morphisms:
            composites.setdefault((f, identities[a]), f)
            composites.setdefault((identities[b], f), f)

        return FiniteCategory.build(self.objects, morphisms, identities, composites, options)

    def build_structure(self, options: Optional[HexcatOptions] = None) -> PathCategory:
        cat = self.build_category(options)
        if self.trivial:
            return TrivialStructure(cat)
        return ExplicitStructure(
            cat,
            [cat.morphism_id(f) for f in self.fibrations],
            [cat.morphism_id(f) for f in self.weqs],
            {
                cat.object_id(x): (cat.object_id(maps[0]), *map(cat.morphism_id, maps[1:]))
                for x, maps in self.path_objects.items()
            },
        )

    def build_groupoid(self, name: str = "G") -> Groupoid:
        """Return the groupoid where declared isomorphisms connect their components."""
        root = {a: a for a in self.objects}

        def find(a: str) -> str:
            while root[a] != a:
                a = root[a]
            return a

        for _, a, b in self.isos:
            root[find(a)] = find(b)

        labels: Dict[Tuple[str, str], str] = {}
        for f, a, b in self.isos:
            labels[a, b] = f
            labels[b, a] = self.inverses.get(f, f"{f}^-1")

        def label(key: Tuple[str, str]) -> str:
            a, b = key
            if a == b:
                return f"id_{a}"
            return labels.get(key, f"{a}~{b}")

        return build_groupoid(
            name,
            self.objects,
            [
                ((a, b), a, b)
                for a in self.objects
                for b in self.objects
                if find(a) == find(b)
            ],
            identity=lambda a: (a, a),
            compose=lambda g, f: (f[0], g[1]),
            inverse=lambda f: (f[1], f[0]),
            arrow_label=label,
        ).groupoid


class Directive(Protocol):
    """Protocol for detecting directives."""

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        ...


@dataclass
class ObjectDirective:
    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        builder.declare_object(declaration.expect("name"), declaration.line)


@dataclass
class MorphismDirective:
    """Directive for `mor <name> : <dom> -> <cod>`."""

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        name, a, b = declaration.expect("name", "dom", "cod")
        builder.require_object(a, declaration.line)
        builder.require_object(b, declaration.line)
        if any(morphism[0] == name for morphism in builder.morphisms):
            raise InvalidDeclaration(f"Morphism {name!r} is already declared.", declaration.line)
        builder.morphisms.append((name, a, b))


@dataclass
class IdentityDirective:
    """Directive for `id <obj> = <mor>`."""

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        a, f = declaration.expect("obj", "mor")
        builder.require_object(a, declaration.line)
        if builder.require_morphism(f, declaration.line)[1:] != (a, a):
            raise InvalidDeclaration(f"Identity {f!r} is not an endomorphism of {a!r}.", declaration.line)
        builder.identities[a] = f


@dataclass
class CompositeDirective:
    """Directive for `comp <g> . <f> = <h>`."""

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        g, f, h = declaration.expect("g", "f", "h")
        _, b, c = builder.require_morphism(g, declaration.line)
        _, a, b2 = builder.require_morphism(f, declaration.line)
        if b != b2:
            raise InvalidDeclaration(f"Morphisms {g!r} and {f!r} are not composable.", declaration.line)
        if builder.require_morphism(h, declaration.line)[1:] != (a, c):
            raise InvalidDeclaration(f"Composite {h!r} has the wrong type.", declaration.line)
        builder.composites[g, f] = h


@dataclass
class MarkingDirective:
    """Directive for `fib <mor>` and `weq <mor>`."""

    marking: Literal["fibrations", "weqs"]

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        f = declaration.expect("mor")
        builder.require_morphism(f, declaration.line)
        getattr(builder, self.marking).append(f)


@dataclass
class PathObjectDirective:
    """Directive for `pobj <X> = <PX> <r> <s> <t>`."""

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        x, path, r, s, t = declaration.expect("obj", "path", "r", "s", "t")
        builder.require_object(x, declaration.line)
        builder.require_object(path, declaration.line)
        expected = {r: (x, path), s: (path, x), t: (path, x)}
        for f, typing in expected.items():
            if builder.require_morphism(f, declaration.line)[1:] != typing:
                raise InvalidDeclaration(f"Morphism {f!r} has the wrong type.", declaration.line)
        builder.path_objects[x] = (path, r, s, t)


@dataclass
class TrivialDirective:
    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        declaration.expect()
        builder.trivial = True


@dataclass
class IsoDirective:
    """Directive for `iso <name>: <a> ~ <b>`."""

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        name, a, b = declaration.expect("name", "a", "b")
        builder.require_object(a, declaration.line)
        builder.require_object(b, declaration.line)
        if a == b:
            raise InvalidDeclaration(f"Isomorphism {name!r} must relate distinct objects.", declaration.line)
        if any({a, b} == {c, d} for _, c, d in builder.isos):
            raise InvalidDeclaration(f"Objects {a!r} and {b!r} are already related.", declaration.line)
        builder.isos.append((name, a, b))


@dataclass
class InverseDirective:
    """Directive for `inv <iso> = <name>`, naming the generated inverse."""

    def __call__(self, declaration: Declaration, builder: InstanceBuilder):
        f, name = declaration.expect("iso", "name")
        if not any(iso[0] == f for iso in builder.isos):
            raise InvalidDeclaration(f"Unknown isomorphism {f!r}.", declaration.line)
        builder.inverses[f] = name


def get_builtin_directives() -> Dict[str, Directive]:
    """Return the built-in directives."""
    return {
        # fmt: off
        "obj":     ObjectDirective(),
        "mor":     MorphismDirective(),
        "id":      IdentityDirective(),
        "comp":    CompositeDirective(),
        "fib":     MarkingDirective("fibrations"),
        "weq":     MarkingDirective("weqs"),
        "pobj":    PathObjectDirective(),
        "trivial": TrivialDirective(),
        "iso":     IsoDirective(),
        "inv":     InverseDirective(),
        # fmt: on
    }
