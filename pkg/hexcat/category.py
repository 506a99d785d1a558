__all__ = [
    "Category",
    "FiniteCategory",
    "Functor",
    "Diagram",
    "ConeRecord",
    "Congruence",
    "ValidationReport",
    "MorphismFlags",
    "Materialized",
    "EquivalenceVerdict",
    "validate_category",
    "check_category_laws",
    "check_functor",
    "check_congruence",
    "cones",
    "compatible_tuples",
    "is_limit",
    "find_limit",
    "classify_morphism",
    "quotient_by_congruence",
    "materialize",
    "find_isomorphism",
    "check_equivalence",
]


import logging
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from threading import RLock
from typing import (
    TYPE_CHECKING,
    Any,
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from .error import PreconditionError, StructuralError, check_bound
from .options import DEFAULT_OPTIONS, HexcatOptions

if TYPE_CHECKING:
    from .exponential import Exponential, PiTypeData
    from .sums import SumData


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Diagram:
    """Finite diagram given by its nodes and the edges between them.

    Edges are triples `(source_index, target_index, morphism)`.
    """

    nodes: Tuple[Any, ...] = ()
    edges: Tuple[Tuple[int, int, Any], ...] = ()


@dataclass(frozen=True)
class ConeRecord:
    """Class representing a cone over a diagram."""

    apex: Any
    legs: Tuple[Any, ...] = ()

    def __getitem__(self, index: int) -> Any:
        return self.legs[index]


class Category(ABC):
    """Base class for categories, explicit or computed on demand.

    Morphisms and objects can be any hashable value. Hom-sets are enumerated
    in a fixed order and every search picks the first match in that order.
    """

    options: HexcatOptions

    def __init__(self, options: Optional[HexcatOptions] = None):
        self.options = options or DEFAULT_OPTIONS
        self._limits: Dict[Diagram, Optional[ConeRecord]] = {}
        self._lock = RLock()

    @property
    def bound(self) -> int:
        return self.options.bound

    @abstractmethod
    def objects(self) -> Sequence[Any]:
        """Return the enumerated objects, the whole category or a fragment."""

    @abstractmethod
    def hom(self, a: Any, b: Any) -> Sequence[Any]:
        """Return the morphisms from a to b in enumeration order."""

    @abstractmethod
    def dom(self, f: Any) -> Any:
        ...

    @abstractmethod
    def cod(self, f: Any) -> Any:
        ...

    @abstractmethod
    def identity(self, a: Any) -> Any:
        ...

    @abstractmethod
    def compose2(self, g: Any, f: Any) -> Any:
        """Return g after f, assuming cod(f) = dom(g)."""

    def compose(self, *morphisms: Any) -> Any:
        """Compose from right to left: `compose(h, g, f)` is h after g after f."""
        if not morphisms:
            raise PreconditionError("Nothing to compose.")
        *rest, result = morphisms
        for g in reversed(rest):
            if self.dom(g) != self.cod(result):
                msg = f"Can not compose {self.describe(g)} after {self.describe(result)}."
                raise PreconditionError(msg)
            result = self.compose2(g, result)
        return result

    def describe(self, f: Any) -> str:
        return str(f)

    def describe_object(self, a: Any) -> str:
        return str(a)

    def morphisms(self, objects: Optional[Iterable[Any]] = None) -> Iterator[Any]:
        """Yield every morphism between the given objects."""
        objects = list(self.objects() if objects is None else objects)
        for a in objects:
            for b in objects:
                yield from self.hom(a, b)

    def limit(self, diagram: Diagram) -> Optional[ConeRecord]:
        """Return the limiting cone of the diagram, computed once."""
        with self._lock:
            if diagram not in self._limits:
                logger.debug("Constructing limit of %d nodes.", len(diagram.nodes))
                self._limits[diagram] = self.construct_limit(diagram)
            return self._limits[diagram]

    def construct_limit(self, diagram: Diagram) -> Optional[ConeRecord]:
        return find_limit(self, diagram)

    def mediate(self, diagram: Diagram, limit: ConeRecord, cone: ConeRecord) -> Any:
        """Return the map from the apex of the cone to the limit."""
        for m in self.hom(cone.apex, limit.apex):
            if all(
                self.compose(leg, m) == target
                for leg, target in zip(limit.legs, cone.legs)
            ):
                return m
        raise PreconditionError("The cone does not factor through the limit.")

    def lifts(self, source: Any, p: Any, g: Any) -> Iterator[Any]:
        """Yield the maps e: source -> dom(p) with p e = g."""
        for e in self.hom(source, self.dom(p)):
            if self.compose(p, e) == g:
                yield e

    def inverse(self, f: Any) -> Optional[Any]:
        a, b = self.dom(f), self.cod(f)
        for g in self.hom(b, a):
            if self.compose(g, f) == self.identity(a) and self.compose(
                f, g
            ) == self.identity(b):
                return g
        return None

    def is_iso(self, f: Any) -> bool:
        return self.inverse(f) is not None

    def require_limit(self, diagram: Diagram, what: str) -> ConeRecord:
        if (cone := self.limit(diagram)) is None:
            raise PreconditionError(f"Missing {what}.")
        return cone

    def terminal(self) -> Any:
        return self.require_limit(Diagram(), "terminal object").apex

    def terminal_map(self, a: Any) -> Any:
        diagram = Diagram()
        return self.mediate(
            diagram,
            self.require_limit(diagram, "terminal object"),
            ConeRecord(a),
        )

    def product(self, a: Any, b: Any) -> ConeRecord:
        return self.require_limit(Diagram((a, b)), "product")

    def pair(self, f: Any, g: Any) -> Any:
        """Return the map into the product of the codomains."""
        diagram = Diagram((self.cod(f), self.cod(g)))
        limit = self.require_limit(diagram, "product")
        return self.mediate(diagram, limit, ConeRecord(self.dom(f), (f, g)))

    def product_map(self, f: Any, g: Any) -> Any:
        cone = self.product(self.dom(f), self.dom(g))
        return self.pair(self.compose(f, cone[0]), self.compose(g, cone[1]))

    def diagonal(self, a: Any) -> Any:
        return self.pair(self.identity(a), self.identity(a))

    def swap(self, a: Any, b: Any) -> Any:
        cone = self.product(a, b)
        return self.pair(cone[1], cone[0])

    def cospan(self, f: Any, g: Any) -> Diagram:
        if self.cod(f) != self.cod(g):
            msg = f"Maps {self.describe(f)} and {self.describe(g)} have different codomains."
            raise PreconditionError(msg)
        return Diagram(
            (self.dom(f), self.dom(g), self.cod(f)),
            ((0, 2, f), (1, 2, g)),
        )

    def pullback(self, f: Any, g: Any) -> ConeRecord:
        """Return the pullback of f and g, legs 0 and 1 are the projections."""
        return self.require_limit(self.cospan(f, g), "pullback")

    def pullback_pair(self, f: Any, g: Any, a: Any, b: Any) -> Any:
        """Return the map into the pullback of f and g induced by a and b."""
        diagram = self.cospan(f, g)
        limit = self.require_limit(diagram, "pullback")
        cone = ConeRecord(self.dom(a), (a, b, self.compose(f, a)))
        return self.mediate(diagram, limit, cone)

    def initial(self) -> Optional[Any]:
        return None

    def sum(self, a: Any, b: Any) -> Optional["SumData"]:
        return None

    def exponential(self, x: Any, y: Any) -> Optional["Exponential"]:
        return None

    def pi(self, f: Any, alpha: Any) -> Optional["PiTypeData"]:
        return None


class FiniteCategory(Category):
    """Category given by an explicit composition table over dense integer ids."""

    object_names: Tuple[str, ...]
    morphism_table: Tuple[Tuple[str, int, int], ...]
    identities: Tuple[int, ...]
    table: Dict[Tuple[int, int], int]

    def __init__(
        self,
        object_names: Sequence[str],
        morphisms: Sequence[Tuple[str, int, int]],
        identities: Sequence[int],
        table: Mapping[Tuple[int, int], int],
        options: Optional[HexcatOptions] = None,
    ):
        super().__init__(options)
        self.object_names = tuple(object_names)
        self.morphism_table = tuple(morphisms)
        self.identities = tuple(identities)
        self.table = dict(table)

    @classmethod
    def build(
        cls,
        objects: Sequence[str],
        morphisms: Sequence[Tuple[str, str, str]],
        identities: Mapping[str, str],
        composites: Mapping[Tuple[str, str], str],
        options: Optional[HexcatOptions] = None,
    ) -> "FiniteCategory":
        """Build a category from names, `composites[g, f]` being g after f."""
        object_ids = {name: i for i, name in enumerate(objects)}
        morphism_ids = {name: i for i, (name, _, _) in enumerate(morphisms)}
        try:
            return cls(
                objects,
                [(n, object_ids[a], object_ids[b]) for n, a, b in morphisms],
                [morphism_ids[identities[name]] for name in objects],
                {
                    (morphism_ids[g], morphism_ids[f]): morphism_ids[h]
                    for (g, f), h in composites.items()
                },
                options,
            )
        except KeyError as exc:
            raise StructuralError(f"Undeclared name {exc.args[0]!r}.") from exc

    @cached_property
    def _homs(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        homs: Dict[Tuple[int, int], List[int]] = {
            (a, b): [] for a in self.objects() for b in self.objects()
        }
        for f, (_, a, b) in enumerate(self.morphism_table):
            homs.setdefault((a, b), []).append(f)
        return {key: tuple(value) for key, value in homs.items()}

    def objects(self) -> Sequence[int]:
        return range(len(self.object_names))

    def hom(self, a: int, b: int) -> Sequence[int]:
        return self._homs.get((a, b), ())

    def dom(self, f: int) -> int:
        return self.morphism_table[f][1]

    def cod(self, f: int) -> int:
        return self.morphism_table[f][2]

    def identity(self, a: int) -> int:
        return self.identities[a]

    def compose2(self, g: int, f: int) -> int:
        try:
            return self.table[g, f]
        except KeyError:
            msg = f"Missing composite {self.describe(g)} . {self.describe(f)}."
            raise StructuralError(msg) from None

    def describe(self, f: Any) -> str:
        return self.morphism_table[f][0]

    def describe_object(self, a: Any) -> str:
        return self.object_names[a]

    def object_id(self, name: str) -> int:
        try:
            return self.object_names.index(name)
        except ValueError:
            raise StructuralError(f"Unknown object {name!r}.") from None

    def morphism_id(self, name: str) -> int:
        for f, (morphism_name, _, _) in enumerate(self.morphism_table):
            if morphism_name == name:
                return f
        raise StructuralError(f"Unknown morphism {name!r}.")

    def __repr__(self) -> str:
        return (
            f"FiniteCategory({len(self.object_names)} objects, "
            f"{len(self.morphism_table)} morphisms)"
        )


@dataclass(frozen=True)
class Functor:
    """Class representing a functor given by its action on objects and morphisms."""

    source: Category
    target: Category
    on_objects: Callable[[Any], Any]
    on_morphisms: Callable[[Any], Any]

    def obj(self, a: Any) -> Any:
        return self.on_objects(a)

    def mor(self, f: Any) -> Any:
        return self.on_morphisms(f)


@dataclass(frozen=True)
class MorphismFlags:
    mono: bool
    epi: bool
    iso: bool
    split_mono: bool
    split_epi: bool


@dataclass
class ValidationReport:
    """Outcome of validating a category table."""

    structural: List[str] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.structural and not self.violations


@dataclass(frozen=True)
class Congruence:
    """Partition of every hom-set, each class listed in enumeration order."""

    classes: Tuple[Tuple[Any, ...], ...]

    @cached_property
    def representative(self) -> Dict[Any, Any]:
        return {f: members[0] for members in self.classes for f in members}

    def related(self, f: Any, g: Any) -> bool:
        return self.representative[f] == self.representative[g]

    @classmethod
    def discrete(
        cls,
        cat: Category,
        objects: Optional[Iterable[Any]] = None,
    ) -> "Congruence":
        return cls(tuple((f,) for f in cat.morphisms(objects)))

    @classmethod
    def from_relation(
        cls,
        cat: Category,
        related: Callable[[Any, Any], bool],
        objects: Optional[Iterable[Any]] = None,
    ) -> "Congruence":
        """Partition hom-sets with an equivalence relation on parallel maps."""
        objects = list(cat.objects() if objects is None else objects)
        classes: List[Tuple[Any, ...]] = []
        for a in objects:
            for b in objects:
                partition: List[List[Any]] = []
                for f in cat.hom(a, b):
                    for members in partition:
                        if related(members[0], f):
                            members.append(f)
                            break
                    else:
                        partition.append([f])
                classes.extend(tuple(members) for members in partition)
        return cls(tuple(classes))


@dataclass
class Materialized:
    """Explicit table for a fragment of a category, with the way back."""

    category: FiniteCategory
    objects: Tuple[Any, ...]
    morphisms: Tuple[Any, ...]
    inclusion: Functor

    @cached_property
    def object_index(self) -> Dict[Any, int]:
        return {a: i for i, a in enumerate(self.objects)}

    @cached_property
    def morphism_index(self) -> Dict[Any, int]:
        return {f: i for i, f in enumerate(self.morphisms)}


@dataclass
class EquivalenceVerdict:
    full: bool
    faithful: bool
    essentially_surjective: bool
    counterexamples: List[str] = field(default_factory=list)

    @property
    def equivalence(self) -> bool:
        return self.full and self.faithful and self.essentially_surjective


def check_category_laws(
    cat: Category,
    objects: Optional[Iterable[Any]] = None,
) -> List[str]:
    """Return every violated identity or associativity instance."""
    objects = list(cat.objects() if objects is None else objects)
    violations: List[str] = []
    d = cat.describe

    for a in objects:
        for b in objects:
            for f in cat.hom(a, b):
                if cat.compose(f, cat.identity(a)) != f:
                    violations.append(f"right identity fails for {d(f)}")
                if cat.compose(cat.identity(b), f) != f:
                    violations.append(f"left identity fails for {d(f)}")

    for a, b, c in product(objects, repeat=3):
        for f in cat.hom(a, b):
            for g in cat.hom(b, c):
                gf = cat.compose(g, f)
                if cat.dom(gf) != a or cat.cod(gf) != c:
                    violations.append(f"composite {d(g)} . {d(f)} has the wrong type")
                    continue
                for e in objects:
                    for h in cat.hom(c, e):
                        if cat.compose(h, gf) != cat.compose(cat.compose(h, g), f):
                            violations.append(
                                f"associativity fails for ({d(h)}, {d(g)}, {d(f)})"
                            )

    return violations


def validate_category(cat: FiniteCategory) -> ValidationReport:
    """Check the table for dangling ids, then check the category laws."""
    report = ValidationReport()
    objects = len(cat.object_names)
    morphisms = len(cat.morphism_table)

    names = {
        "object": list(cat.object_names),
        "morphism": [name for name, _, _ in cat.morphism_table],
    }
    for kind, declared in names.items():
        for name in sorted({n for n in declared if declared.count(n) > 1}):
            report.structural.append(f"duplicate {kind} name {name!r}")

    for name, a, b in cat.morphism_table:
        if not (0 <= a < objects and 0 <= b < objects):
            report.structural.append(f"morphism {name!r} references a missing object")

    if len(cat.identities) != objects:
        report.structural.append("every object needs exactly one identity")
    for a, i in enumerate(cat.identities):
        if not 0 <= i < morphisms:
            report.structural.append(f"identity of object {a} is a missing morphism")
        elif cat.dom(i) != a or cat.cod(i) != a:
            report.structural.append(f"identity of {cat.describe_object(a)} is not an endomorphism")

    for (g, f), h in cat.table.items():
        if not all(0 <= m < morphisms for m in (g, f, h)):
            report.structural.append(f"composite entry {(g, f)} references a missing morphism")
        elif cat.cod(f) != cat.dom(g):
            report.structural.append(
                f"composite {cat.describe(g)} . {cat.describe(f)} is not composable"
            )

    if report.structural:
        return report

    for f in range(morphisms):
        for g in range(morphisms):
            if cat.cod(f) == cat.dom(g) and (g, f) not in cat.table:
                report.structural.append(
                    f"missing composite {cat.describe(g)} . {cat.describe(f)}"
                )

    if not report.structural:
        report.violations.extend(check_category_laws(cat))

    return report


def check_functor(F: Functor, objects: Optional[Iterable[Any]] = None) -> List[str]:
    """Return every way in which F fails to be a functor on the fragment."""
    source, target = F.source, F.target
    objects = list(source.objects() if objects is None else objects)
    problems: List[str] = []

    for a in objects:
        if F.mor(source.identity(a)) != target.identity(F.obj(a)):
            problems.append(f"identity of {source.describe_object(a)} is not preserved")

    for a, b in product(objects, repeat=2):
        for f in source.hom(a, b):
            image = F.mor(f)
            if target.dom(image) != F.obj(a) or target.cod(image) != F.obj(b):
                problems.append(f"{source.describe(f)} is sent to a map of the wrong type")

    for a, b, c in product(objects, repeat=3):
        for f in source.hom(a, b):
            for g in source.hom(b, c):
                if F.mor(source.compose(g, f)) != target.compose(F.mor(g), F.mor(f)):
                    problems.append(
                        f"composite {source.describe(g)} . {source.describe(f)} is not preserved"
                    )

    return problems


def check_congruence(
    cat: Category,
    congruence: Congruence,
    objects: Optional[Iterable[Any]] = None,
) -> List[str]:
    """Return the reasons why the partition is not a congruence."""
    objects = list(cat.objects() if objects is None else objects)
    problems: List[str] = []
    d = cat.describe

    for members in congruence.classes:
        head = members[0]
        for f in members[1:]:
            if cat.dom(f) != cat.dom(head) or cat.cod(f) != cat.cod(head):
                problems.append(f"class of {d(head)} mixes hom-sets with {d(f)}")

    if problems:
        return problems

    for members in congruence.classes:
        head = members[0]
        for f in members[1:]:
            for c in objects:
                for g in cat.hom(cat.cod(head), c):
                    if not congruence.related(cat.compose(g, head), cat.compose(g, f)):
                        problems.append(f"{d(head)} ~ {d(f)} is not stable under {d(g)}")
                for g in cat.hom(c, cat.dom(head)):
                    if not congruence.related(cat.compose(head, g), cat.compose(f, g)):
                        problems.append(f"{d(head)} ~ {d(f)} is not stable under {d(g)}")

    return problems


def cones(cat: Category, apex: Any, diagram: Diagram) -> Iterator[ConeRecord]:
    """Yield the cones over the diagram with the given apex."""
    homs = [cat.hom(apex, node) for node in diagram.nodes]
    check_bound("cones", prod(len(h) for h in homs), cat.bound)
    for legs in product(*homs):
        if all(cat.compose(m, legs[i]) == legs[j] for i, j, m in diagram.edges):
            yield ConeRecord(apex, tuple(legs))


def compatible_tuples(
    domains: Sequence[Sequence[Any]],
    edges: Sequence[Tuple[int, int, Callable[[Any], Any]]],
    what: str,
    bound: int,
) -> List[Tuple[Any, ...]]:
    """Return the tuples t over the domains with `t[j] == image(t[i])` for each edge.

    Nodes that no edge leaves are assigned first, the others are then looked
    up through preimages. The result is sorted, which is the order of the
    Cartesian product when the domains are ascending.
    """
    n = len(domains)
    sources = {i for i, j, _ in edges if i != j}
    order = [k for k in range(n) if k not in sources] + sorted(sources)
    position = {k: step for step, k in enumerate(order)}

    preimages: List[Dict[Any, List[Any]]] = []
    for i, _, image in edges:
        index: Dict[Any, List[Any]] = defaultdict(list)
        for v in domains[i]:
            index[image(v)].append(v)
        preimages.append(index)

    partial: List[Dict[int, Any]] = [{}]
    for step, k in enumerate(order):
        loops = [image for i, j, image in edges if i == j == k]
        incoming = [
            (i, image)
            for i, j, image in edges
            if j == k and i != k and position[i] < step
        ]
        outgoing = [
            (e, j)
            for e, (i, j, _) in enumerate(edges)
            if i == k and j != k and position[j] < step
        ]
        extended: List[Dict[int, Any]] = []
        for t in partial:
            if outgoing:
                e, j = outgoing[0]
                candidates: Sequence[Any] = preimages[e].get(t[j], [])
            else:
                candidates = domains[k]
            for v in candidates:
                if (
                    all(image(v) == v for image in loops)
                    and all(image(t[i]) == v for i, image in incoming)
                    and all(edges[e][2](v) == t[j] for e, j in outgoing[1:])
                ):
                    extended.append({**t, k: v})
        check_bound(what, len(extended), bound)
        partial = extended

    return sorted(tuple(t[k] for k in range(n)) for t in partial)


def _factorizations(cat: Category, limit: ConeRecord, cone: ConeRecord) -> int:
    return sum(
        1
        for m in cat.hom(cone.apex, limit.apex)
        if all(
            cat.compose(leg, m) == target for leg, target in zip(limit.legs, cone.legs)
        )
    )


def is_limit(
    cat: Category,
    diagram: Diagram,
    candidate: ConeRecord,
    objects: Optional[Iterable[Any]] = None,
) -> bool:
    """Check the universal property against every cone from the fragment."""
    objects = list(cat.objects() if objects is None else objects)
    return all(
        _factorizations(cat, candidate, cone) == 1
        for apex in objects
        for cone in cones(cat, apex, diagram)
    )


def find_limit(
    cat: Category,
    diagram: Diagram,
    objects: Optional[Iterable[Any]] = None,
) -> Optional[ConeRecord]:
    """Search the limiting cone with the least apex, then the least legs."""
    objects = list(cat.objects() if objects is None else objects)
    all_cones = {apex: list(cones(cat, apex, diagram)) for apex in objects}

    for apex in objects:
        for candidate in all_cones[apex]:
            if all(
                _factorizations(cat, candidate, cone) == 1
                for other in all_cones.values()
                for cone in other
            ):
                return candidate

    return None


def classify_morphism(
    cat: Category,
    f: Any,
    objects: Optional[Iterable[Any]] = None,
) -> MorphismFlags:
    """Decide each flag by testing its defining property on the fragment."""
    objects = list(cat.objects() if objects is None else objects)
    a, b = cat.dom(f), cat.cod(f)

    mono = all(
        g == h or cat.compose(f, g) != cat.compose(f, h)
        for c in objects
        for g, h in product(cat.hom(c, a), repeat=2)
    )
    epi = all(
        g == h or cat.compose(g, f) != cat.compose(h, f)
        for c in objects
        for g, h in product(cat.hom(b, c), repeat=2)
    )
    split_mono = any(cat.compose(r, f) == cat.identity(a) for r in cat.hom(b, a))
    split_epi = any(cat.compose(f, s) == cat.identity(b) for s in cat.hom(b, a))

    return MorphismFlags(
        mono=mono,
        epi=epi,
        iso=cat.is_iso(f),
        split_mono=split_mono,
        split_epi=split_epi,
    )


def quotient_by_congruence(
    cat: FiniteCategory,
    congruence: Congruence,
) -> Tuple[FiniteCategory, Functor]:
    """Return the quotient category and the identity-on-objects quotient functor."""
    if problems := check_congruence(cat, congruence):
        raise PreconditionError(f"Not a congruence: {problems[0]}.")

    covered = set(congruence.representative)
    if missing := [f for f in range(len(cat.morphism_table)) if f not in covered]:
        raise PreconditionError(f"Morphism {cat.describe(missing[0])} is not partitioned.")

    representatives = sorted({min(members) for members in congruence.classes})
    new_id = {f: i for i, f in enumerate(representatives)}
    least = {f: min(members) for members in congruence.classes for f in members}

    morphisms = [cat.morphism_table[f] for f in representatives]
    identities = [new_id[least[i]] for i in cat.identities]
    table = {
        (new_id[g], new_id[f]): new_id[least[cat.compose(g, f)]]
        for g in representatives
        for f in representatives
        if cat.cod(f) == cat.dom(g)
    }

    quotient = FiniteCategory(cat.object_names, morphisms, identities, table, cat.options)
    functor = Functor(
        source=cat,
        target=quotient,
        on_objects=lambda a: a,
        on_morphisms=lambda f: new_id[least[f]],
    )
    return quotient, functor


def materialize(cat: Category, objects: Optional[Iterable[Any]] = None) -> Materialized:
    """Turn a fragment of any category into an explicit table."""
    objects = tuple(cat.objects() if objects is None else objects)
    object_index = {a: i for i, a in enumerate(objects)}
    morphisms = tuple(cat.morphisms(objects))
    check_bound("materialized morphisms", len(morphisms), cat.bound)
    morphism_index = {f: i for i, f in enumerate(morphisms)}

    table: Dict[Tuple[int, int], int] = {}
    for f in morphisms:
        for c in objects:
            for g in cat.hom(cat.cod(f), c):
                table[morphism_index[g], morphism_index[f]] = morphism_index[
                    cat.compose(g, f)
                ]

    explicit = FiniteCategory(
        [cat.describe_object(a) for a in objects],
        [
            (cat.describe(f), object_index[cat.dom(f)], object_index[cat.cod(f)])
            for f in morphisms
        ],
        [morphism_index[cat.identity(a)] for a in objects],
        table,
        cat.options,
    )
    inclusion = Functor(
        source=explicit,
        target=cat,
        on_objects=lambda i: objects[i],
        on_morphisms=lambda i: morphisms[i],
    )
    return Materialized(explicit, objects, morphisms, inclusion)


def find_isomorphism(cat: Category, a: Any, b: Any) -> Optional[Tuple[Any, Any]]:
    """Return the least isomorphism from a to b together with its inverse."""
    for f in cat.hom(a, b):
        if (g := cat.inverse(f)) is not None:
            return f, g
    return None


def check_equivalence(
    F: Functor,
    source_objects: Optional[Iterable[Any]] = None,
    target_objects: Optional[Iterable[Any]] = None,
) -> EquivalenceVerdict:
    """Test fullness, faithfulness and essential surjectivity on fragments."""
    source, target = F.source, F.target
    source_objects = list(
        source.objects() if source_objects is None else source_objects
    )
    target_objects = list(
        target.objects() if target_objects is None else target_objects
    )
    verdict = EquivalenceVerdict(full=True, faithful=True, essentially_surjective=True)

    for a, b in product(source_objects, repeat=2):
        images = [F.mor(f) for f in source.hom(a, b)]
        if len(set(images)) != len(images):
            verdict.faithful = False
            verdict.counterexamples.append(
                f"not faithful on {source.describe_object(a)} -> {source.describe_object(b)}"
            )
        if set(target.hom(F.obj(a), F.obj(b))) - set(images):
            verdict.full = False
            verdict.counterexamples.append(
                f"not full on {source.describe_object(a)} -> {source.describe_object(b)}"
            )

    images = [F.obj(a) for a in source_objects]
    for x in target_objects:
        if not any(find_isomorphism(target, image, x) for image in images):
            verdict.essentially_surjective = False
            verdict.counterexamples.append(
                f"{target.describe_object(x)} is not in the essential image"
            )

    return verdict
