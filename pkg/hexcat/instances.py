__all__ = [
    "InstanceKind",
    "InstanceHandle",
    "trivial_lex",
    "finite_sets",
    "finite_groupoids",
    "partition_relations",
    "poset_category",
    "terminal_category",
    "chain",
    "diamond",
    "swap_cover",
    "BUILTIN_INSTANCES",
]


from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, Iterator, List, Literal, Optional, Sequence, Tuple

from .category import Category, FiniteCategory
from .completion import Ex, ExStructure, Hex, RelationProvider
from .error import PreconditionError
from .finset import FinSets, Function
from .groupoid import Groupoid, Groupoids, GroupoidStructure, delooping, interval
from .options import DEFAULT_OPTIONS, HexcatOptions
from .oracle import ExLex, exlex_oracle
from .path import (
    AxiomReport,
    PathCategory,
    SliceObject,
    SliceStructure,
    TrivialStructure,
    check_axioms,
    slice,
)
from .relation import HEqRelation, is_heq_relation

InstanceKind = Literal["trivial-lex", "explicit", "finite-sets", "finite-groupoids"]


@dataclass(frozen=True)
class InstanceHandle:
    """A path category together with the enumeration data its completion needs."""

    kind: InstanceKind
    ps: PathCategory
    carriers: Optional[Tuple[Any, ...]] = None
    relation_objects: Optional[Tuple[Any, ...]] = None
    relations: Optional[RelationProvider] = field(default=None, compare=False)

    @property
    def category(self) -> Category:
        return self.ps.category

    @property
    def options(self) -> HexcatOptions:
        return self.ps.options

    def objects(self) -> Sequence[Any]:
        return self.category.objects()

    def check(self, objects: Optional[Sequence[Any]] = None) -> AxiomReport:
        return check_axioms(self.ps, objects)

    def require_axioms(self, objects: Optional[Sequence[Any]] = None) -> AxiomReport:
        report = self.check(objects)
        if not report.passed:
            failed = ", ".join(result.axiom for result in report.failures)
            raise PreconditionError(f"The {self.kind} instance fails axioms {failed}.")
        return report

    def ex(self) -> ExStructure:
        return ExStructure(Ex(self.ps, self.carriers, self.relation_objects, self.relations))

    def hex(self) -> Hex:
        return Hex(self.ex().category)

    def oracle(self) -> ExLex:
        if self.kind == "finite-groupoids":
            raise PreconditionError("The oracle only covers instances with trivial structure.")
        relation_objects = self.relation_objects
        if self.kind == "finite-sets":
            largest = max(self.carriers or (0,))
            relation_objects = tuple(range(largest * largest + 1))
        return exlex_oracle(self.category, self.carriers, relation_objects)


def trivial_lex(category: FiniteCategory) -> InstanceHandle:
    return InstanceHandle("trivial-lex", TrivialStructure(category))


def _partitions(elements: List[int]) -> Iterator[List[List[int]]]:
    if not elements:
        yield []
        return
    first, *rest = elements
    for partition in _partitions(rest):
        for k in range(len(partition)):
            yield partition[:k] + [[first] + partition[k]] + partition[k + 1 :]
        yield [[first]] + partition


def partition_relations(ps: PathCategory, n: int) -> Iterator[HEqRelation]:
    """Yield every equivalence relation on the finite set n as an inclusion into n x n."""
    for partition in _partitions(list(range(n))):
        block = {x: k for k, part in enumerate(partition) for x in part}
        pairs = [(i, j) for i, j in product(range(n), repeat=2) if block[i] == block[j]]
        rho = Function(len(pairs), n * n, tuple(i * n + j for i, j in pairs))
        if (relation := is_heq_relation(ps, n, rho).relation) is not None:
            yield relation


def finite_sets(options: Optional[HexcatOptions] = None) -> InstanceHandle:
    """Finite sets with every map a fibration, relations given by partitions."""
    options = options or DEFAULT_OPTIONS
    return InstanceHandle(
        "finite-sets",
        TrivialStructure(FinSets(options)),
        carriers=tuple(options.carriers),
        relations=partition_relations,
    )


def finite_groupoids(
    fixtures: Optional[Sequence[Groupoid]] = None,
    carriers: Optional[Sequence[Groupoid]] = None,
    options: Optional[HexcatOptions] = None,
) -> InstanceHandle:
    """Finite groupoids with isofibrations and equivalences."""
    category = Groupoids(fixtures, options)
    return InstanceHandle(
        "finite-groupoids",
        GroupoidStructure(category),
        carriers=tuple(category.objects() if carriers is None else carriers),
    )


def poset_category(
    names: Sequence[str],
    below: Sequence[Tuple[str, str]],
    options: Optional[HexcatOptions] = None,
) -> FiniteCategory:
    """Build the category of a finite poset from its generating order pairs."""
    order = {(a, a) for a in names} | set(below)
    while True:
        closure = order | {(a, d) for a, b in order for c, d in order if b == c}
        if closure == order:
            break
        order = closure

    def arrow(a: str, b: str) -> str:
        return f"id_{a}" if a == b else f"{a}<={b}"

    pairs = sorted(order, key=lambda pair: (names.index(pair[0]), names.index(pair[1])))
    composites: Dict[Tuple[str, str], str] = {
        (arrow(b, c), arrow(a, b)): arrow(a, c)
        for a, b in pairs
        for b2, c in pairs
        if b == b2
    }
    return FiniteCategory.build(
        names,
        [(arrow(a, b), a, b) for a, b in pairs],
        {a: arrow(a, a) for a in names},
        composites,
        options,
    )


def terminal_category(options: Optional[HexcatOptions] = None) -> FiniteCategory:
    return poset_category(["1"], [], options)


def chain(n: int = 3, options: Optional[HexcatOptions] = None) -> FiniteCategory:
    """The linear order 0 < 1 < ... < n - 1."""
    names = [str(k) for k in range(n)]
    return poset_category(names, list(zip(names, names[1:])), options)


def diamond(options: Optional[HexcatOptions] = None) -> FiniteCategory:
    """The lattice bot < a, b < top."""
    return poset_category(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        options,
    )


def swap_cover(options: Optional[HexcatOptions] = None) -> Tuple[SliceStructure, SliceObject]:
    """The interval over B(Z/2), its isomorphism sent to the generator."""
    structure = finite_groupoids(options=options).ps
    base = delooping(2)
    cover = next(
        F for F in structure.category.hom(interval(), base) if structure.is_fibration(F)
    )
    return slice(structure, base), SliceObject(interval(), cover)


BUILTIN_INSTANCES: Dict[str, Callable[[HexcatOptions], InstanceHandle]] = {
    "terminal": lambda options: trivial_lex(terminal_category(options)),
    "chain": lambda options: trivial_lex(chain(options=options)),
    "diamond": lambda options: trivial_lex(diamond(options)),
    "finite-sets": finite_sets,
    "finite-groupoids": lambda options: finite_groupoids(options=options),
}
