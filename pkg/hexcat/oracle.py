__all__ = [
    "ExLex",
    "ExLexObject",
    "ExLexMorphism",
    "ExLexExponential",
    "exlex_oracle",
    "exlex_exponential",
    "compare_with_oracle",
    "compare_exponential",
]


import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .category import (
    Category,
    Diagram,
    EquivalenceVerdict,
    Functor,
    check_equivalence,
    classify_morphism,
    find_isomorphism,
)
from .completion import Hex
from .error import PreconditionError
from .finset import FinSets, Function
from .exponential import hex_exponential
from .relation import HEqRelation, is_heq_relation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExLexObject:
    """Monic equivalence relation rho: R -> X x X."""

    carrier: Any
    obj: Any
    rho: Any


@dataclass(frozen=True)
class ExLexMorphism:
    source: ExLexObject
    target: ExLexObject
    f: Any


class ExLex(Category):
    """Classical exact completion over monic equivalence relations.

    Only the finite limits of the underlying category are used. Maps are the
    f with (f x f) R contained in S, identified when (f, g) factors through S.
    """

    def __init__(
        self,
        base: Category,
        carriers: Optional[Sequence[Any]] = None,
        relation_objects: Optional[Sequence[Any]] = None,
    ):
        super().__init__(base.options)
        self.base = base
        self.carriers = tuple(base.objects() if carriers is None else carriers)
        self.relation_objects = tuple(
            base.objects() if relation_objects is None else relation_objects
        )
        self._relations: Dict[Any, List[ExLexObject]] = {}
        self._homs: Dict[Tuple[ExLexObject, ExLexObject], List[ExLexMorphism]] = {}

    def _contained(self, first: Any, second: Any) -> bool:
        return next(self.base.lifts(self.base.dom(first), second, first), None) is not None

    def _is_equivalence(self, x: Any, rho: Any) -> bool:
        base = self.base
        square = base.product(x, x)
        rho1 = base.compose(square[0], rho)
        rho2 = base.compose(square[1], rho)
        chain = base.pullback(rho2, rho1)
        return (
            self._contained(base.diagonal(x), rho)
            and self._contained(base.pair(rho2, rho1), rho)
            and self._contained(
                base.pair(base.compose(rho1, chain[0]), base.compose(rho2, chain[1])),
                rho,
            )
        )

    def relations_on(self, x: Any) -> List[ExLexObject]:
        with self._lock:
            if x not in self._relations:
                base = self.base
                square = base.product(x, x).apex
                found: List[ExLexObject] = []
                for r in self.relation_objects:
                    for rho in base.hom(r, square):
                        if not classify_morphism(base, rho).mono:
                            continue
                        if not self._is_equivalence(x, rho):
                            continue
                        if any(
                            self._contained(rho, other.rho) and self._contained(other.rho, rho)
                            for other in found
                        ):
                            continue
                        found.append(ExLexObject(x, r, rho))
                self._relations[x] = found
            return self._relations[x]

    def objects(self) -> Sequence[ExLexObject]:
        return [relation for x in self.carriers for relation in self.relations_on(x)]

    def hom(self, a: ExLexObject, b: ExLexObject) -> Sequence[ExLexMorphism]:
        with self._lock:
            if (a, b) not in self._homs:
                base = self.base
                classes: List[Any] = []
                for f in base.hom(a.carrier, b.carrier):
                    if not self._contained(base.compose(base.product_map(f, f), a.rho), b.rho):
                        continue
                    if not any(self.identified(g, f, b) for g in classes):
                        classes.append(f)
                self._homs[a, b] = [ExLexMorphism(a, b, f) for f in classes]
            return self._homs[a, b]

    def identified(self, f: Any, g: Any, b: ExLexObject) -> bool:
        return self._contained(self.base.pair(f, g), b.rho)

    def canonical(self, a: ExLexObject, b: ExLexObject, f: Any) -> ExLexMorphism:
        for morphism in self.hom(a, b):
            if self.identified(morphism.f, f, b):
                return morphism
        raise PreconditionError(f"{self.base.describe(f)} does not preserve the relations.")

    def dom(self, f: ExLexMorphism) -> ExLexObject:
        return f.source

    def cod(self, f: ExLexMorphism) -> ExLexObject:
        return f.target

    def identity(self, a: ExLexObject) -> ExLexMorphism:
        return self.canonical(a, a, self.base.identity(a.carrier))

    def compose2(self, g: ExLexMorphism, f: ExLexMorphism) -> ExLexMorphism:
        return self.canonical(f.source, g.target, self.base.compose(g.f, f.f))

    def describe(self, f: Any) -> str:
        return f"[{self.base.describe(f.f)}]"

    def describe_object(self, a: Any) -> str:
        base = self.base
        return f"({base.describe_object(a.carrier)}, {base.describe_object(a.obj)}, {base.describe(a.rho)})"


def exlex_oracle(
    base: Category,
    carriers: Optional[Sequence[Any]] = None,
    relation_objects: Optional[Sequence[Any]] = None,
) -> ExLex:
    return ExLex(base, carriers, relation_objects)


@dataclass(frozen=True)
class ExLexExponential:
    """Relation-preserving functions Y -> X with the pointwise relation."""

    obj: ExLexObject
    functions: Tuple[Tuple[int, ...], ...]
    ev: Function


def exlex_exponential(oracle: ExLex, a: ExLexObject, b: ExLexObject) -> ExLexExponential:
    """Compute (X, R)^(Y, S) in the classical completion of finite sets.

    Elements are the functions v: Y -> X with (v y, v y') in R whenever
    (y, y') is in S, and v, w are related when (v y, w y) is in R for every y.
    """
    base = oracle.base
    if not isinstance(base, FinSets):
        raise PreconditionError("The classical exponential is computed over finite sets only.")
    x, y = a.carrier, b.carrier
    related = {divmod(k, x) for k in a.rho.values}
    preserved = [divmod(k, y) for k in b.rho.values]

    functions = tuple(
        v
        for v in product(range(x), repeat=y)
        if all((v[i], v[j]) in related for i, j in preserved)
    )
    size = len(functions)
    pairs = [
        (k, l)
        for k, l in product(range(size), repeat=2)
        if all((functions[k][i], functions[l][i]) in related for i in range(y))
    ]
    square = base.product(size, size).apex
    rho = Function(len(pairs), square, tuple(k * size + l for k, l in pairs))

    grid = base.elements(Diagram((size, y)))
    ev = Function(len(grid), x, tuple(functions[k][j] for k, j in grid))
    logger.debug("Classical exponential has %d functions.", size)
    return ExLexExponential(ExLexObject(size, len(pairs), rho), functions, ev)


def _as_relation(hex: Hex, oracle: ExLex, a: ExLexObject) -> HEqRelation:
    verdict = is_heq_relation(hex.ps, a.carrier, a.rho)
    if verdict.relation is None:
        raise PreconditionError(f"{oracle.describe_object(a)} is not a relation in Hex.")
    return verdict.relation


def compare_with_oracle(
    hex: Hex,
    oracle: ExLex,
    objects: Optional[Iterable[Any]] = None,
) -> EquivalenceVerdict:
    """Check that sending each monic relation to itself is an equivalence into Hex."""

    def on_objects(a: ExLexObject) -> Any:
        return _as_relation(hex, oracle, a)

    functor = Functor(
        source=oracle,
        target=hex,
        on_objects=on_objects,
        on_morphisms=lambda f: hex.canonical(on_objects(f.source), on_objects(f.target), f.f),
    )
    verdict = check_equivalence(functor, oracle.objects(), hex.objects() if objects is None else objects)
    for counterexample in verdict.counterexamples:
        logger.info("Oracle comparison: %s.", counterexample)
    return verdict


def compare_exponential(hex: Hex, oracle: ExLex, a: ExLexObject, b: ExLexObject) -> bool:
    """Check that the classical exponential is isomorphic in Hex to the one built from fibrations."""
    classical = exlex_exponential(oracle, a, b)
    built = hex_exponential(hex, _as_relation(hex, oracle, a), _as_relation(hex, oracle, b))
    return find_isomorphism(hex, _as_relation(hex, oracle, classical.obj), built.relation) is not None
