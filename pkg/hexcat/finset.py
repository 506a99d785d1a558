__all__ = [
    "FinSets",
    "Function",
]


import logging
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .category import Category, ConeRecord, Diagram, compatible_tuples
from .error import BoundExceeded, PreconditionError, check_bound
from .exponential import Exponential, PiTypeData
from .options import HexcatOptions
from .sums import SumData

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Function:
    """Class representing a function between finite sets {0, ..., n - 1}."""

    source: int
    target: int
    values: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __repr__(self) -> str:
        return f"{list(self.values)}:{self.source}->{self.target}"


class FinSets(Category):
    """Finite sets and functions, with every limit built from element tuples.

    Objects are sizes. The enumerated fragment comes from the options.
    """

    def __init__(self, options: Optional[HexcatOptions] = None):
        super().__init__(options)
        self._elements: Dict[Diagram, List[Tuple[int, ...]]] = {}
        self._homs: Dict[Tuple[int, int], List[Function]] = {}

    def objects(self) -> Sequence[int]:
        return tuple(self.options.fragment)

    def hom(self, a: int, b: int) -> Sequence[Function]:
        with self._lock:
            if (a, b) not in self._homs:
                check_bound(f"functions {a} -> {b}", b ** a, self.bound)
                self._homs[a, b] = [
                    Function(a, b, values) for values in product(range(b), repeat=a)
                ]
            return self._homs[a, b]

    def dom(self, f: Function) -> int:
        return f.source

    def cod(self, f: Function) -> int:
        return f.target

    def identity(self, a: int) -> Function:
        return Function(a, a, tuple(range(a)))

    def compose2(self, g: Function, f: Function) -> Function:
        return Function(f.source, g.target, tuple(g.values[x] for x in f.values))

    def describe_object(self, a: Any) -> str:
        return f"{{{a}}}"

    def construct_limit(self, diagram: Diagram) -> ConeRecord:
        elements = compatible_tuples(
            [range(n) for n in diagram.nodes],
            [(i, j, m.values.__getitem__) for i, j, m in diagram.edges],
            "limit elements",
            self.bound,
        )
        self._elements[diagram] = elements
        apex = len(elements)
        legs = tuple(
            Function(apex, node, tuple(t[k] for t in elements))
            for k, node in enumerate(diagram.nodes)
        )
        return ConeRecord(apex, legs)

    def elements(self, diagram: Diagram) -> List[Tuple[int, ...]]:
        """Return the element tuples of the limit of the diagram."""
        self.require_limit(diagram, "limit")
        return self._elements[diagram]

    def mediate(self, diagram: Diagram, limit: ConeRecord, cone: ConeRecord) -> Function:
        index = {t: k for k, t in enumerate(self.elements(diagram))}
        try:
            values = tuple(
                index[tuple(leg.values[x] for leg in cone.legs)]
                for x in range(cone.apex)
            )
        except KeyError:
            raise PreconditionError("The cone does not factor through the limit.") from None
        return Function(cone.apex, limit.apex, values)

    def lifts(self, source: int, p: Function, g: Function):
        fibres = [
            [e for e in range(p.source) if p.values[e] == g.values[x]]
            for x in range(source)
        ]
        for count, values in enumerate(product(*fibres), 1):
            if count > self.bound:
                raise BoundExceeded("lifts", count, self.bound)
            yield Function(source, p.source, values)

    def inverse(self, f: Function) -> Optional[Function]:
        if f.source != f.target or len(set(f.values)) != f.source:
            return None
        values = [0] * f.source
        for x, y in enumerate(f.values):
            values[y] = x
        return Function(f.target, f.source, tuple(values))

    def initial(self) -> int:
        return 0

    def sum(self, a: int, b: int) -> SumData:
        return SumData(
            left=a,
            right=b,
            obj=a + b,
            inl=Function(a, a + b, tuple(range(a))),
            inr=Function(b, a + b, tuple(range(a, a + b))),
            copair=lambda f, g: Function(a + b, f.target, f.values + g.values),
        )

    def exponential(self, x: int, y: int) -> Exponential:
        """Return the set of functions y -> x with application."""
        size = check_bound(f"functions {y} -> {x}", x ** y, self.bound)
        functions = list(product(range(x), repeat=y))
        index = {values: k for k, values in enumerate(functions)}
        cone = self.product(size, y)
        ev = Function(
            cone.apex,
            x,
            tuple(functions[i // y][i % y] for i in range(cone.apex)),
        )

        def curry(source: int, h: Function) -> Function:
            return Function(
                source,
                size,
                tuple(
                    index[tuple(h.values[a * y + j] for j in range(y))]
                    for a in range(source)
                ),
            )

        return Exponential(x, y, size, ev, cone, curry)

    def pi(self, f: Function, alpha: Function) -> PiTypeData:
        """Return the dependent product of f along alpha as fibrewise sections."""
        fibres = [
            [j for j in range(alpha.source) if alpha.values[j] == i]
            for i in range(alpha.target)
        ]
        sections: List[Tuple[int, Tuple[int, ...]]] = []
        for i, fibre in enumerate(fibres):
            choices = [[x for x in range(f.source) if f.values[x] == j] for j in fibre]
            check_bound("sections", prod(len(c) for c in choices), self.bound)
            sections.extend((i, s) for s in product(*choices))
        check_bound("dependent product", len(sections), self.bound)

        section_index = {section: k for k, section in enumerate(sections)}
        size = len(sections)
        proj = Function(size, alpha.target, tuple(i for i, _ in sections))
        cone = self.pullback(alpha, proj)

        def value(j: int, k: int) -> int:
            i, s = sections[k]
            return s[fibres[i].index(j)]

        ev = Function(
            cone.apex,
            f.source,
            tuple(value(j, k) for j, k, _ in self.elements(self.cospan(alpha, proj))),
        )

        def transpose(g: Function, m: Function) -> Function:
            elements = self.elements(self.cospan(alpha, g))
            index = {(j, a): k for k, (j, a, _) in enumerate(elements)}
            return Function(
                g.source,
                size,
                tuple(
                    section_index[
                        g.values[a],
                        tuple(m.values[index[j, a]] for j in fibres[g.values[a]]),
                    ]
                    for a in range(g.source)
                ),
            )

        return PiTypeData(f, alpha, size, proj, ev, cone, transpose)
