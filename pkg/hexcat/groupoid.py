__all__ = [
    "Groupoid",
    "GroupoidFunctor",
    "GroupoidElements",
    "GroupoidClassification",
    "Groupoids",
    "GroupoidStructure",
    "build_groupoid",
    "natural_isomorphisms",
    "gpd_path_object",
    "gpd_classify",
    "gpd_pi",
    "empty",
    "point",
    "discrete",
    "interval",
    "delooping",
]


import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
)

from .category import Category, ConeRecord, Diagram, compatible_tuples
from .error import BoundExceeded, PreconditionError, StructuralError, check_bound
from .exponential import Exponential, PiTypeData
from .options import HexcatOptions
from .path import PathCategory, PathObjectData
from .sums import SumData

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Component:
    root: int
    members: Tuple[int, ...]
    arrows: Tuple[int, ...]
    tree: Dict[int, int]
    group: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Groupoid:
    """Class representing a finite groupoid.

    Arrows are `(label, dom, cod)` triples and `composites` lists every
    composable pair as `(g, f, g . f)`.
    """

    objects: Tuple[str, ...]
    arrows: Tuple[Tuple[str, int, int], ...]
    identities: Tuple[int, ...]
    inverses: Tuple[int, ...]
    composites: Tuple[Tuple[int, int, int], ...]
    name: str = ""

    @cached_property
    def key(self) -> Tuple[Any, ...]:
        return (
            self.objects,
            self.arrows,
            self.identities,
            self.inverses,
            self.composites,
        )

    @cached_property
    def _hash(self) -> int:
        return hash(self.key)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Groupoid):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __repr__(self) -> str:
        return f"Groupoid({self.name or '?'}, {len(self.objects)} objects, {len(self.arrows)} arrows)"

    @cached_property
    def table(self) -> Dict[Tuple[int, int], int]:
        return {(g, f): h for g, f, h in self.composites}

    @cached_property
    def homs(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        homs: Dict[Tuple[int, int], List[int]] = defaultdict(list)
        for u, (_, a, b) in enumerate(self.arrows):
            homs[a, b].append(u)
        return {key: tuple(value) for key, value in homs.items()}

    def hom(self, a: int, b: int) -> Tuple[int, ...]:
        return self.homs.get((a, b), ())

    def dom(self, u: int) -> int:
        return self.arrows[u][1]

    def cod(self, u: int) -> int:
        return self.arrows[u][2]

    def label(self, u: int) -> str:
        return self.arrows[u][0]

    def compose(self, g: int, f: int) -> int:
        try:
            return self.table[g, f]
        except KeyError:
            raise StructuralError(
                f"Missing composite {self.label(g)} . {self.label(f)} in {self.name or 'groupoid'}."
            ) from None

    def inverse(self, u: int) -> int:
        return self.inverses[u]

    @cached_property
    def components(self) -> Tuple[_Component, ...]:
        """Connected components with a spanning tree rooted at the least object."""
        seen: Dict[int, int] = {}
        components: List[_Component] = []

        for root in range(len(self.objects)):
            if root in seen:
                continue
            tree = {root: self.identities[root]}
            queue = [root]
            while queue:
                x = queue.pop(0)
                for u, (_, a, b) in enumerate(self.arrows):
                    if a == x and b not in tree:
                        tree[b] = self.compose(u, tree[x])
                        queue.append(b)
            members = tuple(sorted(tree))
            for x in members:
                seen[x] = root
            arrows = tuple(u for u, (_, a, _) in enumerate(self.arrows) if a in tree)
            components.append(
                _Component(root, members, arrows, tree, self.hom(root, root))
            )

        return tuple(components)

    def check(self) -> List[str]:
        """Return every violated groupoid law."""
        problems: List[str] = []
        for a, i in enumerate(self.identities):
            if self.dom(i) != a or self.cod(i) != a:
                problems.append(f"identity of {self.objects[a]} has the wrong type")
        for u in range(len(self.arrows)):
            a, b = self.dom(u), self.cod(u)
            v = self.inverse(u)
            if self.table.get((u, self.identities[a])) != u:
                problems.append(f"right identity fails for {self.label(u)}")
            if self.table.get((self.identities[b], u)) != u:
                problems.append(f"left identity fails for {self.label(u)}")
            if self.table.get((v, u)) != self.identities[a]:
                problems.append(f"{self.label(v)} is not a left inverse of {self.label(u)}")
            if self.table.get((u, v)) != self.identities[b]:
                problems.append(f"{self.label(v)} is not a right inverse of {self.label(u)}")
        for f in range(len(self.arrows)):
            for g in range(len(self.arrows)):
                if self.cod(f) != self.dom(g):
                    continue
                if (g, f) not in self.table:
                    problems.append(f"missing composite {self.label(g)} . {self.label(f)}")
                    continue
                for h in range(len(self.arrows)):
                    if self.cod(g) != self.dom(h):
                        continue
                    if self.table.get((h, self.table[g, f])) != self.table.get(
                        (self.table.get((h, g), -1), f)
                    ):
                        problems.append(
                            f"associativity fails for ({self.label(h)}, {self.label(g)}, {self.label(f)})"
                        )
        return problems


@dataclass(frozen=True)
class GroupoidFunctor:
    """Class representing a functor between finite groupoids."""

    source: Groupoid
    target: Groupoid
    objects: Tuple[int, ...]
    arrows: Tuple[int, ...]

    def __repr__(self) -> str:
        images = ",".join(self.target.objects[y] for y in self.objects)
        return f"{self.source.name or '?'}->{self.target.name or '?'}[{images}]"


@dataclass
class GroupoidElements:
    """Groupoid built from hashable keys, with the key lookups kept around."""

    groupoid: Groupoid
    object_keys: List[Hashable]
    arrow_keys: List[Hashable]
    object_index: Dict[Hashable, int]
    arrow_index: Dict[Hashable, int]


def build_groupoid(
    name: str,
    objects: Sequence[Hashable],
    arrows: Sequence[Tuple[Hashable, Hashable, Hashable]],
    identity: Callable[[Any], Hashable],
    compose: Callable[[Any, Any], Hashable],
    inverse: Callable[[Any], Hashable],
    object_label: Callable[[Any], str] = str,
    arrow_label: Callable[[Any], str] = str,
) -> GroupoidElements:
    """Build a groupoid from object keys and `(key, dom, cod)` arrow triples."""
    object_keys = list(objects)
    object_index = {key: i for i, key in enumerate(object_keys)}
    arrow_keys = [key for key, _, _ in arrows]
    arrow_index = {key: i for i, key in enumerate(arrow_keys)}

    table = tuple(
        (arrow_label(key), object_index[a], object_index[b]) for key, a, b in arrows
    )
    by_dom: Dict[int, List[int]] = defaultdict(list)
    for u, (_, a, _) in enumerate(table):
        by_dom[a].append(u)

    try:
        groupoid = Groupoid(
            objects=tuple(object_label(key) for key in object_keys),
            arrows=table,
            identities=tuple(arrow_index[identity(key)] for key in object_keys),
            inverses=tuple(arrow_index[inverse(key)] for key in arrow_keys),
            composites=tuple(
                (g, f, arrow_index[compose(arrow_keys[g], arrow_keys[f])])
                for f, (_, _, b) in enumerate(table)
                for g in by_dom[b]
            ),
            name=name,
        )
    except KeyError as exc:
        raise StructuralError(f"Groupoid {name!r} is not closed under {exc.args[0]!r}.") from None

    return GroupoidElements(groupoid, object_keys, arrow_keys, object_index, arrow_index)


def _tuple_label(labels: Sequence[str], unit: str) -> str:
    return f"({','.join(labels)})" if labels else unit


def _homomorphisms(
    source: Groupoid,
    target: Groupoid,
    group: Sequence[int],
    b: int,
    arrow_ok: Callable[[int, int], bool],
) -> Iterator[Dict[int, int]]:
    """Yield the vertex group maps at b in lexicographic order.

    Each branch fixes the image of the first unassigned element and closes the
    partial map under composition, so only generated subgroups are searched.
    """
    candidates = {h: [a for a in target.hom(b, b) if arrow_ok(h, a)] for h in group}

    def close(phi: Dict[int, int]) -> Optional[Dict[int, int]]:
        while True:
            added = False
            for h, k in product(list(phi), repeat=2):
                hk = source.compose(h, k)
                image = target.compose(phi[h], phi[k])
                if hk not in phi:
                    if image not in candidates[hk]:
                        return None
                    phi[hk] = image
                    added = True
                elif phi[hk] != image:
                    return None
            if not added:
                return phi

    def extend(phi: Dict[int, int]) -> Iterator[Dict[int, int]]:
        missing = next((h for h in group if h not in phi), None)
        if missing is None:
            yield phi
            return
        for a in candidates[missing]:
            closed = close({**phi, missing: a})
            if closed is not None:
                yield from extend(closed)

    yield from extend({})


def _component_assignments(
    source: Groupoid,
    target: Groupoid,
    component: _Component,
    object_choices: Callable[[int], Sequence[int]],
    arrow_ok: Callable[[int, int], bool],
) -> Iterator[Tuple[Dict[int, int], Dict[int, int]]]:
    root, tree = component.root, component.tree
    order = [root] + [x for x in component.members if x != root]
    rank = {x: k for k, x in enumerate(order)}
    due: Dict[int, List[int]] = defaultdict(list)
    for u in component.arrows:
        due[max(rank[source.dom(u)], rank[source.cod(u)])].append(u)

    for b in object_choices(root):
        for phi in _homomorphisms(source, target, component.group, b, arrow_ok):
            object_map = {root: b}
            image_tree = {root: target.identities[b]}
            arrow_map: Dict[int, int] = {}

            # Arrows are checked as soon as both ends have an image.
            def settle(step: int) -> bool:
                for u in due[step]:
                    x, y = source.dom(u), source.cod(u)
                    loop = source.compose(source.inverse(tree[y]), source.compose(u, tree[x]))
                    image = target.compose(
                        image_tree[y],
                        target.compose(phi[loop], target.inverse(image_tree[x])),
                    )
                    if not arrow_ok(u, image):
                        return False
                    arrow_map[u] = image
                return True

            def extend(step: int) -> Iterator[Tuple[Dict[int, int], Dict[int, int]]]:
                if step == len(order):
                    yield dict(object_map), dict(arrow_map)
                    return
                x = order[step]
                for y in object_choices(x):
                    for a in target.hom(b, y):
                        if not arrow_ok(tree[x], a):
                            continue
                        object_map[x] = y
                        image_tree[x] = a
                        if settle(step):
                            yield from extend(step + 1)

            if settle(0):
                yield from extend(1)


def _functors(
    source: Groupoid,
    target: Groupoid,
    object_choices: Callable[[int], Sequence[int]],
    arrow_ok: Callable[[int, int], bool],
) -> Iterator[GroupoidFunctor]:
    """Enumerate functors lazily through spanning trees and vertex group maps."""
    components = source.components
    for component in components:
        first = _component_assignments(source, target, component, object_choices, arrow_ok)
        if next(first, None) is None:
            return

    objects = [0] * len(source.objects)
    arrows = [0] * len(source.arrows)

    def extend(k: int) -> Iterator[GroupoidFunctor]:
        if k == len(components):
            yield GroupoidFunctor(source, target, tuple(objects), tuple(arrows))
            return
        for object_map, arrow_map in _component_assignments(
            source, target, components[k], object_choices, arrow_ok
        ):
            for x, y in object_map.items():
                objects[x] = y
            for u, a in arrow_map.items():
                arrows[u] = a
            yield from extend(k + 1)

    yield from extend(0)


def natural_isomorphisms(
    F: GroupoidFunctor,
    G: GroupoidFunctor,
    bound: int = 4096,
) -> Iterator[Tuple[int, ...]]:
    """Yield the natural isomorphisms F => G as tuples of components."""
    source, target = F.source, F.target
    size = len(source.objects)
    due: Dict[int, List[int]] = defaultdict(list)
    for u in range(len(source.arrows)):
        due[max(source.dom(u), source.cod(u))].append(u)
    theta: List[int] = [0] * size
    count = 0

    def natural(y: int) -> bool:
        return all(
            target.compose(G.arrows[u], theta[source.dom(u)])
            == target.compose(theta[source.cod(u)], F.arrows[u])
            for u in due[y]
        )

    def extend(y: int) -> Iterator[Tuple[int, ...]]:
        nonlocal count
        if y == size:
            count += 1
            if count > bound:
                raise BoundExceeded("natural transformations", count, bound)
            yield tuple(theta)
            return
        for c in target.hom(F.objects[y], G.objects[y]):
            theta[y] = c
            if natural(y):
                yield from extend(y + 1)

    yield from extend(0)


@dataclass(frozen=True)
class GroupoidClassification:
    isofibration: bool
    equivalence: bool
    counterexample: Optional[str] = None


def gpd_classify(F: GroupoidFunctor) -> GroupoidClassification:
    """Decide whether F is an isofibration and whether it is an equivalence."""
    E, B = F.source, F.target
    counterexample = None

    isofibration = True
    for e in range(len(E.objects)):
        for u in range(len(B.arrows)):
            if B.dom(u) != F.objects[e]:
                continue
            if not any(F.arrows[a] == u for a in range(len(E.arrows)) if E.dom(a) == e):
                isofibration = False
                counterexample = f"{B.label(u)} has no lift at {E.objects[e]}"
                break
        if not isofibration:
            break

    essentially_surjective = all(
        any(B.hom(F.objects[e], b) for e in range(len(E.objects)))
        for b in range(len(B.objects))
    )
    fully_faithful = all(
        sorted(F.arrows[a] for a in E.hom(x, y)) == sorted(B.hom(F.objects[x], F.objects[y]))
        for x in range(len(E.objects))
        for y in range(len(E.objects))
    )

    return GroupoidClassification(
        isofibration=isofibration,
        equivalence=essentially_surjective and fully_faithful,
        counterexample=counterexample,
    )


def _fixture(
    name: str,
    objects: Sequence[str],
    group: Optional[int] = None,
) -> Groupoid:
    if group is not None:
        elements = list(range(group))
        labels = ["id_*"] + [f"g^{k}" if k > 1 else "g" for k in elements[1:]]
        return build_groupoid(
            name,
            ["*"],
            [(k, "*", "*") for k in elements],
            identity=lambda _: 0,
            compose=lambda g, f: (g + f) % group,
            inverse=lambda f: (-f) % group,
            object_label=str,
            arrow_label=lambda k: labels[k],
        ).groupoid

    def label(key: Tuple[str, str]) -> str:
        a, b = key
        if a == b:
            return f"id_{a}"
        if objects.index(a) < objects.index(b):
            return f"{a}{b}"
        return f"{b}{a}^-1"

    codiscrete = name.startswith("I")
    return build_groupoid(
        name,
        objects,
        [
            ((a, b), a, b)
            for a in objects
            for b in objects
            if a == b or codiscrete
        ],
        identity=lambda a: (a, a),
        compose=lambda g, f: (f[0], g[1]),
        inverse=lambda f: (f[1], f[0]),
        arrow_label=label,
    ).groupoid


def empty() -> Groupoid:
    """The empty groupoid."""
    return _fixture("0", [])


def point() -> Groupoid:
    """The one-object groupoid, equal to the terminal object of `Groupoids`."""
    return _fixture("1", ["*"], group=1)


def discrete(n: int) -> Groupoid:
    return _fixture(f"Disc({n})", [str(k) for k in range(n)])


def interval() -> Groupoid:
    """Two objects and a single isomorphism between them."""
    return _fixture("I", ["0", "1"])


def delooping(n: int) -> Groupoid:
    """One object whose automorphism group is cyclic of order n."""
    return _fixture(f"B(Z/{n})", ["*"], group=n)


class Groupoids(Category):
    """Finite groupoids and functors, with limits built from compatible tuples."""

    fixtures: Tuple[Groupoid, ...]

    def __init__(
        self,
        fixtures: Optional[Sequence[Groupoid]] = None,
        options: Optional[HexcatOptions] = None,
    ):
        super().__init__(options)
        self.fixtures = tuple(
            fixtures
            if fixtures is not None
            else (empty(), point(), discrete(2), interval(), delooping(2))
        )
        self._elements: Dict[Diagram, GroupoidElements] = {}
        self._homs: Dict[Tuple[Groupoid, Groupoid], List[GroupoidFunctor]] = {}
        self._exponentials: Dict[Tuple[Groupoid, Groupoid], Exponential] = {}
        self._pis: Dict[Tuple[GroupoidFunctor, GroupoidFunctor], PiTypeData] = {}

    def objects(self) -> Sequence[Groupoid]:
        return self.fixtures

    def _bounded(self, what: str, functors: Iterator[GroupoidFunctor]) -> List[GroupoidFunctor]:
        result: List[GroupoidFunctor] = []
        for F in functors:
            result.append(F)
            if len(result) > self.bound:
                raise BoundExceeded(what, len(result), self.bound)
        return result

    def hom(self, a: Groupoid, b: Groupoid) -> Sequence[GroupoidFunctor]:
        with self._lock:
            if (a, b) not in self._homs:
                self._homs[a, b] = self._bounded(
                    f"functors {a.name} -> {b.name}",
                    _functors(
                        a,
                        b,
                        lambda _: range(len(b.objects)),
                        lambda u, v: True,
                    ),
                )
            return self._homs[a, b]

    def dom(self, f: GroupoidFunctor) -> Groupoid:
        return f.source

    def cod(self, f: GroupoidFunctor) -> Groupoid:
        return f.target

    def identity(self, a: Groupoid) -> GroupoidFunctor:
        return GroupoidFunctor(a, a, tuple(range(len(a.objects))), tuple(range(len(a.arrows))))

    def compose2(self, g: GroupoidFunctor, f: GroupoidFunctor) -> GroupoidFunctor:
        return GroupoidFunctor(
            f.source,
            g.target,
            tuple(g.objects[x] for x in f.objects),
            tuple(g.arrows[u] for u in f.arrows),
        )

    def describe_object(self, a: Any) -> str:
        return a.name or repr(a)

    def lifts(self, source: Groupoid, p: GroupoidFunctor, g: GroupoidFunctor):
        E = p.source
        fibres = {
            x: [e for e in range(len(E.objects)) if p.objects[e] == g.objects[x]]
            for x in range(len(source.objects))
        }
        lifts = _functors(
            source,
            E,
            lambda x: fibres[x],
            lambda u, a: p.arrows[a] == g.arrows[u],
        )
        for count, F in enumerate(lifts, 1):
            if count > self.bound:
                raise BoundExceeded("lifts", count, self.bound)
            yield F

    def inverse(self, f: GroupoidFunctor) -> Optional[GroupoidFunctor]:
        if sorted(f.objects) != list(range(len(f.target.objects))):
            return None
        if sorted(f.arrows) != list(range(len(f.target.arrows))):
            return None
        objects = [0] * len(f.objects)
        arrows = [0] * len(f.arrows)
        for x, y in enumerate(f.objects):
            objects[y] = x
        for u, v in enumerate(f.arrows):
            arrows[v] = u
        return GroupoidFunctor(f.target, f.source, tuple(objects), tuple(arrows))

    def construct_limit(self, diagram: Diagram) -> ConeRecord:
        nodes: Tuple[Groupoid, ...] = diagram.nodes
        object_keys = compatible_tuples(
            [range(len(G.objects)) for G in nodes],
            [(i, j, F.objects.__getitem__) for i, j, F in diagram.edges],
            "limit objects",
            self.bound,
        )
        arrow_edges = [(i, j, F.arrows.__getitem__) for i, j, F in diagram.edges]
        arrows = []
        for t in object_keys:
            for t2 in object_keys:
                homs = [G.hom(t[k], t2[k]) for k, G in enumerate(nodes)]
                for a in compatible_tuples(homs, arrow_edges, "limit arrows", self.bound):
                    arrows.append((a, t, t2))
                check_bound("limit arrows", len(arrows), self.bound * 4)

        elements = build_groupoid(
            "lim(" + ",".join(G.name or "?" for G in nodes) + ")" if nodes else "1",
            object_keys,
            arrows,
            identity=lambda t: tuple(G.identities[t[k]] for k, G in enumerate(nodes)),
            compose=lambda g, f: tuple(G.compose(g[k], f[k]) for k, G in enumerate(nodes)),
            inverse=lambda f: tuple(G.inverse(f[k]) for k, G in enumerate(nodes)),
            object_label=lambda t: _tuple_label(
                [G.objects[t[k]] for k, G in enumerate(nodes)], "*"
            ),
            arrow_label=lambda a: _tuple_label(
                [G.label(a[k]) for k, G in enumerate(nodes)], "id_*"
            ),
        )
        self._elements[diagram] = elements
        apex = elements.groupoid

        legs = tuple(
            GroupoidFunctor(
                apex,
                G,
                tuple(t[k] for t in elements.object_keys),
                tuple(a[k] for a in elements.arrow_keys),
            )
            for k, G in enumerate(nodes)
        )
        return ConeRecord(apex, legs)

    def elements(self, diagram: Diagram) -> GroupoidElements:
        """Return the keyed presentation of the limit of the diagram."""
        self.require_limit(diagram, "limit")
        return self._elements[diagram]

    def mediate(
        self,
        diagram: Diagram,
        limit: ConeRecord,
        cone: ConeRecord,
    ) -> GroupoidFunctor:
        elements = self.elements(diagram)
        source: Groupoid = cone.apex
        try:
            objects = tuple(
                elements.object_index[tuple(leg.objects[x] for leg in cone.legs)]
                for x in range(len(source.objects))
            )
            arrows = tuple(
                elements.arrow_index[tuple(leg.arrows[u] for leg in cone.legs)]
                for u in range(len(source.arrows))
            )
        except KeyError:
            raise PreconditionError("The cone does not factor through the limit.") from None
        return GroupoidFunctor(source, limit.apex, objects, arrows)

    def initial(self) -> Groupoid:
        return empty()

    def sum(self, a: Groupoid, b: Groupoid) -> SumData:
        sides = (a, b)
        elements = build_groupoid(
            f"{a.name}+{b.name}",
            [(0, x) for x in range(len(a.objects))] + [(1, y) for y in range(len(b.objects))],
            [
                ((k, u), (k, G.dom(u)), (k, G.cod(u)))
                for k, G in enumerate(sides)
                for u in range(len(G.arrows))
            ],
            identity=lambda x: (x[0], sides[x[0]].identities[x[1]]),
            compose=lambda g, f: (g[0], sides[g[0]].compose(g[1], f[1])),
            inverse=lambda f: (f[0], sides[f[0]].inverse(f[1])),
            object_label=lambda x: f"{'lr'[x[0]]}.{sides[x[0]].objects[x[1]]}",
            arrow_label=lambda f: f"{'lr'[f[0]]}.{sides[f[0]].label(f[1])}",
        )
        total = elements.groupoid
        offset, arrow_offset = len(a.objects), len(a.arrows)

        def copair(f: GroupoidFunctor, g: GroupoidFunctor) -> GroupoidFunctor:
            return GroupoidFunctor(total, f.target, f.objects + g.objects, f.arrows + g.arrows)

        return SumData(
            left=a,
            right=b,
            obj=total,
            inl=GroupoidFunctor(
                a, total, tuple(range(offset)), tuple(range(arrow_offset))
            ),
            inr=GroupoidFunctor(
                b,
                total,
                tuple(range(offset, offset + len(b.objects))),
                tuple(range(arrow_offset, arrow_offset + len(b.arrows))),
            ),
            copair=copair,
        )

    def exponential(self, x: Groupoid, y: Groupoid) -> Exponential:
        """Return the groupoid of functors y -> x and natural isomorphisms."""
        with self._lock:
            if (x, y) not in self._exponentials:
                self._exponentials[x, y] = self._functor_groupoid(x, y)
            return self._exponentials[x, y]

    def _functor_groupoid(self, x: Groupoid, y: Groupoid) -> Exponential:
        functors = list(self.hom(y, x))
        functor_index = {F: k for k, F in enumerate(functors)}
        arrows = [
            ((k, k2, theta), k, k2)
            for k, F in enumerate(functors)
            for k2, G in enumerate(functors)
            for theta in natural_isomorphisms(F, G, self.bound)
        ]
        check_bound("natural isomorphisms", len(arrows), self.bound)

        elements = build_groupoid(
            f"{x.name}^{y.name}",
            range(len(functors)),
            arrows,
            identity=lambda k: (
                k,
                k,
                tuple(x.identities[functors[k].objects[b]] for b in range(len(y.objects))),
            ),
            compose=lambda g, f: (
                f[0],
                g[1],
                tuple(x.compose(gc, fc) for gc, fc in zip(g[2], f[2])),
            ),
            inverse=lambda f: (f[1], f[0], tuple(x.inverse(c) for c in f[2])),
            object_label=lambda k: f"F{k}",
            arrow_label=lambda f: f"F{f[0]}=>F{f[1]}:" + ",".join(x.label(c) for c in f[2]),
        )
        exp = elements.groupoid
        cone = self.product(exp, y)
        pairs = self.elements(Diagram((exp, y)))

        def ev_arrow(key: Tuple[int, int]) -> int:
            a, u = key
            _, k2, theta = elements.arrow_keys[a]
            return x.compose(functors[k2].arrows[u], theta[y.dom(u)])

        ev = GroupoidFunctor(
            cone.apex,
            x,
            tuple(functors[k].objects[b] for k, b in pairs.object_keys),
            tuple(ev_arrow(key) for key in pairs.arrow_keys),
        )

        def curry(source: Groupoid, h: GroupoidFunctor) -> GroupoidFunctor:
            grid = self.elements(Diagram((source, y)))
            images = []
            for a in range(len(source.objects)):
                F = GroupoidFunctor(
                    y,
                    x,
                    tuple(
                        h.objects[grid.object_index[a, b]] for b in range(len(y.objects))
                    ),
                    tuple(
                        h.arrows[grid.arrow_index[source.identities[a], u]]
                        for u in range(len(y.arrows))
                    ),
                )
                images.append(functor_index[F])
            transposed = tuple(
                elements.arrow_index[
                    images[source.dom(w)],
                    images[source.cod(w)],
                    tuple(
                        h.arrows[grid.arrow_index[w, y.identities[b]]]
                        for b in range(len(y.objects))
                    ),
                ]
                for w in range(len(source.arrows))
            )
            return GroupoidFunctor(source, exp, tuple(images), transposed)

        return Exponential(x, y, exp, ev, cone, curry)

    def pi(self, f: GroupoidFunctor, alpha: GroupoidFunctor) -> PiTypeData:
        with self._lock:
            if (f, alpha) not in self._pis:
                self._pis[f, alpha] = gpd_pi(f, alpha, self)
            return self._pis[f, alpha]


def _fibre_sections(
    f: GroupoidFunctor,
    J: Groupoid,
    fibre_objects: Sequence[int],
    fibre_arrows: Sequence[int],
    bound: int,
) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    X = f.source
    position = {j: k for k, j in enumerate(fibre_objects)}
    object_choices = [
        [x for x in range(len(X.objects)) if f.objects[x] == j] for j in fibre_objects
    ]
    check_bound("fibre sections", prod(len(c) for c in object_choices), bound)

    for s_obj in product(*object_choices):
        arrow_choices = [
            [
                a
                for a in X.hom(s_obj[position[J.dom(w)]], s_obj[position[J.cod(w)]])
                if f.arrows[a] == w
            ]
            for w in fibre_arrows
        ]
        check_bound("fibre sections", prod(len(c) for c in arrow_choices), bound)
        arrow_position = {w: k for k, w in enumerate(fibre_arrows)}
        for s_arr in product(*arrow_choices):
            if all(
                s_arr[arrow_position[J.compose(w2, w1)]]
                == X.compose(s_arr[arrow_position[w2]], s_arr[arrow_position[w1]])
                for w1 in fibre_arrows
                for w2 in fibre_arrows
                if J.cod(w1) == J.dom(w2)
            ):
                yield tuple(s_obj), tuple(s_arr)


def gpd_pi(
    f: GroupoidFunctor,
    alpha: GroupoidFunctor,
    category: Optional[Groupoids] = None,
) -> PiTypeData:
    """Build the dependent product of the isofibration f along alpha.

    Objects are sections over the strict fibres of alpha, arrows over u are
    natural families of lifts indexed by the arrows of J lying over u.
    """
    category = category or Groupoids()
    bound = category.bound
    X, J, I = f.source, alpha.source, alpha.target

    fibre_objects = {
        i: [j for j in range(len(J.objects)) if alpha.objects[j] == i]
        for i in range(len(I.objects))
    }
    fibre_arrows = {
        i: [w for w in range(len(J.arrows)) if alpha.arrows[w] == I.identities[i]]
        for i in range(len(I.objects))
    }
    over = {
        u: [v for v in range(len(J.arrows)) if alpha.arrows[v] == u]
        for u in range(len(I.arrows))
    }
    object_position = {i: {j: k for k, j in enumerate(js)} for i, js in fibre_objects.items()}
    arrow_position = {i: {w: k for k, w in enumerate(ws)} for i, ws in fibre_arrows.items()}
    over_position = {u: {v: k for k, v in enumerate(vs)} for u, vs in over.items()}

    sections: List[Tuple[int, Tuple[int, ...], Tuple[int, ...]]] = [
        (i, s_obj, s_arr)
        for i in range(len(I.objects))
        for s_obj, s_arr in _fibre_sections(f, J, fibre_objects[i], fibre_arrows[i], bound)
    ]
    check_bound("dependent product objects", len(sections), bound)

    def at(k: int, j: int) -> int:
        i, s_obj, _ = sections[k]
        return s_obj[object_position[i][j]]

    def along(k: int, w: int) -> int:
        i, _, s_arr = sections[k]
        return s_arr[arrow_position[i][w]]

    arrows = []
    for k, (i, _, _) in enumerate(sections):
        for k2, (i2, _, _) in enumerate(sections):
            for u in I.hom(i, i2):
                candidates = [
                    [a for a in X.hom(at(k, J.dom(v)), at(k2, J.cod(v))) if f.arrows[a] == v]
                    for v in over[u]
                ]
                check_bound("dependent product arrows", prod(len(c) for c in candidates), bound)
                for theta in product(*candidates):
                    natural = all(
                        theta[over_position[u][J.compose(w2, J.compose(v, w1))]]
                        == X.compose(along(k2, w2), X.compose(theta[n], along(k, w1)))
                        for n, v in enumerate(over[u])
                        for w1 in fibre_arrows[i]
                        if J.cod(w1) == J.dom(v)
                        for w2 in fibre_arrows[i2]
                        if J.dom(w2) == J.cod(v)
                    )
                    if natural:
                        arrows.append(((k, k2, u, tuple(theta)), k, k2))

    def identity(k: int) -> Tuple[Any, ...]:
        i = sections[k][0]
        return (k, k, I.identities[i], tuple(along(k, v) for v in over[I.identities[i]]))

    def compose(g: Tuple[Any, ...], h: Tuple[Any, ...]) -> Tuple[Any, ...]:
        k, _, u, theta = h
        _, k3, u2, theta2 = g
        u3 = I.compose(u2, u)
        components = []
        for v3 in over[u3]:
            v = next((v for v in over[u] if J.dom(v) == J.dom(v3)), None)
            if v is None:
                raise PreconditionError("The base map of the dependent product is not an isofibration.")
            v2 = J.compose(v3, J.inverse(v))
            components.append(
                X.compose(theta2[over_position[u2][v2]], theta[over_position[u][v]])
            )
        return (k, k3, u3, tuple(components))

    def inverse(h: Tuple[Any, ...]) -> Tuple[Any, ...]:
        k, k2, u, theta = h
        u_inv = I.inverse(u)
        return (
            k2,
            k,
            u_inv,
            tuple(
                X.inverse(theta[over_position[u][J.inverse(v)]]) for v in over[u_inv]
            ),
        )

    elements = build_groupoid(
        f"Pi({f.source.name})",
        range(len(sections)),
        arrows,
        identity=identity,
        compose=compose,
        inverse=inverse,
        object_label=lambda k: f"s{k}@{I.objects[sections[k][0]]}",
        arrow_label=lambda h: f"s{h[0]}->s{h[1]}@{I.label(h[2])}:{','.join(map(str, h[3]))}",
    )
    total = elements.groupoid
    section_index = {section: k for k, section in enumerate(sections)}

    proj = GroupoidFunctor(
        total,
        I,
        tuple(i for i, _, _ in sections),
        tuple(key[2] for key in elements.arrow_keys),
    )
    cone = category.pullback(alpha, proj)
    pulled = category.elements(category.cospan(alpha, proj))
    ev = GroupoidFunctor(
        cone.apex,
        X,
        tuple(at(k, j) for j, k, _ in pulled.object_keys),
        tuple(
            elements.arrow_keys[a][3][over_position[u][v]]
            for v, a, u in pulled.arrow_keys
        ),
    )

    def transpose(g: GroupoidFunctor, m: GroupoidFunctor) -> GroupoidFunctor:
        A = g.source
        grid = category.elements(category.cospan(alpha, g))
        try:
            images = []
            for a in range(len(A.objects)):
                i = g.objects[a]
                s_obj = tuple(m.objects[grid.object_index[j, a, i]] for j in fibre_objects[i])
                s_arr = tuple(
                    m.arrows[grid.arrow_index[w, A.identities[a], I.identities[i]]]
                    for w in fibre_arrows[i]
                )
                images.append(section_index[i, s_obj, s_arr])
            transposed = tuple(
                elements.arrow_index[
                    images[A.dom(c)],
                    images[A.cod(c)],
                    g.arrows[c],
                    tuple(m.arrows[grid.arrow_index[v, c, g.arrows[c]]] for v in over[g.arrows[c]]),
                ]
                for c in range(len(A.arrows))
            )
        except KeyError:
            raise PreconditionError("The map to transpose does not lie over the base.") from None
        return GroupoidFunctor(A, total, tuple(images), transposed)

    return PiTypeData(f, alpha, total, proj, ev, cone, transpose)


def gpd_path_object(
    G: Groupoid,
    category: Optional[Groupoids] = None,
    over: Optional[GroupoidFunctor] = None,
) -> PathObjectData:
    """Return the groupoid of isomorphisms of G with commuting squares.

    When `over` is given only the isomorphisms sent to identities are kept,
    which gives the path object of G in the slice over the base of `over`.
    """
    category = category or Groupoids()
    isos = [
        u
        for u in range(len(G.arrows))
        if over is None or over.arrows[u] == over.target.identities[over.objects[G.dom(u)]]
    ]
    arrows = [
        ((u, v, x), u, v)
        for u in isos
        for v in isos
        for x in G.hom(G.dom(u), G.dom(v))
    ]

    def far_side(key: Tuple[int, int, int]) -> int:
        u, v, x = key
        return G.compose(v, G.compose(x, G.inverse(u)))

    elements = build_groupoid(
        f"P({G.name})",
        isos,
        arrows,
        identity=lambda u: (u, u, G.identities[G.dom(u)]),
        compose=lambda g, f: (f[0], g[1], G.compose(g[2], f[2])),
        inverse=lambda f: (f[1], f[0], G.inverse(f[2])),
        object_label=G.label,
        arrow_label=lambda f: f"[{G.label(f[2])}|{G.label(far_side(f))}]",
    )
    path = elements.groupoid

    r = GroupoidFunctor(
        G,
        path,
        tuple(elements.object_index[G.identities[a]] for a in range(len(G.objects))),
        tuple(
            elements.arrow_index[G.identities[G.dom(u)], G.identities[G.cod(u)], u]
            for u in range(len(G.arrows))
        ),
    )
    s = GroupoidFunctor(
        path,
        G,
        tuple(G.dom(u) for u in isos),
        tuple(key[2] for key in elements.arrow_keys),
    )
    t = GroupoidFunctor(
        path,
        G,
        tuple(G.cod(u) for u in isos),
        tuple(far_side(key) for key in elements.arrow_keys),
    )

    if over is None:
        pairing = category.pair(s, t)
    else:
        pairing = category.pullback_pair(over, over, s, t)

    return PathObjectData(G, path, r, s, t, pairing, over)


class GroupoidStructure(PathCategory):
    """Isofibrations and equivalences of finite groupoids."""

    category: Groupoids

    def __init__(
        self,
        category: Optional[Groupoids] = None,
        options: Optional[HexcatOptions] = None,
    ):
        super().__init__(category or Groupoids(options=options))

    def is_fibration(self, f: GroupoidFunctor) -> bool:
        return gpd_classify(f).isofibration

    def is_weq(self, f: GroupoidFunctor) -> bool:
        return gpd_classify(f).equivalence

    def construct_path_object(self, x: Groupoid) -> PathObjectData:
        return gpd_path_object(x, self.category)

    def construct_fibrewise_path_object(self, p: GroupoidFunctor) -> PathObjectData:
        return gpd_path_object(p.source, self.category, over=p)
