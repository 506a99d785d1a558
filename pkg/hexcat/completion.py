__all__ = [
    "Ex",
    "ExStructure",
    "Hex",
    "ExMorphism",
    "HexMorphism",
    "WeakConnection",
    "ImageFactorization",
    "Quotient",
    "SubobjectPoset",
    "PseudoReplacement",
    "build_ex",
    "hex_hom",
    "hex_limits",
    "image_factorization",
    "cover_section",
    "is_cover",
    "is_mono",
    "quotient_eqrel",
    "embed_i",
    "subobject_poset",
    "pseudo_to_heq",
    "hex_sum",
    "check_pretopos",
]


import logging
from dataclasses import dataclass, field
from typing import (
    TYPE_CHECKING,
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

from .category import Category, ConeRecord, Diagram, Functor, find_limit
from .error import PreconditionError
from .path import (
    PathCategory,
    PathObjectData,
    TrivialStructure,
    factorize,
    homotopic,
)
from .relation import (
    HEqRelation,
    PseudoEqRelation,
    identity_relation,
    is_heq_relation,
    path_relation,
    product_relation,
    pullback_relation,
)
from .sums import ExtensiveVerdict, SumData, check_extensive, search_sum

if TYPE_CHECKING:
    from .exponential import Exponential


logger = logging.getLogger(__name__)


RelationProvider = Callable[[PathCategory, Any], Iterable[HEqRelation]]


@dataclass(frozen=True)
class ExMorphism:
    """Class representing a map of carriers that admits a tracking."""

    source: HEqRelation
    target: HEqRelation
    f: Any
    tracking: Any = field(compare=False)
    strict: bool = field(default=True, compare=False)


@dataclass(frozen=True, eq=False)
class HexMorphism:
    """Class of tracked maps modulo ~, named by one of its members.

    Two morphisms with the same ends are equal when their representatives are
    related by the target relation.
    """

    source: HEqRelation
    target: HEqRelation
    f: Any
    tracking: Any
    ex: Optional["Ex"] = field(default=None, repr=False)

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, HexMorphism):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            return False
        if self.f == other.f:
            return True
        ex = self.ex or other.ex
        return ex is not None and ex.related(self, other) is not None


@dataclass(frozen=True)
class WeakConnection:
    nabla: Any
    p1: Any
    p2: Any


def _cospan(diagram: Diagram) -> Optional[Tuple[Any, Any]]:
    if len(diagram.nodes) != 3 or len(diagram.edges) != 2:
        return None
    (i, j, f), (k, l, g) = diagram.edges
    if (i, j, k, l) != (0, 2, 1, 2):
        return None
    return f, g


class Ex(Category):
    """Homotopy equivalence relations and the maps that admit a tracking.

    Objects are enumerated per carrier, either by a provider or by searching
    every fibration R -> X x X from the relation objects.
    """

    def __init__(
        self,
        ps: PathCategory,
        carriers: Optional[Sequence[Any]] = None,
        relation_objects: Optional[Sequence[Any]] = None,
        relations: Optional[RelationProvider] = None,
    ):
        super().__init__(ps.options)
        self.ps = ps
        self.base = ps.category
        self.carriers = tuple(self.base.objects() if carriers is None else carriers)
        self.relation_objects = tuple(
            self.base.objects() if relation_objects is None else relation_objects
        )
        self.provider = relations
        self._relations: Dict[Any, List[HEqRelation]] = {}
        self._homs: Dict[Tuple[HEqRelation, HEqRelation], List[ExMorphism]] = {}
        self._related: Dict[Tuple[Any, ...], Optional[Any]] = {}

    def relations_on(self, x: Any) -> List[HEqRelation]:
        with self._lock:
            if x not in self._relations:
                if self.provider is not None:
                    self._relations[x] = list(self.provider(self.ps, x))
                else:
                    self._relations[x] = self.search_relations(x)
                logger.debug(
                    "Found %d relations on %s.",
                    len(self._relations[x]),
                    self.base.describe_object(x),
                )
            return self._relations[x]

    def search_relations(self, x: Any) -> List[HEqRelation]:
        found: List[HEqRelation] = []
        try:
            found.append(path_relation(self.ps, x))
        except PreconditionError:
            pass
        square = self.base.product(x, x).apex
        for r in self.relation_objects:
            for rho in self.base.hom(r, square):
                if not self.ps.is_fibration(rho):
                    continue
                relation = is_heq_relation(self.ps, x, rho).relation
                if relation is not None and relation not in found:
                    found.append(relation)
        return found

    def objects(self) -> Sequence[HEqRelation]:
        return [relation for x in self.carriers for relation in self.relations_on(x)]

    def tracking(self, a: HEqRelation, b: HEqRelation, f: Any) -> Optional[Tuple[Any, bool]]:
        """Return a map φ: R -> S over f x f, strict when there is one."""
        base = self.base
        target = base.compose(base.product_map(f, f), a.rho)
        for phi in base.lifts(a.obj, b.rho, target):
            return phi, True
        if not self.options.strict_fillers:
            for phi in base.hom(a.obj, b.obj):
                if homotopic(self.ps, base.compose(b.rho, phi), target) is not None:
                    logger.warning("Using a tracking of %s up to homotopy.", base.describe(f))
                    return phi, False
        return None

    def morphism(self, a: HEqRelation, b: HEqRelation, f: Any) -> ExMorphism:
        if (found := self.tracking(a, b, f)) is None:
            msg = f"{self.base.describe(f)} has no tracking from {self.describe_object(a)} to {self.describe_object(b)}."
            raise PreconditionError(msg)
        return ExMorphism(a, b, f, *found)

    def hom(self, a: HEqRelation, b: HEqRelation) -> Sequence[ExMorphism]:
        with self._lock:
            if (a, b) not in self._homs:
                morphisms = []
                for f in self.base.hom(a.carrier, b.carrier):
                    if (found := self.tracking(a, b, f)) is not None:
                        morphisms.append(ExMorphism(a, b, f, *found))
                self._homs[a, b] = morphisms
            return self._homs[a, b]

    def dom(self, f: ExMorphism) -> HEqRelation:
        return f.source

    def cod(self, f: ExMorphism) -> HEqRelation:
        return f.target

    def identity(self, a: HEqRelation) -> ExMorphism:
        return ExMorphism(a, a, self.base.identity(a.carrier), self.base.identity(a.obj))

    def compose2(self, g: ExMorphism, f: ExMorphism) -> ExMorphism:
        return ExMorphism(
            f.source,
            g.target,
            self.base.compose(g.f, f.f),
            self.base.compose(g.tracking, f.tracking),
            f.strict and g.strict,
        )

    def describe(self, f: Any) -> str:
        return self.base.describe(f.f)

    def describe_object(self, a: Any) -> str:
        base = self.base
        return f"({base.describe_object(a.carrier)}, {base.describe_object(a.obj)}, {base.describe(a.rho)})"

    def related(self, f: Any, g: Any) -> Optional[Any]:
        """Return H: X -> S with σ H = (f, g), up to homotopy when fillers may be loose."""
        key = (f.source, f.target, f.f, g.f)
        with self._lock:
            if key not in self._related:
                self._related[key] = self._search_related(f, g)
            return self._related[key]

    def _search_related(self, f: Any, g: Any) -> Optional[Any]:
        base = self.base
        target = base.pair(f.f, g.f)
        sigma = f.target.rho
        for h in base.lifts(f.source.carrier, sigma, target):
            return h
        if not self.options.strict_fillers:
            for h in base.hom(f.source.carrier, f.target.obj):
                if homotopic(self.ps, base.compose(sigma, h), target) is not None:
                    return h
        return None

    def terminal_relation(self) -> HEqRelation:
        one = self.base.terminal()
        try:
            return identity_relation(self.ps, one)
        except PreconditionError:
            return path_relation(self.ps, one)

    def construct_limit(self, diagram: Diagram) -> Optional[ConeRecord]:
        if not diagram.nodes:
            return ConeRecord(self.terminal_relation())

        if len(diagram.nodes) == 2 and not diagram.edges:
            a, b = diagram.nodes
            pair = self.base.product(a.carrier, b.carrier)
            relation = product_relation(self.ps, a, b)
            return ConeRecord(
                relation,
                (self.morphism(relation, a, pair[0]), self.morphism(relation, b, pair[1])),
            )

        if (maps := _cospan(diagram)) is not None:
            f, g = maps
            a, b, c = diagram.nodes
            cone = self.base.pullback(f.f, g.f)
            relation = pullback_relation(
                self.ps,
                product_relation(self.ps, a, b),
                self.base.pair(cone[0], cone[1]),
            )
            return ConeRecord(
                relation,
                (
                    self.morphism(relation, a, cone[0]),
                    self.morphism(relation, b, cone[1]),
                    self.morphism(relation, c, cone[2]),
                ),
            )

        return find_limit(self, diagram)


class ExStructure(PathCategory):
    """Fibrations carry a weak connection, weak equivalences invert up to ~."""

    category: Ex

    def __init__(self, ex: Ex):
        super().__init__(ex)
        self.ps = ex.ps

    def weak_connection(self, f: ExMorphism) -> Optional[WeakConnection]:
        """Search ∇: X x_Y S -> R with ρ1 ∇ = p1 and f ρ2 ∇ = σ2 p2."""
        base = self.category.base
        a, b = f.source, f.target
        cone = base.pullback(f.f, b.rho1)
        target = base.pair(cone[0], base.compose(b.rho2, cone[1]))
        through = base.pair(a.rho1, base.compose(f.f, a.rho2))
        for nabla in base.lifts(cone.apex, through, target):
            return WeakConnection(nabla, cone[0], cone[1])
        return None

    def is_fibration(self, f: ExMorphism) -> bool:
        return self.ps.is_fibration(f.f) and self.weak_connection(f) is not None

    def homotopy_inverse(self, f: ExMorphism) -> Optional[ExMorphism]:
        ex = self.category
        a, b = f.source, f.target
        for g in ex.hom(b, a):
            if (
                ex.related(ex.compose(f, g), ex.identity(b)) is not None
                and ex.related(ex.compose(g, f), ex.identity(a)) is not None
            ):
                return g
        return None

    def is_weq(self, f: ExMorphism) -> bool:
        return self.homotopy_inverse(f) is not None

    def acyclic_section(self, f: ExMorphism) -> Optional[ExMorphism]:
        """Return a map a with f a = 1 and a f ~ 1, tracked automatically."""
        ex = self.category
        base = ex.base
        for a in base.lifts(f.target.carrier, f.f, base.identity(f.target.carrier)):
            if (found := ex.tracking(f.target, f.source, a)) is None:
                continue
            section = ExMorphism(f.target, f.source, a, *found)
            if ex.related(ex.compose(section, f), ex.identity(f.source)) is not None:
                return section
        return None

    def construct_path_object(self, x: HEqRelation) -> Optional[PathObjectData]:
        ex = self.category
        paths = pullback_relation(self.ps, x, x.rho1)
        s = ex.morphism(paths, x, x.rho1)
        t = ex.morphism(paths, x, x.rho2)
        return PathObjectData(
            x,
            paths,
            ex.morphism(x, paths, x.refl),
            s,
            t,
            ex.pair(s, t),
        )


def build_ex(
    ps: PathCategory,
    carriers: Optional[Sequence[Any]] = None,
    relation_objects: Optional[Sequence[Any]] = None,
    relations: Optional[RelationProvider] = None,
) -> ExStructure:
    return ExStructure(Ex(ps, carriers, relation_objects, relations))


class Hex(Category):
    """Homotopy exact completion: tracked maps modulo ~ with least representatives."""

    def __init__(self, ex: Ex):
        super().__init__(ex.options)
        self.ex = ex
        self.ps = ex.ps
        self.base = ex.base
        self._classes: Dict[Tuple[HEqRelation, HEqRelation], Dict[Any, HexMorphism]] = {}
        self._homs: Dict[Tuple[HEqRelation, HEqRelation], List[HexMorphism]] = {}

    @classmethod
    def of(cls, ps: PathCategory, **kwargs: Any) -> "Hex":
        return cls(Ex(ps, **kwargs))

    def objects(self) -> Sequence[HEqRelation]:
        return self.ex.objects()

    def _partition(self, a: HEqRelation, b: HEqRelation):
        with self._lock:
            if (a, b) in self._homs:
                return
            classes: List[List[ExMorphism]] = []
            for f in self.ex.hom(a, b):
                for members in classes:
                    if self.ex.related(members[0], f) is not None:
                        members.append(f)
                        break
                else:
                    classes.append([f])
            index: Dict[Any, HexMorphism] = {}
            homs = []
            for members in classes:
                head = members[0]
                morphism = HexMorphism(a, b, head.f, head.tracking, self.ex)
                homs.append(morphism)
                for f in members:
                    index[f.f] = morphism
            self._classes[a, b] = index
            self._homs[a, b] = homs

    def hom(self, a: HEqRelation, b: HEqRelation) -> Sequence[HexMorphism]:
        self._partition(a, b)
        return self._homs[a, b]

    def canonical(
        self,
        a: HEqRelation,
        b: HEqRelation,
        f: Any,
        tracking: Optional[Any] = None,
    ) -> HexMorphism:
        """Return the class of the tracked map f.

        The class is named by its least member once the hom-set has been
        enumerated, and by f itself otherwise.
        """
        with self._lock:
            index = self._classes.get((a, b))
        if index is not None:
            if f in index:
                return index[f]
            tracking = None
        elif tracking is None and (found := self.ex.tracking(a, b, f)) is not None:
            tracking = found[0]
        if tracking is None:
            msg = f"{self.base.describe(f)} has no tracking from {self.describe_object(a)} to {self.describe_object(b)}."
            raise PreconditionError(msg)
        return HexMorphism(a, b, f, tracking, self.ex)

    def dom(self, f: HexMorphism) -> HEqRelation:
        return f.source

    def cod(self, f: HexMorphism) -> HEqRelation:
        return f.target

    def identity(self, a: HEqRelation) -> HexMorphism:
        base = self.base
        return self.canonical(a, a, base.identity(a.carrier), base.identity(a.obj))

    def compose2(self, g: HexMorphism, f: HexMorphism) -> HexMorphism:
        base = self.base
        return self.canonical(
            f.source,
            g.target,
            base.compose(g.f, f.f),
            base.compose(g.tracking, f.tracking),
        )

    def describe(self, f: Any) -> str:
        return f"[{self.base.describe(f.f)}]"

    def describe_object(self, a: Any) -> str:
        return self.ex.describe_object(a)

    def construct_limit(self, diagram: Diagram) -> Optional[ConeRecord]:
        ps, base = self.ps, self.base

        if not diagram.nodes:
            return ConeRecord(self.ex.terminal_relation())

        if len(diagram.nodes) == 2 and not diagram.edges:
            a, b = diagram.nodes
            pair = base.product(a.carrier, b.carrier)
            relation = product_relation(ps, a, b)
            return ConeRecord(
                relation,
                (
                    self.canonical(relation, a, pair[0]),
                    self.canonical(relation, b, pair[1]),
                ),
            )

        if (maps := _cospan(diagram)) is not None:
            f, g = maps
            y, z, x = diagram.nodes
            pair = base.product(y.carrier, z.carrier)
            cone = base.pullback(base.product_map(f.f, g.f), x.rho)
            relation = pullback_relation(ps, product_relation(ps, y, z), cone[0])
            first = base.compose(pair[0], cone[0])
            second = base.compose(pair[1], cone[0])
            return ConeRecord(
                relation,
                (
                    self.canonical(relation, y, first),
                    self.canonical(relation, z, second),
                    self.canonical(relation, x, base.compose(f.f, first)),
                ),
            )

        return find_limit(self, diagram)

    def mediate(self, diagram: Diagram, limit: ConeRecord, cone: ConeRecord) -> HexMorphism:
        """Build the mediating map on carriers for the limits constructed above."""
        base = self.base
        c = cone.apex

        if not diagram.nodes:
            return self.canonical(c, limit.apex, base.terminal_map(c.carrier))

        if len(diagram.nodes) == 2 and not diagram.edges:
            return self.canonical(c, limit.apex, base.pair(cone[0].f, cone[1].f))

        if (maps := _cospan(diagram)) is not None:
            f, g = maps
            x = diagram.nodes[2]
            u, v = cone[0].f, cone[1].f
            target = base.pair(base.compose(f.f, u), base.compose(g.f, v))
            h = next(base.lifts(c.carrier, x.rho, target), None)
            if h is not None:
                m = base.pullback_pair(base.product_map(f.f, g.f), x.rho, base.pair(u, v), h)
                return self.canonical(c, limit.apex, m)
            if self.options.strict_fillers:
                raise PreconditionError("The cone does not factor through the limit.")

        return super().mediate(diagram, limit, cone)

    def inverse(self, f: HexMorphism) -> Optional[HexMorphism]:
        """Invert a map that is both mono and a cover through its cover section."""
        if not is_mono(self, f) or (found := cover_section(self, f)) is None:
            return None
        try:
            return self.canonical(f.target, f.source, found[0])
        except PreconditionError:
            return None

    def initial(self) -> Optional[HEqRelation]:
        if (zero := self.base.initial()) is None:
            return None
        return path_relation(self.ps, zero)

    def sum(self, a: HEqRelation, b: HEqRelation) -> Optional[SumData]:
        return hex_sum(self, a, b)

    def exponential(self, x: HEqRelation, y: HEqRelation) -> Optional["Exponential"]:
        from .exponential import hex_exponential

        return hex_exponential(self, x, y).exponential


def hex_hom(hex: Hex, a: HEqRelation, b: HEqRelation) -> Sequence[HexMorphism]:
    return hex.hom(a, b)


def hex_limits(hex: Hex, request: str, *maps: Any) -> ConeRecord:
    """Return the terminal object, a product, a pullback or an equalizer with its cone."""
    if request == "terminal":
        return hex.require_limit(Diagram(), "terminal object")
    if request == "product":
        return hex.product(*maps)
    if request == "pullback":
        return hex.pullback(*maps)
    if request == "equalizer":
        f, g = maps
        cone = hex.pullback(hex.pair(f, g), hex.diagonal(hex.cod(f)))
        return ConeRecord(cone.apex, (cone[0],))
    raise PreconditionError(f"Unknown limit request {request!r}.")


@dataclass(frozen=True)
class ImageFactorization:
    image: HEqRelation
    cover: HexMorphism
    mono: HexMorphism


def image_factorization(hex: Hex, f: HexMorphism) -> ImageFactorization:
    """Factor f as 1: (X, R) -> (X, f*S) followed by f: (X, f*S) -> (Y, S)."""
    image = pullback_relation(hex.ps, f.target, f.f)
    x = f.source.carrier
    return ImageFactorization(
        image,
        hex.canonical(f.source, image, hex.base.identity(x)),
        hex.canonical(image, f.target, f.f),
    )


def cover_section(hex: Hex, f: HexMorphism) -> Optional[Tuple[Any, Any]]:
    """Return g: Y -> X and h: Y -> S with σ h = (1, f g), found as one lift of
    the identity of Y through S x_Y X."""
    base = hex.base
    s = f.target
    cone = base.pullback(s.rho2, f.f)
    q = base.compose(s.rho1, cone[0])
    e = next(base.lifts(s.carrier, q, base.identity(s.carrier)), None)
    if e is None:
        return None
    return base.compose(cone[1], e), base.compose(cone[0], e)


def is_cover(hex: Hex, f: HexMorphism) -> bool:
    return cover_section(hex, f) is not None


def is_mono(hex: Hex, f: HexMorphism) -> bool:
    """Search h: f*S -> R over X x X."""
    pulled = pullback_relation(hex.ps, f.target, f.f)
    return next(hex.base.lifts(pulled.obj, f.source.rho, pulled.rho), None) is not None


@dataclass(frozen=True)
class Quotient:
    relation: HEqRelation
    cover: HexMorphism
    kernel: HEqRelation
    kernel_iso: Optional[HexMorphism]

    @property
    def kernel_matches(self) -> bool:
        return self.kernel_iso is not None


def quotient_eqrel(hex: Hex, a: HEqRelation, f: Any) -> Quotient:
    """Quotient (X, R) by the relation f: Y -> X x X, normalized to a fibration.

    The quotient relation is R x_X Y x_X R -> X x X and the cover is the
    identity of X. The kernel pair of the cover is compared with (Y, f*(R x R)).
    """
    ps, base = hex.ps, hex.base
    if not ps.is_fibration(f):
        f = factorize(ps, f).p
    x = a.carrier
    checked = is_heq_relation(ps, x, f)
    if checked.relation is None:
        failed = ", ".join(checked.failed)
        msg = f"{base.describe(f)} is not a relation on {base.describe_object(x)}, it fails {failed}."
        raise PreconditionError(msg)
    square = base.product(x, x)
    f1 = base.compose(square[0], f)
    f2 = base.compose(square[1], f)
    y = base.dom(f)

    chain = base.require_limit(
        Diagram(
            (a.obj, y, a.obj, x, x),
            ((0, 3, a.rho2), (1, 3, f1), (1, 4, f2), (2, 4, a.rho1)),
        ),
        "relation composite",
    )
    tau = base.pair(base.compose(a.rho1, chain[0]), base.compose(a.rho2, chain[2]))
    verdict = is_heq_relation(ps, x, tau)
    if verdict.relation is None:
        raise PreconditionError(f"The quotient relation fails {', '.join(verdict.failed)}.")
    relation = verdict.relation

    cover = hex.canonical(a, relation, base.identity(x))
    kernel = hex.pullback(cover, cover)
    given = pullback_relation(ps, product_relation(ps, a, a), f)
    first = hex.canonical(given, a, f1)
    second = hex.canonical(given, a, f2)

    try:
        m = hex.pullback_pair(cover, cover, first, second)
    except PreconditionError:
        m = None
    kernel_iso = m if m is not None and hex.is_iso(m) else None

    return Quotient(relation, cover, given, kernel_iso)


def embed_i(hex: Hex) -> Functor:
    """Send X to (X, PX) and a map to its class."""
    ps = hex.ps
    return Functor(
        source=ps.category,
        target=hex,
        on_objects=lambda x: path_relation(ps, x),
        on_morphisms=lambda f: hex.canonical(
            path_relation(ps, ps.category.dom(f)),
            path_relation(ps, ps.category.cod(f)),
            f,
        ),
    )


@dataclass
class SubobjectPoset:
    """Subobjects of i(X) computed from monos and from the slice preorder."""

    direct: List[HexMorphism]
    direct_order: List[Tuple[int, int]]
    reflection: List[Any]
    reflection_order: List[Tuple[int, int]]
    agree: bool


def _poset(elements: List[Any], below: Callable[[Any, Any], bool]) -> Tuple[List[Any], List[Tuple[int, int]]]:
    classes: List[Any] = []
    for e in elements:
        if not any(below(e, c) and below(c, e) for c in classes):
            classes.append(e)
    order = [
        (i, j)
        for i, c in enumerate(classes)
        for j, d in enumerate(classes)
        if below(c, d)
    ]
    return classes, order


def subobject_poset(hex: Hex, x: Any) -> SubobjectPoset:
    ps, base = hex.ps, hex.base
    target = path_relation(ps, x)

    def factors(m: HexMorphism, n: HexMorphism) -> bool:
        return any(hex.compose(n, k) == m for k in hex.hom(m.source, n.source))

    monos = [
        m
        for a in hex.objects()
        for m in hex.hom(a, target)
        if is_mono(hex, m)
    ]
    direct, direct_order = _poset(monos, factors)

    def over(p: Any, q: Any) -> bool:
        return next(base.lifts(base.dom(p), q, p), None) is not None

    reflection, reflection_order = _poset(list(ps.fibrations_into(x)), over)

    images = []
    for p in reflection:
        m = hex.canonical(pullback_relation(ps, target, p), target, p)
        images.append(next((i for i, d in enumerate(direct) if factors(m, d) and factors(d, m)), None))

    agree = (
        None not in images
        and sorted(images) == list(range(len(direct)))
        and sorted((images[i], images[j]) for i, j in reflection_order) == sorted(direct_order)
    )
    return SubobjectPoset(direct, direct_order, reflection, reflection_order, agree)


@dataclass(frozen=True)
class PseudoReplacement:
    """Fibrant replacement of a pseudo-equivalence relation.

    `forward` and `backward` track the identity of X both ways, the second one
    up to homotopy.
    """

    pseudo: PseudoEqRelation
    relation: HEqRelation
    forward: Any
    backward: Any


def pseudo_to_heq(ps: PathCategory, pseudo: PseudoEqRelation) -> PseudoReplacement:
    cat = ps.category
    if ps.is_fibration(pseudo.f):
        verdict = is_heq_relation(ps, pseudo.carrier, pseudo.f)
        if verdict.relation is not None:
            identity = cat.identity(pseudo.obj)
            return PseudoReplacement(pseudo, verdict.relation, identity, identity)

    fact = factorize(ps, pseudo.f)
    verdict = is_heq_relation(ps, pseudo.carrier, fact.p)
    if verdict.relation is None:
        raise PreconditionError(f"The fibrant replacement fails {', '.join(verdict.failed)}.")
    logger.debug("Replaced %s by a fibration.", cat.describe(pseudo.f))
    return PseudoReplacement(pseudo, verdict.relation, fact.w, fact.p1)


def hex_sum(hex: Hex, a: HEqRelation, b: HEqRelation) -> SumData:
    """Return (X + Y, R + S) with the relation copaired into (X + Y) x (X + Y)."""
    ps, base = hex.ps, hex.base
    carriers = base.sum(a.carrier, b.carrier) or search_sum(ps, a.carrier, b.carrier)
    relations = base.sum(a.obj, b.obj) or search_sum(ps, a.obj, b.obj)
    if carriers is None or relations is None:
        raise PreconditionError("The base category has no sums for these objects.")

    left = base.compose(base.product_map(carriers.inl, carriers.inl), a.rho)
    right = base.compose(base.product_map(carriers.inr, carriers.inr), b.rho)
    rho = relations.copair(left, right) if relations.copair else None
    if rho is None:
        raise PreconditionError("The relation sum has no copairing.")

    verdict = is_heq_relation(ps, carriers.obj, rho)
    if verdict.relation is None:
        raise PreconditionError(f"The sum relation fails {', '.join(verdict.failed)}.")
    total = verdict.relation
    return SumData(
        left=a,
        right=b,
        obj=total,
        inl=hex.canonical(a, total, carriers.inl),
        inr=hex.canonical(b, total, carriers.inr),
    )


def check_pretopos(hex: Hex, objects: Optional[Iterable[Any]] = None) -> ExtensiveVerdict:
    """Check the initial object, sums, disjointness and stability in Hex."""
    return check_extensive(TrivialStructure(hex), objects)
