__all__ = [
    "Exponential",
    "PiTypeData",
    "FibExponential",
    "ExponentialVerdict",
    "PiVerdict",
    "FunextVerdict",
    "HexExponential",
    "OverExponential",
    "curry",
    "weak_exponential",
    "weak_pi",
    "slice_exponential",
    "slice_pi",
    "product_exponential",
    "fib_exponential",
    "lift_section",
    "funext_check",
    "doubled_exponential",
    "hex_exponential",
    "hex_exponential_over",
]


import logging
from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING, Any, Callable, Iterable, List, Optional, Tuple

from .category import ConeRecord
from .error import PreconditionError, check_bound
from .lifting import strictify
from .path import (
    PathCategory,
    SliceCategory,
    SliceMorphism,
    SliceObject,
    homotopic,
    is_homotopy_equivalence,
    slice,
)
from .relation import HEqRelation, is_heq_relation
from .sums import copair, sum_of

if TYPE_CHECKING:
    from .completion import Hex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Exponential:
    """Class representing a candidate exponential X^Y with ev: X^Y x Y -> X.

    `curry` transposes h: A x Y -> X when the instance knows how to.
    """

    base: Any
    exponent: Any
    obj: Any
    ev: Any
    product: ConeRecord
    curry: Optional[Callable[[Any, Any], Any]] = field(default=None, compare=False)


@dataclass(frozen=True)
class PiTypeData:
    """Class representing a candidate dependent product of f: X -> J along α: J -> I.

    `ev` starts at the pullback of α and the projection Π -> I.
    """

    family: Any
    alpha: Any
    obj: Any
    proj: Any
    ev: Any
    pullback: ConeRecord
    transpose: Optional[Callable[[Any, Any], Any]] = field(default=None, compare=False)


@dataclass
class ExponentialVerdict:
    exponential: Optional[Exponential]
    weak: bool = False
    strong: bool = False
    counterexample: Optional[str] = None


@dataclass
class PiVerdict:
    pi: Optional[PiTypeData]
    weak: bool = False
    strong: bool = False
    counterexample: Optional[str] = None


@dataclass(frozen=True)
class FibExponential:
    """The fibration p^X: Z^X -> Y^X induced by a fibration p: Z -> Y."""

    p: Any
    exponent: Any
    base: Exponential
    total: Exponential
    fibration: Any
    pi: PiTypeData
    square: bool
    quasi_pullback: Optional[bool] = None
    counterexample: Optional[str] = None


@dataclass
class FunextVerdict:
    exponential: Exponential
    paths: FibExponential
    e: Optional[Any]
    strong: bool
    canonical: Optional[bool] = None

    @property
    def agree(self) -> bool:
        return (self.e is not None) == self.strong


@dataclass
class HexExponential:
    exponential: Exponential
    relation: HEqRelation
    universal: Optional[bool] = None
    unique: Optional[bool] = None
    counterexample: Optional[str] = None


@dataclass
class OverExponential:
    result: HexExponential
    stable: Tuple[bool, bool, bool]


def curry(ps: PathCategory, exp: Exponential, a: Any, h: Any) -> Any:
    """Return H: A -> X^Y with ev (H x 1) homotopic to h."""
    cat = ps.category
    identity = cat.identity(exp.exponent)
    if exp.curry is not None:
        return exp.curry(a, h)
    for H in cat.hom(a, exp.obj):
        if homotopic(ps, cat.compose(exp.ev, cat.product_map(H, identity)), h) is not None:
            return H
    raise PreconditionError(f"{cat.describe(h)} has no transpose.")


def _verify_exponential(
    ps: PathCategory,
    exp: Exponential,
    objects: List[Any],
) -> ExponentialVerdict:
    cat = ps.category
    verdict = ExponentialVerdict(exp, weak=True, strong=True)
    identity = cat.identity(exp.exponent)
    for a in objects:
        cone = cat.product(a, exp.exponent)
        candidates = list(cat.hom(a, exp.obj))
        for h in cat.hom(cone.apex, exp.base):
            transposes = [
                H
                for H in candidates
                if homotopic(ps, cat.compose(exp.ev, cat.product_map(H, identity)), h) is not None
            ]
            if not transposes:
                verdict.weak = verdict.strong = False
                verdict.counterexample = f"{cat.describe(h)} has no transpose"
                return verdict
            if verdict.strong and any(homotopic(ps, H, transposes[0]) is None for H in transposes[1:]):
                verdict.strong = False
                verdict.counterexample = f"transposes of {cat.describe(h)} are not homotopic"
    return verdict


def weak_exponential(
    ps: PathCategory,
    x: Any,
    y: Any,
    mode: str = "verify",
    candidate: Optional[Exponential] = None,
    objects: Optional[Iterable[Any]] = None,
) -> ExponentialVerdict:
    """Verify the provided exponential, or search the fragment for one."""
    cat = ps.category
    objects = list(cat.objects() if objects is None else objects)

    if mode == "verify":
        exp = candidate or cat.exponential(x, y)
        if exp is None:
            raise PreconditionError(f"No exponential {cat.describe_object(x)}^{cat.describe_object(y)}.")
        return _verify_exponential(ps, exp, objects)

    if mode != "search":
        raise PreconditionError(f"Unknown exponential mode {mode!r}.")

    count = sum(len(cat.hom(cat.product(e, y).apex, x)) for e in objects)
    check_bound("exponential candidates", count, cat.bound)
    for e in objects:
        cone = cat.product(e, y)
        for ev in cat.hom(cone.apex, x):
            verdict = _verify_exponential(ps, Exponential(x, y, e, ev, cone), objects)
            if verdict.weak:
                logger.debug("Found exponential at %s.", cat.describe_object(e))
                return verdict
    return ExponentialVerdict(None, counterexample="no candidate satisfies the universal property")


def _verify_pi(ps: PathCategory, data: PiTypeData, objects: List[Any]) -> PiVerdict:
    cat = ps.category
    verdict = PiVerdict(data, weak=True, strong=True)
    i = cat.cod(data.alpha)
    for y in objects:
        for g in cat.hom(y, i):
            pulled = cat.pullback(data.alpha, g)
            sections = list(cat.lifts(y, data.proj, g))
            for m in cat.lifts(pulled.apex, data.family, pulled[0]):
                good = []
                for n in sections:
                    through = cat.pullback_pair(
                        data.alpha, data.proj, pulled[0], cat.compose(n, pulled[1])
                    )
                    evaluated = cat.compose(data.ev, through)
                    if homotopic(ps, evaluated, m, base=data.family) is not None:
                        good.append(n)
                if not good:
                    verdict.weak = verdict.strong = False
                    verdict.counterexample = f"{cat.describe(m)} over {cat.describe(g)} has no transpose"
                    return verdict
                if verdict.strong and any(
                    homotopic(ps, n, good[0], base=data.proj) is None for n in good[1:]
                ):
                    verdict.strong = False
                    verdict.counterexample = f"transposes of {cat.describe(m)} are not fibrewise homotopic"
    return verdict


def weak_pi(
    ps: PathCategory,
    f: Any,
    alpha: Any,
    candidate: Optional[PiTypeData] = None,
    objects: Optional[Iterable[Any]] = None,
) -> PiVerdict:
    """Verify the dependent product of f along alpha for every g: Y -> I, searching one if none is given."""
    cat = ps.category
    if not (ps.is_fibration(f) and ps.is_fibration(alpha)):
        raise PreconditionError("Dependent products are taken of fibrations along fibrations.")
    objects = list(cat.objects() if objects is None else objects)

    data = candidate or cat.pi(f, alpha)
    if data is not None:
        return _verify_pi(ps, data, objects)

    i = cat.cod(alpha)
    for proj in ps.fibrations_into(i, objects):
        cone = cat.pullback(alpha, proj)
        for ev in cat.lifts(cone.apex, f, cone[0]):
            verdict = _verify_pi(ps, PiTypeData(f, alpha, cat.dom(proj), proj, ev, cone), objects)
            if verdict.weak:
                logger.debug("Found dependent product over %s.", cat.describe_object(i))
                return verdict
    return PiVerdict(None, counterexample="no candidate satisfies the universal property")


def _pi_of(ps: PathCategory, f: Any, alpha: Any, objects: Optional[Iterable[Any]] = None) -> PiTypeData:
    data = ps.category.pi(f, alpha)
    if data is None:
        data = weak_pi(ps, f, alpha, objects=objects).pi
    if data is None:
        raise PreconditionError(f"No dependent product along {ps.describe(alpha)}.")
    return data


def slice_pi(sc: SliceCategory, f: SliceMorphism, alpha: SliceMorphism) -> Optional[PiTypeData]:
    """Dependent products in a slice, taken in the underlying category."""
    cat = sc.parent
    data = cat.pi(f.mor, alpha.mor)
    if data is None:
        return None
    obj = SliceObject(data.obj, cat.compose(alpha.target.fib, data.proj))
    proj = SliceMorphism(obj, alpha.target, data.proj)
    cone = sc.pullback(alpha, proj)
    through = cat.pullback_pair(alpha.mor, data.proj, cone[0].mor, cone[1].mor)
    ev = SliceMorphism(cone.apex, f.source, cat.compose(data.ev, through))
    return PiTypeData(f, alpha, obj, proj, ev, cone)


def slice_exponential(
    ps: PathCategory,
    p: Any,
    q: Any,
    verify: bool = True,
    objects: Optional[Iterable[Any]] = None,
) -> ExponentialVerdict:
    """Build the exponential of p: X -> I by q: Y -> I in the slice over I
    as the dependent product of the pullback Y x_I X -> Y along q.
    """
    cat = ps.category
    base = cat.cod(p)
    if cat.cod(q) != base:
        raise PreconditionError("Slice exponentials need two fibrations over the same base.")
    structure = slice(ps, base)
    sc = structure.category

    cone = cat.pullback(q, p)
    pi = _pi_of(ps, cone[0], q, objects)
    x = SliceObject(cat.dom(p), p)
    y = SliceObject(cat.dom(q), q)
    obj = SliceObject(pi.obj, pi.proj)
    pair = sc.product(obj, y)
    into = cat.pullback_pair(q, pi.proj, pair[1].mor, pair[0].mor)
    ev = SliceMorphism(pair.apex, x, cat.compose(cone[1], pi.ev, into))
    exp = Exponential(x, y, obj, ev, pair)

    if not verify:
        return ExponentialVerdict(exp)
    return weak_exponential(structure, x, y, candidate=exp)


def product_exponential(ps: PathCategory, exp: Exponential) -> Exponential:
    """Use X^Y x X^Y as an exponential (X x X)^Y."""
    cat = ps.category
    square = cat.product(exp.obj, exp.obj)
    pair = cat.product(square.apex, exp.exponent)
    values = cat.product(exp.base, exp.base)
    ev = cat.pair(
        cat.compose(exp.ev, cat.pair(cat.compose(square[0], pair[0]), pair[1])),
        cat.compose(exp.ev, cat.pair(cat.compose(square[1], pair[0]), pair[1])),
    )

    transpose = None
    if exp.curry is not None:
        inner = exp.curry

        def transpose(a: Any, h: Any) -> Any:
            return cat.pair(
                inner(a, cat.compose(values[0], h)),
                inner(a, cat.compose(values[1], h)),
            )

    return Exponential(values.apex, exp.exponent, square.apex, ev, pair, transpose)


def _quasi_pullback(ps: PathCategory, fib: FibExponential, objects: List[Any]) -> Optional[str]:
    cat = ps.category
    x = fib.exponent
    identity = cat.identity(x)
    z = cat.dom(fib.p)
    for t in objects:
        tx = cat.product(t, x)
        lifts = list(cat.hom(t, fib.total.obj))
        for a, b in product(cat.hom(t, fib.base.obj), cat.hom(tx.apex, z)):
            evaluated = cat.compose(fib.base.ev, cat.product_map(a, identity))
            if homotopic(ps, evaluated, cat.compose(fib.p, b)) is None:
                continue
            if not any(
                homotopic(ps, cat.compose(fib.fibration, c), a) is not None
                and homotopic(ps, cat.compose(fib.total.ev, cat.product_map(c, identity)), b) is not None
                for c in lifts
            ):
                return f"({cat.describe(a)}, {cat.describe(b)})"
    return None


def fib_exponential(
    ps: PathCategory,
    p: Any,
    x: Any,
    base: Optional[Exponential] = None,
    objects: Optional[Iterable[Any]] = None,
    verify: bool = False,
) -> FibExponential:
    """Build Z^X as the dependent product of the pullback of p along ev
    over the projection Y^X x X -> Y^X.
    """
    cat = ps.category
    if not ps.is_fibration(p):
        raise PreconditionError(f"{ps.describe(p)} is not a fibration.")
    y = cat.cod(p)
    base = base or cat.exponential(y, x)
    if base is None:
        raise PreconditionError(f"No exponential {cat.describe_object(y)}^{cat.describe_object(x)}.")

    cone = cat.pullback(base.ev, p)
    projection = base.product[0]
    pi = _pi_of(ps, cone[0], projection, objects)
    pair = cat.product(pi.obj, x)
    identity = cat.identity(x)
    into = cat.pullback_pair(projection, pi.proj, cat.product_map(pi.proj, identity), pair[0])
    ev = cat.compose(cone[1], pi.ev, into)
    total = Exponential(cat.dom(p), x, pi.obj, ev, pair)
    square = cat.compose(base.ev, cat.product_map(pi.proj, identity)) == cat.compose(p, ev)

    fib = FibExponential(p, x, base, total, pi.proj, pi, square)
    if verify:
        found = _quasi_pullback(ps, fib, list(cat.objects() if objects is None else objects))
        fib = FibExponential(p, x, base, total, pi.proj, pi, square, found is None, found)
    return fib


def lift_section(ps: PathCategory, fib: FibExponential, s: Any) -> Optional[Any]:
    """Return a section s^X of p^X with ev (s^X x 1) homotopic to s ev."""
    cat = ps.category
    exponent = fib.base.obj
    identity = cat.identity(fib.exponent)
    target = cat.compose(s, fib.base.ev)

    def commutes(c: Any) -> bool:
        evaluated = cat.compose(fib.total.ev, cat.product_map(c, identity))
        return homotopic(ps, evaluated, target) is not None

    for c in cat.lifts(exponent, fib.fibration, cat.identity(exponent)):
        if commutes(c):
            return c
    for sigma in cat.hom(exponent, fib.total.obj):
        if homotopic(ps, cat.compose(fib.fibration, sigma), cat.identity(exponent)) is None:
            continue
        if commutes(sigma) and (strict := strictify(ps, fib.fibration, sigma, cat.identity(exponent))):
            logger.debug("Strictified a section of %s.", ps.describe(fib.fibration))
            return strict.strict
    return None


def funext_check(
    ps: PathCategory,
    x: Any,
    y: Any,
    exponential: Optional[Exponential] = None,
    objects: Optional[Iterable[Any]] = None,
) -> FunextVerdict:
    """Search e: (PX)^Y -> P(X^Y) with (s, t) e = (s^Y, t^Y) and compare with strength."""
    cat = ps.category
    exp = exponential or cat.exponential(x, y)
    if exp is None:
        raise PreconditionError(f"No exponential {cat.describe_object(x)}^{cat.describe_object(y)}.")
    objects = list(cat.objects() if objects is None else objects)
    strong = weak_exponential(ps, x, y, candidate=exp, objects=objects).strong

    px = ps.path_object(x)
    paths = fib_exponential(ps, px.pairing, y, base=product_exponential(ps, exp), objects=objects)
    path = ps.path_object(exp.obj)
    e = next(cat.lifts(paths.total.obj, path.pairing, paths.fibration), None)

    verdict = FunextVerdict(exp, paths, e, strong)
    if strong and e is not None:
        if weak_exponential(ps, px.path, y, candidate=paths.total, objects=objects).strong:
            comparison = next(cat.lifts(path.path, paths.fibration, path.pairing), None)
            verdict.canonical = comparison is not None and is_homotopy_equivalence(ps, comparison) is not None
    if not verdict.agree:
        logger.warning("Function extensionality and strength disagree.")
    return verdict


def doubled_exponential(
    ps: PathCategory,
    exp: Exponential,
    objects: Optional[Iterable[Any]] = None,
) -> Exponential:
    """Two disjoint copies of X^Y evaluating the same way on each."""
    cat = ps.category
    y = exp.exponent
    identity = cat.identity(y)
    copies = sum_of(ps, exp.obj, exp.obj, objects)
    pair = cat.product(copies.obj, y)
    first = cat.product_map(copies.inl, identity)
    second = cat.product_map(copies.inr, identity)

    parts = sum_of(ps, exp.product.apex, exp.product.apex, objects)
    joined = copair(ps, parts, first, second)
    if (split := cat.inverse(joined)) is not None:
        ev = cat.compose(copair(ps, parts, exp.ev, exp.ev), split)
        return Exponential(exp.base, y, copies.obj, ev, pair)

    for ev in cat.hom(pair.apex, exp.base):
        if cat.compose(ev, first) == exp.ev and cat.compose(ev, second) == exp.ev:
            return Exponential(exp.base, y, copies.obj, ev, pair)
    raise PreconditionError("The doubled exponential has no evaluation map.")


def hex_exponential(
    hex: "Hex",
    a: HEqRelation,
    b: HEqRelation,
    objects: Optional[Iterable[HEqRelation]] = None,
    verify: bool = False,
) -> HexExponential:
    """Build (X, R)^(Y, S) as (W, Q) with W the pullback of R^S over X^Y and
    Q the pullback of R^Y along W x W -> X^Y x X^Y.
    """
    ps, cat = hex.ps, hex.base
    x, y = a.carrier, b.carrier

    def exponential(base: Any, exponent: Any) -> Exponential:
        if (found := cat.exponential(base, exponent)) is None:
            msg = f"No exponential {cat.describe_object(base)}^{cat.describe_object(exponent)}."
            raise PreconditionError(msg)
        return found

    functions = exponential(x, y)
    values = cat.product(x, x)
    arguments = cat.product(y, y)
    pairs = exponential(values.apex, arguments.apex)

    grid = cat.product(functions.obj, arguments.apex)
    epsilon = cat.pair(
        cat.compose(functions.ev, cat.pair(grid[0], cat.compose(arguments[0], grid[1]))),
        cat.compose(functions.ev, cat.pair(grid[0], cat.compose(arguments[1], grid[1]))),
    )
    delta = curry(ps, pairs, functions.obj, epsilon)

    related = exponential(values.apex, b.obj)
    restrict = curry(
        ps,
        related,
        pairs.obj,
        cat.compose(pairs.ev, cat.product_map(cat.identity(pairs.obj), b.rho)),
    )
    tracked = fib_exponential(ps, a.rho, b.obj, base=related)
    w = cat.pullback(cat.compose(restrict, delta), tracked.fibration)
    p = w[0]

    pointwise = fib_exponential(ps, a.rho, y, base=product_exponential(ps, functions))
    q = cat.pullback(cat.product_map(p, p), pointwise.fibration)
    verdict = is_heq_relation(ps, w.apex, q[0])
    if verdict.relation is None:
        raise PreconditionError(f"The exponential relation fails {', '.join(verdict.failed)}.")
    relation = verdict.relation

    pair = hex.product(relation, b)
    ev = hex.canonical(
        pair.apex,
        a,
        cat.compose(functions.ev, cat.product_map(p, cat.identity(y))),
    )
    result = HexExponential(Exponential(a, b, relation, ev, pair), relation)
    if verify:
        _verify_hex_exponential(hex, result, list(hex.objects() if objects is None else objects))
    return result


def _verify_hex_exponential(hex: "Hex", result: HexExponential, objects: List[HEqRelation]):
    exp = result.exponential
    identity = hex.identity(exp.exponent)
    result.universal = result.unique = True
    for c in objects:
        cone = hex.product(c, exp.exponent)
        candidates = list(hex.hom(c, exp.obj))
        for h in hex.hom(cone.apex, exp.base):
            matches = [
                H
                for H in candidates
                if hex.compose(exp.ev, hex.product_map(H, identity)) == h
            ]
            if not matches:
                result.universal = False
                result.counterexample = result.counterexample or f"{hex.describe(h)} has no transpose"
            elif len(matches) > 1:
                result.unique = False
                result.counterexample = result.counterexample or f"{hex.describe(h)} has {len(matches)} transposes"


def hex_exponential_over(
    hex: "Hex",
    a: HEqRelation,
    b: HEqRelation,
    objects: Optional[Iterable[HEqRelation]] = None,
) -> OverExponential:
    """Exponential of two objects of Hex over a slice, with the stability of
    both factors and of the result.
    """
    from .stability import stability

    result = hex_exponential(hex, a, b, objects, verify=True)
    stable = (
        stability(hex, a).stable,
        stability(hex, b).stable,
        stability(hex, result.relation).stable,
    )
    return OverExponential(result, stable)
