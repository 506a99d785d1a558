__all__ = [
    "SumData",
    "InitialVerdict",
    "SumVerdict",
    "ExtensiveVerdict",
    "HnnoVerdict",
    "sum_of",
    "copair",
    "check_initial",
    "check_sum",
    "check_extensive",
    "check_hnno_candidate",
    "search_sum",
]


import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, Iterable, List, Optional

from .error import PreconditionError, check_bound
from .path import PathCategory, homotopic, is_homotopy_equivalence, is_homotopy_pullback

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SumData:
    """Class representing a candidate sum A + B with its injections."""

    left: Any
    right: Any
    obj: Any
    inl: Any
    inr: Any
    copair: Optional[Callable[[Any, Any], Any]] = field(default=None, compare=False)


@dataclass
class InitialVerdict:
    obj: Any
    universal: bool
    sections: bool
    counterexample: Optional[str] = None

    @property
    def agree(self) -> bool:
        return self.universal == self.sections

    @property
    def initial(self) -> bool:
        return self.universal and self.sections


@dataclass
class SumVerdict:
    candidate: SumData
    universal: bool
    sections: bool
    paths: Optional[bool] = None
    counterexample: Optional[str] = None

    @property
    def agree(self) -> bool:
        return self.universal == self.sections

    @property
    def is_sum(self) -> bool:
        return self.universal and self.sections and self.paths is not False


@dataclass
class ExtensiveVerdict:
    """Every extensivity condition with the first counterexample found for it."""

    conditions: Dict[str, bool] = field(default_factory=dict)
    counterexamples: Dict[str, str] = field(default_factory=dict)

    def record(self, name: str, counterexample: Optional[str]):
        self.conditions[name] = counterexample is None
        if counterexample is not None:
            self.counterexamples[name] = counterexample
            logger.info("Extensivity condition %r fails: %s.", name, counterexample)

    def __getitem__(self, name: str) -> bool:
        return self.conditions.get(name, False)

    @property
    def direct(self) -> bool:
        return self["initial"] and self["stable"] and self["disjoint"]

    @property
    def characterization(self) -> bool:
        return self["initial"] and self["injections"] and self["conservative"]

    @property
    def agree(self) -> bool:
        return self.direct == self.characterization

    @property
    def extensive(self) -> bool:
        return self.direct


@dataclass
class HnnoVerdict:
    universal: bool
    sections: bool
    counterexample: Optional[str] = None

    @property
    def agree(self) -> bool:
        return self.universal == self.sections

    @property
    def hnno(self) -> bool:
        return self.universal and self.sections


def sum_of(ps: PathCategory, a: Any, b: Any, objects: Optional[Iterable[Any]] = None) -> SumData:
    """Return the sum provided by the instance, or search one on the fragment."""
    found = ps.category.sum(a, b) or search_sum(ps, a, b, objects)
    if found is None:
        cat = ps.category
        msg = f"No sum of {cat.describe_object(a)} and {cat.describe_object(b)}."
        raise PreconditionError(msg)
    return found


def copair(ps: PathCategory, data: SumData, f: Any, g: Any) -> Any:
    """Return h: A + B -> X with h i_A = f and h i_B = g, up to homotopy if need be."""
    if data.copair is not None:
        return data.copair(f, g)
    cat = ps.category
    maps = list(cat.hom(data.obj, cat.cod(f)))
    for h in maps:
        if cat.compose(h, data.inl) == f and cat.compose(h, data.inr) == g:
            return h
    for h in maps:
        if (
            homotopic(ps, cat.compose(h, data.inl), f) is not None
            and homotopic(ps, cat.compose(h, data.inr), g) is not None
        ):
            return h
    raise PreconditionError("The maps have no copairing.")


def check_initial(ps: PathCategory, z: Any, objects: Optional[Iterable[Any]] = None) -> InitialVerdict:
    """Check that z is homotopy initial, directly and through sections of fibrations into it."""
    cat = ps.category
    objects = list(cat.objects() if objects is None else objects)
    counterexample = None

    universal = True
    for y in objects:
        maps = list(cat.hom(z, y))
        if not maps:
            counterexample = counterexample or f"no map to {cat.describe_object(y)}"
            universal = False
        elif any(homotopic(ps, f, maps[0]) is None for f in maps[1:]):
            counterexample = counterexample or f"maps to {cat.describe_object(y)} are not homotopic"
            universal = False

    sections = True
    for p in ps.fibrations_into(z, objects):
        if next(cat.lifts(z, p, cat.identity(z)), None) is None:
            counterexample = counterexample or f"{cat.describe(p)} has no section"
            sections = False

    verdict = InitialVerdict(z, universal, sections, counterexample)
    if not verdict.agree:
        logger.warning("Characterizations of initiality disagree on %s.", cat.describe_object(z))
    return verdict


def _universal_sum(ps: PathCategory, data: SumData, objects: List[Any]) -> Optional[str]:
    cat = ps.category
    for x in objects:
        candidates = list(cat.hom(data.obj, x))
        for f, g in product(cat.hom(data.left, x), cat.hom(data.right, x)):
            mediators = [
                h
                for h in candidates
                if homotopic(ps, cat.compose(h, data.inl), f) is not None
                and homotopic(ps, cat.compose(h, data.inr), g) is not None
            ]
            if not mediators:
                return f"no map induced by ({cat.describe(f)}, {cat.describe(g)})"
            if any(homotopic(ps, h, mediators[0]) is None for h in mediators[1:]):
                return f"induced maps of ({cat.describe(f)}, {cat.describe(g)}) are not homotopic"
    return None


def _section_sum(ps: PathCategory, data: SumData, objects: List[Any]) -> Optional[str]:
    cat = ps.category
    s = data.obj
    for p in ps.fibrations_into(s, objects):
        c = cat.dom(p)
        sections = list(cat.lifts(s, p, cat.identity(s)))
        for a, b in product(
            list(cat.lifts(data.left, p, data.inl)),
            list(cat.lifts(data.right, p, data.inr)),
        ):
            if not any(
                homotopic(ps, cat.compose(sigma, data.inl), a) is not None
                and homotopic(ps, cat.compose(sigma, data.inr), b) is not None
                for sigma in sections
            ):
                return f"{cat.describe(p)} from {cat.describe_object(c)} has no section through ({cat.describe(a)}, {cat.describe(b)})"
    return None


def _paths_of_sum(ps: PathCategory, data: SumData) -> bool:
    cat = ps.category
    first = ps.path_object(data.left)
    second = ps.path_object(data.right)
    paths = sum_of(ps, first.path, second.path)
    total = ps.path_object(data.obj)
    return any(
        is_homotopy_equivalence(ps, m) is not None
        for m in cat.hom(paths.obj, total.path)
    )


def check_sum(
    ps: PathCategory,
    a: Any,
    b: Any,
    candidate: SumData,
    objects: Optional[Iterable[Any]] = None,
    paths: bool = True,
) -> SumVerdict:
    """Check a candidate sum by its universal property and by sections of fibrations."""
    cat = ps.category
    if cat.dom(candidate.inl) != a or cat.dom(candidate.inr) != b:
        raise PreconditionError("The injections do not start at the summands.")
    objects = list(cat.objects() if objects is None else objects)

    universal = _universal_sum(ps, candidate, objects)
    sections = _section_sum(ps, candidate, objects + [candidate.obj])
    verdict = SumVerdict(
        candidate,
        universal is None,
        sections is None,
        _paths_of_sum(ps, candidate) if paths else None,
        universal or sections,
    )
    if not verdict.agree:
        logger.warning("Characterizations of the sum %s disagree.", cat.describe_object(candidate.obj))
    return verdict


def search_sum(
    ps: PathCategory,
    a: Any,
    b: Any,
    objects: Optional[Iterable[Any]] = None,
) -> Optional[SumData]:
    """Scan the fragment for an object with injections satisfying the universal property."""
    cat = ps.category
    objects = list(cat.objects() if objects is None else objects)
    count = sum(len(cat.hom(a, s)) * len(cat.hom(b, s)) for s in objects)
    check_bound("sum candidates", count, cat.bound)
    for s in objects:
        for inl, inr in product(cat.hom(a, s), cat.hom(b, s)):
            candidate = SumData(a, b, s, inl, inr)
            if _universal_sum(ps, candidate, objects) is None:
                logger.debug("Found sum of %s and %s.", cat.describe_object(a), cat.describe_object(b))
                return candidate
    return None


def _initial(ps: PathCategory, objects: List[Any]) -> Optional[Any]:
    zero = ps.category.initial()
    if zero is not None:
        return zero
    for z in objects:
        if check_initial(ps, z, objects).initial:
            return z
    return None


def check_extensive(ps: PathCategory, objects: Optional[Iterable[Any]] = None) -> ExtensiveVerdict:
    """Check stability and disjointness of sums, directly and through the
    injection squares and conservativity, together with the distributive law,
    strictness of the initial object and sums of homotopy pullbacks.
    """
    cat = ps.category
    objects = list(cat.objects() if objects is None else objects)
    d, do = cat.describe, cat.describe_object
    verdict = ExtensiveVerdict()

    zero = _initial(ps, objects)
    if zero is None:
        verdict.record("initial", "no homotopy initial object")
        return verdict
    verdict.record("initial", None if check_initial(ps, zero, objects).initial else do(zero))

    sums = {(a, b): sum_of(ps, a, b, objects) for a, b in product(objects, repeat=2)}

    def empty_map(x: Any) -> Any:
        return next(iter(cat.hom(zero, x)))

    found = None
    for (a, b), data in sums.items():
        if found is None and is_homotopy_pullback(ps, empty_map(a), empty_map(b), data.inl, data.inr) is None:
            found = f"{do(a)} + {do(b)}"
    verdict.record("disjoint", found)

    found = None
    for (a, b), data in sums.items():
        for p in ps.fibrations_into(data.obj, objects + [data.obj]):
            left = cat.pullback(data.inl, p)
            right = cat.pullback(data.inr, p)
            top = SumData(left.apex, right.apex, cat.dom(p), left[1], right[1])
            if found is None and _universal_sum(ps, top, objects) is not None:
                found = f"{d(p)} over {do(a)} + {do(b)}"
    verdict.record("stable", found)

    found = None
    for (a, b), data in sums.items():
        for c, e in product(objects, repeat=2):
            inner = sum_of(ps, c, e, objects)
            for f, g in product(cat.hom(c, a), cat.hom(e, b)):
                both = copair(ps, inner, cat.compose(data.inl, f), cat.compose(data.inr, g))
                if found is not None:
                    break
                if (
                    is_homotopy_pullback(ps, f, inner.inl, data.inl, both) is None
                    or is_homotopy_pullback(ps, g, inner.inr, data.inr, both) is None
                ):
                    found = f"{d(f)} + {d(g)}"
    verdict.record("injections", found)

    found = None
    for (a, b), data in sums.items():
        fibrations = list(ps.fibrations_into(data.obj, objects + [data.obj]))
        for p, q in product(fibrations, repeat=2):
            for f in cat.lifts(cat.dom(p), q, p):
                if found is not None or is_homotopy_equivalence(ps, f) is not None:
                    continue
                restricted = []
                for inj in (data.inl, data.inr):
                    source = cat.pullback(inj, p)
                    restricted.append(
                        cat.pullback_pair(inj, q, source[0], cat.compose(f, source[1]))
                    )
                if all(is_homotopy_equivalence(ps, m) is not None for m in restricted):
                    found = f"{d(f)} over {do(a)} + {do(b)}"
    verdict.record("conservative", found)

    found = None
    for x in objects:
        for (a, b), data in sums.items():
            xa, xb = cat.product(x, a), cat.product(x, b)
            parts = sum_of(ps, xa.apex, xb.apex, objects)
            into = copair(
                ps,
                parts,
                cat.product_map(cat.identity(x), data.inl),
                cat.product_map(cat.identity(x), data.inr),
            )
            if found is None and is_homotopy_equivalence(ps, into) is None:
                found = f"{do(x)} x ({do(a)} + {do(b)})"
    verdict.record("distributive", found)

    found = None
    for x in objects:
        for f in cat.hom(x, zero):
            if found is None and is_homotopy_equivalence(ps, f) is None:
                found = d(f)
    verdict.record("strict initial", found)

    found = None
    for x in objects:
        if found is None and is_homotopy_equivalence(ps, sum_of(ps, zero, x, objects).inr) is None:
            found = do(x)
    verdict.record("unit", found)

    found = None
    for (a, b), data in sums.items():
        for p in ps.fibrations_into(a, objects):
            for a2 in objects:
                for m in cat.hom(a2, a):
                    if found is not None:
                        break
                    cone = cat.pullback(m, p)
                    base = sum_of(ps, a2, b, objects)
                    top = sum_of(ps, cone.apex, b, objects)
                    total = sum_of(ps, cat.dom(p), b, objects)
                    down = copair(ps, top, cat.compose(base.inl, cone[0]), base.inr)
                    across = copair(ps, top, cat.compose(total.inl, cone[1]), total.inr)
                    right = copair(ps, total, cat.compose(data.inl, p), data.inr)
                    bottom = copair(ps, base, cat.compose(data.inl, m), data.inr)
                    if is_homotopy_pullback(ps, down, across, bottom, right) is None:
                        found = f"{d(p)} along {d(m)} beside {do(b)}"
    verdict.record("sums of pullbacks", found)

    if not verdict.agree:
        logger.warning("The two characterizations of extensivity disagree.")
    return verdict


def check_hnno_candidate(
    ps: PathCategory,
    n: Any,
    zero: Any,
    succ: Any,
    objects: Optional[Iterable[Any]] = None,
) -> HnnoVerdict:
    """Check (N, 0, σ) against the recursion property and the section property."""
    cat = ps.category
    objects = list(cat.objects() if objects is None else objects)
    one = cat.terminal()
    counterexample = None

    universal = True
    for y in objects:
        if not universal:
            break
        candidates = list(cat.hom(n, y))
        for y0, g in product(cat.hom(one, y), cat.hom(y, y)):
            solutions = [
                h
                for h in candidates
                if homotopic(ps, cat.compose(h, zero), y0) is not None
                and homotopic(ps, cat.compose(h, succ), cat.compose(g, h)) is not None
            ]
            if not solutions or any(homotopic(ps, h, solutions[0]) is None for h in solutions[1:]):
                universal = False
                counterexample = f"({cat.describe(y0)}, {cat.describe(g)})"
                break

    sections = True
    for p in ps.fibrations_into(n, objects):
        x = cat.dom(p)
        candidates = list(cat.lifts(n, p, cat.identity(n)))
        steps = [f for f in cat.hom(x, x) if cat.compose(p, f) == cat.compose(succ, p)]
        for x0, f in product(list(cat.lifts(one, p, zero)), steps):
            if not any(
                homotopic(ps, cat.compose(a, zero), x0) is not None
                and homotopic(ps, cat.compose(a, succ), cat.compose(f, a)) is not None
                for a in candidates
            ):
                sections = False
                counterexample = counterexample or f"{cat.describe(p)} with ({cat.describe(x0)}, {cat.describe(f)})"
                break

    verdict = HnnoVerdict(universal, sections, counterexample)
    if not verdict.agree:
        logger.warning("Characterizations of the natural numbers candidate disagree.")
    return verdict
