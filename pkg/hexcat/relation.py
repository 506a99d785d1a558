__all__ = [
    "HEqRelation",
    "PseudoEqRelation",
    "RelationVerdict",
    "is_heq_relation",
    "is_pseudo_eq_relation",
    "identity_relation",
    "path_relation",
    "pullback_relation",
    "intersect_relations",
    "product_relation",
]


import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional

from .error import PreconditionError
from .path import PathCategory, homotopic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HEqRelation:
    """Class representing a homotopy equivalence relation rho: R -> X x X.

    Two relations are equal when they have the same carrier, relation object
    and map, whatever witnesses were found for them.
    """

    carrier: Any
    obj: Any
    rho: Any
    rho1: Any = field(compare=False)
    rho2: Any = field(compare=False)
    refl: Any = field(compare=False)
    sym: Any = field(compare=False)
    trans: Any = field(compare=False)
    q1: Any = field(compare=False)
    q2: Any = field(compare=False)


@dataclass(frozen=True)
class PseudoEqRelation:
    """Any map f: R -> X x X with witnesses holding up to homotopy."""

    carrier: Any
    obj: Any
    f: Any
    refl: Any = field(compare=False)
    sym: Any = field(compare=False)
    trans: Any = field(compare=False)


@dataclass
class RelationVerdict:
    rho: Any
    relation: Optional[HEqRelation] = None
    failed: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.relation is not None


def is_heq_relation(ps: PathCategory, x: Any, rho: Any) -> RelationVerdict:
    """Search reflexivity, symmetry and transitivity witnesses for rho: R -> X x X."""
    cat = ps.category
    verdict = RelationVerdict(rho)
    square = cat.product(x, x)
    if cat.cod(rho) != square.apex:
        raise PreconditionError(f"{cat.describe(rho)} is not a relation on {cat.describe_object(x)}.")

    r = cat.dom(rho)
    rho1 = cat.compose(square[0], rho)
    rho2 = cat.compose(square[1], rho)

    if not ps.is_fibration(rho):
        verdict.failed.append("fibration")

    refl = next(cat.lifts(x, rho, cat.diagonal(x)), None)
    if refl is None:
        verdict.failed.append("reflexivity")

    sym = next(cat.lifts(r, rho, cat.pair(rho2, rho1)), None)
    if sym is None:
        verdict.failed.append("symmetry")

    chain = cat.pullback(rho2, rho1)
    q1, q2 = chain[0], chain[1]
    target = cat.pair(cat.compose(rho1, q1), cat.compose(rho2, q2))
    trans = next(cat.lifts(chain.apex, rho, target), None)
    if trans is None:
        verdict.failed.append("transitivity")

    if not verdict.failed:
        verdict.relation = HEqRelation(x, r, rho, rho1, rho2, refl, sym, trans, q1, q2)
    else:
        logger.debug("Relation %s fails %s.", cat.describe(rho), ", ".join(verdict.failed))
    return verdict


def _require(ps: PathCategory, x: Any, rho: Any, what: str) -> HEqRelation:
    verdict = is_heq_relation(ps, x, rho)
    if verdict.relation is None:
        msg = f"The {what} on {ps.category.describe_object(x)} fails {', '.join(verdict.failed)}."
        raise PreconditionError(msg)
    return verdict.relation


def identity_relation(ps: PathCategory, x: Any) -> HEqRelation:
    return _require(ps, x, ps.category.diagonal(x), "identity relation")


def path_relation(ps: PathCategory, x: Any) -> HEqRelation:
    """Return the relation (s, t): PX -> X x X given by the chosen path object."""
    return _require(ps, x, ps.path_object(x).pairing, "path relation")


def pullback_relation(ps: PathCategory, relation: HEqRelation, m: Any) -> HEqRelation:
    """Pull the relation back along m x m."""
    cat = ps.category
    z = cat.dom(m)
    cone = cat.pullback(cat.product_map(m, m), relation.rho)
    return _require(ps, z, cone[0], "pulled back relation")


def intersect_relations(ps: PathCategory, first: HEqRelation, second: HEqRelation) -> HEqRelation:
    if first.carrier != second.carrier:
        raise PreconditionError("Relations on different carriers can not be intersected.")
    cat = ps.category
    cone = cat.pullback(first.rho, second.rho)
    return _require(ps, first.carrier, cat.compose(first.rho, cone[0]), "intersection")


def product_relation(ps: PathCategory, first: HEqRelation, second: HEqRelation) -> HEqRelation:
    """Return the relation on X x Y relating pairs componentwise."""
    cat = ps.category
    pair = cat.product(first.carrier, second.carrier)
    return intersect_relations(
        ps,
        pullback_relation(ps, first, pair[0]),
        pullback_relation(ps, second, pair[1]),
    )


def is_pseudo_eq_relation(ps: PathCategory, x: Any, f: Any) -> Optional[PseudoEqRelation]:
    """Search witnesses for f: R -> X x X satisfying the relation laws up to homotopy."""
    cat = ps.category
    square = cat.product(x, x)
    r = cat.dom(f)
    f1 = cat.compose(square[0], f)
    f2 = cat.compose(square[1], f)

    def up_to_homotopy(source: Any, target: Any) -> Optional[Any]:
        for candidate in cat.hom(source, r):
            if homotopic(ps, cat.compose(f, candidate), target) is not None:
                return candidate
        return None

    if (refl := up_to_homotopy(x, cat.diagonal(x))) is None:
        return None
    if (sym := up_to_homotopy(r, cat.pair(f2, f1))) is None:
        return None
    chain = cat.pullback(f2, f1)
    target = cat.pair(cat.compose(f1, chain[0]), cat.compose(f2, chain[1]))
    if (trans := up_to_homotopy(chain.apex, target)) is None:
        return None
    return PseudoEqRelation(x, r, f, refl, sym, trans)
