__all__ = [
    "TTransport",
    "StabilityReport",
    "SliceComparison",
    "all_t_transports",
    "t_transport",
    "transports_related",
    "preserves_equivalence",
    "stability",
    "slice_rho",
    "slice_lambda",
    "slice_comparison",
    "check_lambda_rho",
]


import logging
from dataclasses import dataclass
from typing import Any, Iterator, Optional, Tuple

from .completion import Hex, HexMorphism
from .error import PreconditionError
from .path import FactorizationData, SliceMorphism, SliceObject, SliceStructure, factorize
from .relation import HEqRelation, is_heq_relation, path_relation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TTransport:
    """Class representing a transport Γ: Y x_X PX -> Y relative to a relation T.

    `witness` is L: Y -> T with τ L = (1, Γ (1, r f)).
    """

    relation: HEqRelation
    gamma: Any
    witness: Any
    factorization: FactorizationData


@dataclass
class StabilityReport:
    relation: HEqRelation
    transport: TTransport
    stable: bool
    loop: Optional[str] = None
    unique: bool = True
    preserves: bool = True


@dataclass(frozen=True)
class SliceComparison:
    relation: HEqRelation
    reflected: HEqRelation
    over: HexMorphism
    restored: HEqRelation
    restored_iso: bool


def _structure(hex_x: Hex) -> SliceStructure:
    if not isinstance(hex_x.ps, SliceStructure):
        raise PreconditionError("Stability is defined for relations over a slice.")
    return hex_x.ps


def _parts(hex_x: Hex, t: HEqRelation):
    structure = _structure(hex_x)
    ps = structure.ps
    cat = ps.category
    carrier: SliceObject = t.carrier
    f = carrier.fib
    if not ps.is_fibration(f):
        raise PreconditionError(f"{cat.describe(f)} is not a fibration.")
    return ps, cat, carrier.obj, f, t.rho.mor, cat.pullback(f, f)


def all_t_transports(hex_x: Hex, t: HEqRelation) -> Iterator[TTransport]:
    """Yield every Γ with f Γ = t p2 that comes with a witness L."""
    ps, cat, y, f, tau, _ = _parts(hex_x, t)
    fact = factorize(ps, f)
    identity = cat.identity(y)
    for gamma in cat.lifts(fact.obj, f, fact.p):
        target = cat.pullback_pair(f, f, identity, cat.compose(gamma, fact.w))
        witness = next(cat.lifts(y, tau, target), None)
        if witness is not None:
            yield TTransport(t, gamma, witness, fact)


def t_transport(hex_x: Hex, t: HEqRelation) -> TTransport:
    for transport in all_t_transports(hex_x, t):
        return transport
    raise PreconditionError("No transport relative to the relation.")


def transports_related(hex_x: Hex, first: TTransport, second: TTransport) -> Optional[Any]:
    """Search H: Y x_X PX -> T with τ H = (Γ, Γ')."""
    _, cat, _, f, tau, _ = _parts(hex_x, first.relation)
    target = cat.pullback_pair(f, f, first.gamma, second.gamma)
    return next(cat.lifts(first.factorization.obj, tau, target), None)


def preserves_equivalence(hex_x: Hex, transport: TTransport) -> Optional[Any]:
    """Search H: T x_X PX -> T with τ1 H = Γ(τ1 p1, p2) and τ2 H = Γ(τ2 p1, p2)."""
    _, cat, _, f, tau, square = _parts(hex_x, transport.relation)
    fact = transport.factorization
    path = fact.path
    tau1 = cat.compose(square[0], tau)
    tau2 = cat.compose(square[1], tau)
    cone = cat.pullback(cat.compose(f, tau1), path.s)

    def moved(leg: Any) -> Any:
        into = cat.pullback_pair(f, path.s, cat.compose(leg, cone[0]), cone[1])
        return cat.compose(transport.gamma, into)

    target = cat.pullback_pair(f, f, moved(tau1), moved(tau2))
    return next(cat.lifts(cone.apex, tau, target), None)


def stability(hex_x: Hex, t: HEqRelation) -> StabilityReport:
    """Decide whether every loop acts trivially on the fibres up to T."""
    ps, cat, _, f, tau, _ = _parts(hex_x, t)
    transport = t_transport(hex_x, t)
    fact = transport.factorization
    path = fact.path
    x = cat.cod(f)

    loops = cat.pullback(path.pairing, cat.diagonal(x))
    loop = loops[0]
    cone = cat.pullback(f, cat.compose(path.s, loop))
    start = cone[0]
    moved = cat.compose(
        transport.gamma,
        cat.pullback_pair(f, path.s, start, cat.compose(loop, cone[1])),
    )
    target = cat.pullback_pair(f, f, moved, start)
    stable = next(cat.lifts(cone.apex, tau, target), None) is not None

    report = StabilityReport(t, transport, stable)
    if not stable:
        one = cat.terminal()
        for u in cat.hom(one, cone.apex):
            if next(cat.lifts(one, tau, cat.compose(target, u)), None) is None:
                report.loop = (
                    f"{cat.describe(cat.compose(loop, cone[1], u))} "
                    f"at {cat.describe(cat.compose(start, u))}"
                )
                break
        logger.info("Relation over %s is unstable: %s.", cat.describe(f), report.loop)

    transports = list(all_t_transports(hex_x, t))
    report.unique = all(
        transports_related(hex_x, transport, other) is not None for other in transports
    )
    report.preserves = preserves_equivalence(hex_x, transport) is not None
    return report


def slice_rho(hex_x: Hex, s: HEqRelation, f: Any) -> HEqRelation:
    """Restrict S on Y to the relation T on the fibration f: Y -> X."""
    structure = _structure(hex_x)
    ps = structure.ps
    cat = ps.category
    if not ps.is_fibration(f):
        raise PreconditionError(f"{cat.describe(f)} is not a fibration.")

    square = cat.pullback(f, f)
    cone = cat.pullback(cat.pair(square[0], square[1]), s.rho)
    carrier = SliceObject(s.carrier, f)
    product = structure.category.product(carrier, carrier)
    obj = SliceObject(cone.apex, cat.compose(square[2], cone[0]))
    verdict = is_heq_relation(structure, carrier, SliceMorphism(obj, product.apex, cone[0]))
    if verdict.relation is None:
        raise PreconditionError(f"The restricted relation fails {', '.join(verdict.failed)}.")
    return verdict.relation


def slice_lambda(hex: Hex, hex_x: Hex, t: HEqRelation) -> Tuple[HEqRelation, HexMorphism]:
    """Push T forward along Y x_X Y -> Y x Y, replaced by a fibration."""
    ps, cat, y, f, tau, square = _parts(hex_x, t)
    fact = factorize(ps, cat.compose(cat.pair(square[0], square[1]), tau))
    verdict = is_heq_relation(ps, y, fact.p)
    if verdict.relation is None:
        raise PreconditionError(f"The pushed forward relation fails {', '.join(verdict.failed)}.")
    relation = verdict.relation
    return relation, hex.canonical(relation, path_relation(ps, cat.cod(f)), f)


def _unit_is_iso(hex: Hex, source: HEqRelation, target: HEqRelation, identity: Any) -> bool:
    try:
        return hex.is_iso(hex.canonical(source, target, identity))
    except PreconditionError:
        return False


def slice_comparison(hex: Hex, hex_x: Hex, t: HEqRelation) -> SliceComparison:
    """Compute λ(T) and ρλ(T), and whether the unit T -> ρλ(T) is an iso."""
    reflected, over = slice_lambda(hex, hex_x, t)
    restored = slice_rho(hex_x, reflected, t.carrier.fib)
    identity = hex_x.base.identity(t.carrier)
    return SliceComparison(t, reflected, over, restored, _unit_is_iso(hex_x, t, restored, identity))


def check_lambda_rho(hex: Hex, hex_x: Hex, s: HEqRelation, f: Any) -> bool:
    """Check that λρ of f: (Y, S) -> i(X) is isomorphic to it over i(X).

    Both relations live on Y, so the comparison is the class of the identity.
    """
    ps = hex.ps
    over = hex.canonical(s, path_relation(ps, ps.category.cod(f)), f)
    reflected, back = slice_lambda(hex, hex_x, slice_rho(hex_x, s, f))
    identity = ps.category.identity(s.carrier)
    if not _unit_is_iso(hex, s, reflected, identity):
        return False
    return hex.compose(back, hex.canonical(s, reflected, identity)) == over
