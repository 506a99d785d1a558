__all__ = [
    "LiftMode",
    "Lift",
    "TransportData",
    "ConnectionData",
    "Strictified",
    "good_lift",
    "all_lifts",
    "strictify",
    "transport",
    "all_transports",
    "connection",
    "weak_connection",
]


import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, Optional

from .error import PreconditionError
from .path import (
    FactorizationData,
    HomotopyWitness,
    PathCategory,
    PathObjectData,
    factorize,
    homotopic,
)

logger = logging.getLogger(__name__)


class LiftMode(Enum):
    """How closely the upper triangle of a filled square has to commute."""

    LOWER = "lower"
    HOMOTOPY = "homotopy"
    GOOD = "good"


@dataclass(frozen=True)
class Lift:
    filler: Any
    mode: LiftMode
    strict: bool
    witness: Optional[HomotopyWitness] = None


@dataclass(frozen=True)
class TransportData:
    """Class representing a transport structure on a fibration."""

    f: Any
    gamma: Any
    witness: HomotopyWitness
    factorization: FactorizationData


@dataclass(frozen=True)
class ConnectionData:
    """Path object on the total space with the connection map into it."""

    f: Any
    transport: TransportData
    path: PathObjectData
    Pf: Any
    nabla: Any
    checks: Dict[str, bool] = field(default_factory=dict, compare=False)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class Strictified:
    f: Any
    strict: Any
    homotopy: HomotopyWitness


def _check_square(ps: PathCategory, w: Any, p: Any, m: Any, n: Any):
    cat = ps.category
    if cat.compose(p, m) != cat.compose(n, w):
        raise PreconditionError("The square does not commute.")
    if not ps.is_weq(w):
        raise PreconditionError(f"{cat.describe(w)} is not a weak equivalence.")
    if not ps.is_fibration(p):
        raise PreconditionError(f"{cat.describe(p)} is not a fibration.")


def all_lifts(
    ps: PathCategory,
    w: Any,
    p: Any,
    m: Any,
    n: Any,
    mode: LiftMode = LiftMode.GOOD,
) -> Iterator[Lift]:
    """Yield every filler l of the square with p l = n, in enumeration order.

    The upper triangle l w = m only has to commute up to homotopy, fibrewise
    over the codomain of p in the good mode.
    """
    _check_square(ps, w, p, m, n)
    cat = ps.category

    for l in cat.lifts(cat.cod(w), p, n):
        lw = cat.compose(l, w)
        witness = None
        if mode is LiftMode.HOMOTOPY:
            if (witness := homotopic(ps, lw, m)) is None:
                continue
        elif mode is LiftMode.GOOD:
            if (witness := homotopic(ps, lw, m, base=p)) is None:
                continue
        yield Lift(l, mode, lw == m, witness)


def good_lift(
    ps: PathCategory,
    w: Any,
    p: Any,
    m: Any,
    n: Any,
    mode: LiftMode = LiftMode.GOOD,
) -> Optional[Lift]:
    """Return the first filler, preferring one whose upper triangle commutes strictly."""
    lifts = list(all_lifts(ps, w, p, m, n, mode))
    for lift in lifts:
        if lift.strict:
            return lift
    if lifts:
        logger.warning("No strict filler, using a filler up to homotopy.")
        return lifts[0]
    return None


def all_transports(ps: PathCategory, f: Any) -> Iterator[TransportData]:
    """Yield every Γ: P_f -> Y with f Γ = p_f and Γ w_f fibrewise homotopic to 1."""
    if not ps.is_fibration(f):
        raise PreconditionError(f"{ps.describe(f)} is not a fibration.")
    cat = ps.category
    fact = factorize(ps, f)
    identity = cat.identity(cat.dom(f))
    for gamma in cat.lifts(fact.obj, f, fact.p):
        witness = homotopic(ps, cat.compose(gamma, fact.w), identity, base=f)
        if witness is not None:
            yield TransportData(f, gamma, witness, fact)


def transport(ps: PathCategory, f: Any) -> TransportData:
    for data in all_transports(ps, f):
        return data
    raise PreconditionError(f"No transport structure on {ps.describe(f)}.")


def connection(ps: PathCategory, f: Any) -> ConnectionData:
    """Build PY as the pullback of the fibrewise source map along Γ."""
    cat = ps.category
    data = transport(ps, f)
    fact = data.factorization
    fibrewise = ps.fibrewise_path_object(f)
    y = cat.dom(f)

    cone = cat.pullback(data.gamma, fibrewise.s)
    q1, q2 = cone[0], cone[1]
    r = cat.pullback_pair(data.gamma, fibrewise.s, fact.w, data.witness.h)
    s = cat.compose(fact.p1, q1)
    t = cat.compose(fibrewise.t, q2)
    path = PathObjectData(y, cone.apex, r, s, t, cat.pair(s, t))
    Pf = cat.compose(fact.p2, q1)
    nabla = cat.pullback_pair(
        data.gamma,
        fibrewise.s,
        cat.identity(fact.obj),
        cat.compose(fibrewise.r, data.gamma),
    )

    px = fact.path
    checks = {
        "r is a weak equivalence": ps.is_weq(r),
        "(s, t) is a fibration": ps.is_fibration(path.pairing),
        "Pf is a fibration": ps.is_fibration(Pf),
        "Pf commutes with r": cat.compose(Pf, r) == cat.compose(px.r, f),
        "Pf commutes with s": cat.compose(px.s, Pf) == cat.compose(f, s),
        "Pf commutes with t": cat.compose(px.t, Pf) == cat.compose(f, t),
        "Pf nabla = p2": cat.compose(Pf, nabla) == fact.p2,
        "s nabla = p1": cat.compose(s, nabla) == fact.p1,
        "t nabla = gamma": cat.compose(t, nabla) == data.gamma,
    }
    for name, passed in checks.items():
        if not passed:
            logger.info("Connection on %s: %s fails.", ps.describe(f), name)

    return ConnectionData(f, data, path, Pf, nabla, checks)


def weak_connection(
    ps: PathCategory,
    f: Any,
    path: Optional[PathObjectData] = None,
) -> Optional[Any]:
    """Search ∇: P_f -> PY with s ∇ = p1 and f t ∇ = t p2 for any path object PY."""
    cat = ps.category
    path = path or ps.path_object(cat.dom(f))
    fact = factorize(ps, f)
    target = cat.pair(fact.p1, fact.p)
    for nabla in cat.lifts(fact.obj, cat.pair(path.s, cat.compose(f, path.t)), target):
        return nabla
    return None


def strictify(ps: PathCategory, p: Any, f: Any, g: Any) -> Optional[Strictified]:
    """Replace f, with p f homotopic to g, by a homotopic map f' with p f' = g."""
    cat = ps.category
    if (h := homotopic(ps, cat.compose(p, f), g)) is None:
        return None
    data = connection(ps, p)
    fact = data.transport.factorization
    lifted = cat.compose(
        data.nabla,
        cat.pullback_pair(p, fact.path.s, f, h.h),
    )
    strict = cat.compose(data.path.t, lifted)
    return Strictified(f, strict, HomotopyWitness(f, strict, lifted, data.path))
