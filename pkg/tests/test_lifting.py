import pytest

from hexcat import (
    GroupoidStructure,
    Groupoids,
    LiftMode,
    PreconditionError,
    TrivialStructure,
    all_lifts,
    all_transports,
    chain,
    connection,
    delooping,
    empty,
    good_lift,
    homotopic,
    interval,
    point,
    strictify,
    transport,
    weak_connection,
)


@pytest.fixture(scope="module")
def ps() -> GroupoidStructure:
    return GroupoidStructure(Groupoids([empty(), point(), interval(), delooping(2)]))


def square(ps: GroupoidStructure):
    cat = ps.category
    w, m = cat.hom(point(), interval())
    (p,) = cat.hom(interval(), point())
    n = p
    return w, p, m, n


def test_good_lift(ps: GroupoidStructure):
    cat = ps.category
    w, p, m, n = square(ps)
    lift = good_lift(ps, w, p, m, n)
    assert lift is not None
    assert lift.strict
    assert lift.mode is LiftMode.GOOD
    assert cat.compose(p, lift.filler) == n
    assert cat.compose(lift.filler, w) == m


@pytest.mark.parametrize("mode", list(LiftMode))
def test_all_lifts(ps: GroupoidStructure, mode: LiftMode):
    lifts = list(all_lifts(ps, *square(ps), mode=mode))
    assert len(lifts) == 4
    assert sum(lift.strict for lift in lifts) == 2


def test_good_lifts_are_fibrewise_homotopic(ps: GroupoidStructure):
    w, p, m, n = square(ps)
    fillers = [lift.filler for lift in all_lifts(ps, w, p, m, n)]
    for a in fillers:
        for b in fillers:
            assert homotopic(ps, a, b, base=p) is not None


def test_square_must_commute():
    ps = TrivialStructure(chain())
    cat = ps.category
    identity = cat.identity(0)
    with pytest.raises(PreconditionError, match="does not commute"):
        good_lift(ps, identity, cat.morphism_id("0<=1"), identity, cat.morphism_id("0<=2"))


def test_weak_equivalence_required():
    ps = TrivialStructure(chain())
    cat = ps.category
    f = cat.morphism_id("0<=1")
    with pytest.raises(PreconditionError, match="not a weak equivalence"):
        good_lift(ps, f, cat.identity(1), f, cat.identity(1))


def test_transport(ps: GroupoidStructure):
    cat = ps.category
    (p,) = cat.hom(interval(), point())
    data = transport(ps, p)
    fact = data.factorization
    assert cat.compose(p, data.gamma) == fact.p
    assert data.witness.base == p


@pytest.mark.parametrize("source, count", [(interval(), 4), (delooping(2), 1)])
def test_transports_are_fibrewise_homotopic(ps: GroupoidStructure, source, count: int):
    (p,) = ps.category.hom(source, point())
    transports = [data.gamma for data in all_transports(ps, p)]
    assert len(transports) == count
    for a in transports:
        for b in transports:
            assert homotopic(ps, a, b, base=p) is not None


@pytest.mark.parametrize(
    "ps, name",
    [
        (TrivialStructure(chain()), "0<=1"),
        (TrivialStructure(chain()), "id_2"),
    ],
)
def test_connection_trivial(ps: TrivialStructure, name: str):
    data = connection(ps, ps.category.morphism_id(name))
    assert data.valid, data.checks


def test_connection_groupoids(ps: GroupoidStructure):
    (p,) = ps.category.hom(interval(), point())
    data = connection(ps, p)
    assert data.valid, data.checks
    assert weak_connection(ps, p) is not None


def test_strictify(ps: GroupoidStructure):
    cat = ps.category
    (p,) = cat.hom(interval(), point())
    f = cat.hom(point(), interval())[0]
    result = strictify(ps, p, f, cat.identity(point()))
    assert result is not None
    assert cat.compose(p, result.strict) == cat.identity(point())
