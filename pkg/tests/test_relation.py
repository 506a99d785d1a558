import pytest

from hexcat import (
    FinSets,
    Function,
    GroupoidStructure,
    Groupoids,
    HexcatOptions,
    PreconditionError,
    TrivialStructure,
    delooping,
    identity_relation,
    intersect_relations,
    interval,
    is_heq_relation,
    is_pseudo_eq_relation,
    partition_relations,
    path_relation,
    point,
    product_relation,
    pullback_relation,
)

ps = TrivialStructure(FinSets(HexcatOptions(fragment=[0, 1, 2])))


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 5)])
def test_partitions(n: int, count: int):
    relations = list(partition_relations(ps, n))
    assert len(relations) == count
    assert all(relation.carrier == n for relation in relations)


def test_not_symmetric():
    verdict = is_heq_relation(ps, 2, Function(3, 4, (0, 3, 1)))
    assert not verdict.passed
    assert verdict.failed == ["symmetry"]


def test_not_a_relation():
    with pytest.raises(PreconditionError, match="is not a relation on"):
        is_heq_relation(ps, 2, Function(1, 2, (0,)))


def test_identity_and_paths():
    identity = identity_relation(ps, 2)
    assert identity.obj == 2
    assert path_relation(ps, 2) == identity
    assert is_heq_relation(ps, 2, identity.rho).relation == identity


def test_pullback_relation():
    full = is_heq_relation(ps, 2, ps.category.identity(4)).relation
    assert full is not None
    pulled = pullback_relation(ps, full, Function(3, 2, (0, 1, 1)))
    assert pulled.carrier == 3
    assert pulled.obj == 9


def test_intersection():
    full = is_heq_relation(ps, 2, ps.category.identity(4)).relation
    meet = intersect_relations(ps, full, identity_relation(ps, 2))
    assert meet.obj == 2
    with pytest.raises(PreconditionError):
        intersect_relations(ps, full, identity_relation(ps, 1))


def test_product():
    relation = product_relation(ps, identity_relation(ps, 1), identity_relation(ps, 2))
    assert relation.carrier == 2
    assert relation.obj == 2


def test_groupoid_paths():
    gpd = GroupoidStructure(Groupoids([point(), interval(), delooping(2)]))
    assert path_relation(gpd, interval()).carrier == interval()

    diagonal = gpd.category.diagonal(interval())
    verdict = is_heq_relation(gpd, interval(), diagonal)
    assert verdict.failed == ["fibration"]
    assert is_pseudo_eq_relation(gpd, interval(), diagonal) is not None

    with pytest.raises(PreconditionError, match="fails fibration"):
        identity_relation(gpd, interval())
