import pytest

from hexcat import (
    FinSets,
    Function,
    GroupoidStructure,
    Groupoids,
    HexcatOptions,
    PreconditionError,
    SumData,
    TrivialStructure,
    chain,
    check_extensive,
    check_hnno_candidate,
    check_initial,
    check_sum,
    copair,
    delooping,
    empty,
    interval,
    point,
    search_sum,
    sum_of,
    terminal_category,
)

sets = TrivialStructure(FinSets(HexcatOptions(fragment=[0, 1])))


def test_finite_sets_are_extensive():
    verdict = check_extensive(sets)
    assert verdict.extensive
    assert verdict.agree
    assert all(verdict.conditions.values()), verdict.counterexamples
    assert list(verdict.conditions) == [
        "initial",
        "disjoint",
        "stable",
        "injections",
        "conservative",
        "distributive",
        "strict initial",
        "unit",
        "sums of pullbacks",
    ]


def test_initial():
    ps = TrivialStructure(chain())
    assert check_initial(ps, 0).initial
    verdict = check_initial(ps, 1)
    assert not verdict.initial
    assert verdict.counterexample == "no map to 0"


def test_chain_without_initial_fragment():
    ps = TrivialStructure(chain())
    verdict = check_extensive(ps, [1, 2])
    assert not verdict.extensive
    assert verdict["initial"]


def test_search_sum():
    ps = TrivialStructure(chain())
    data = search_sum(ps, 0, 1)
    assert data is not None
    assert data.obj == 1
    assert sum_of(ps, 1, 2).obj == 2


def test_no_sum():
    ps = TrivialStructure(chain())
    with pytest.raises(PreconditionError, match="No sum"):
        sum_of(ps, 0, 2, [0, 1])


def test_candidate_is_not_a_sum():
    ps = TrivialStructure(chain())
    cat = ps.category
    f = cat.morphism_id("0<=1")
    verdict = check_sum(ps, 0, 0, SumData(0, 0, 1, f, f))
    assert not verdict.is_sum
    assert verdict.counterexample == "no map induced by (id_0, id_0)"


def test_groupoid_sum():
    ps = GroupoidStructure(Groupoids([empty(), point(), interval(), delooping(2)]))
    data = sum_of(ps, point(), point())
    verdict = check_sum(ps, point(), point(), data)
    assert verdict.is_sum
    assert verdict.agree
    assert verdict.paths


def test_copair():
    data = sum_of(sets, 1, 1)
    h = copair(sets, data, Function(1, 1, (0,)), Function(1, 1, (0,)))
    assert h == Function(2, 1, (0, 0))


def test_hnno_terminal():
    ps = TrivialStructure(terminal_category())
    verdict = check_hnno_candidate(ps, 0, 0, 0)
    assert verdict.hnno


def test_hnno_finite_set():
    ps = TrivialStructure(FinSets(HexcatOptions(fragment=[0, 1, 2])))
    verdict = check_hnno_candidate(ps, 2, Function(1, 2, (0,)), Function(2, 2, (1, 1)))
    assert not verdict.universal
    assert verdict.counterexample
