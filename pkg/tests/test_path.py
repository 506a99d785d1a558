from typing import Iterable

import pytest

from hexcat import (
    ExplicitStructure,
    FinSets,
    GroupoidStructure,
    Groupoids,
    HexcatOptions,
    PathCategory,
    PreconditionError,
    TrivialStructure,
    chain,
    check_axioms,
    compare_factorizations,
    delooping,
    diamond,
    discrete,
    empty,
    factorize,
    ho_category,
    homotopic,
    homotopy_pullback,
    interval,
    is_homotopy_equivalence,
    is_homotopy_pullback,
    is_strong_deformation_retract,
    path_map,
    point,
    slice,
    terminal_category,
)


def groupoids() -> GroupoidStructure:
    return GroupoidStructure(Groupoids([empty(), point(), discrete(2), interval(), delooping(2)]))


@pytest.mark.parametrize(
    "ps",
    [
        TrivialStructure(terminal_category()),
        TrivialStructure(chain()),
        TrivialStructure(diamond()),
        TrivialStructure(FinSets(HexcatOptions(fragment=[0, 1, 2]))),
        groupoids(),
        slice(TrivialStructure(chain()), 2),
    ],
)
def test_axioms(ps: PathCategory):
    report = check_axioms(ps)
    assert [result.axiom for result in report.results] == [
        "1",
        "2",
        "3",
        "4",
        "5",
        "6",
        "7",
        "2-out-of-3",
        "pullback",
    ]
    assert report.passed, report.failures


def explicit(
    fibrations: Iterable[str] = (),
    weqs: Iterable[str] = (),
    not_fibrations: Iterable[str] = (),
    not_weqs: Iterable[str] = (),
) -> ExplicitStructure:
    cat = chain()
    names = [name for name, _, _ in cat.morphism_table]
    identities = [name for name in names if name.startswith("id_")]
    fibrations = set(fibrations or names) - set(not_fibrations)
    weqs = set(weqs or identities) - set(not_weqs)
    return ExplicitStructure(
        cat,
        [cat.morphism_id(name) for name in fibrations],
        [cat.morphism_id(name) for name in weqs],
    )


def test_explicit_chain():
    assert check_axioms(explicit()).passed


@pytest.mark.parametrize(
    "axiom, ps",
    [
        ("1", explicit(not_fibrations=["0<=2"])),
        ("2", explicit(not_fibrations=["id_0"])),
        ("3", explicit(not_weqs=["id_0"])),
        ("4", explicit(weqs=["id_0", "id_1", "id_2", "1<=2", "0<=2"])),
        ("5", explicit(not_weqs=["id_2"])),
        ("6", explicit(not_weqs=["id_1"])),
        ("7", explicit(not_fibrations=["1<=2", "0<=2"])),
    ],
)
def test_axiom_failures(axiom: str, ps: ExplicitStructure):
    result = check_axioms(ps)[axiom]
    assert not result.passed
    assert result.counterexample


def test_counterexamples():
    assert check_axioms(explicit(not_weqs=["id_2"]))["5"].counterexample == "id_2"
    assert check_axioms(explicit(not_weqs=["id_1"]))["6"].counterexample == "1"
    assert check_axioms(explicit(not_fibrations=["1<=2", "0<=2"]))["7"].counterexample == "0"


def test_missing_path_object():
    ps = explicit(not_weqs=["id_1"])
    assert not ps.has_path_object(1)
    with pytest.raises(PreconditionError, match="No path object for 1"):
        ps.path_object(1)


def test_path_object_is_recorded():
    ps = groupoids()
    assert ps.path_object(interval()) is ps.path_object(interval())


@pytest.mark.parametrize("ps", [TrivialStructure(chain()), TrivialStructure(diamond())])
def test_trivial_homotopy(ps: TrivialStructure):
    cat = ps.category
    for f in cat.morphisms():
        for g in cat.hom(cat.dom(f), cat.cod(f)):
            assert (homotopic(ps, f, g) is not None) == (f == g)
        assert ps.is_weq(f) == (is_homotopy_equivalence(ps, f) is not None)


def test_groupoid_homotopy():
    ps = groupoids()
    cat = ps.category
    first, second = cat.hom(point(), interval())
    assert homotopic(ps, first, second) is not None

    (collapse,) = cat.hom(interval(), point())
    assert is_homotopy_equivalence(ps, collapse) is not None
    assert is_strong_deformation_retract(ps, first) is not None

    ps = GroupoidStructure()
    (collapse,) = ps.category.hom(discrete(2), point())
    assert is_homotopy_equivalence(ps, collapse) is None


def test_homotopic_requires_parallel_maps():
    ps = TrivialStructure(chain())
    with pytest.raises(PreconditionError, match="not parallel"):
        homotopic(ps, 0, 1)


def test_factorize():
    ps = groupoids()
    cat = ps.category
    f = cat.hom(point(), interval())[0]
    fact = factorize(ps, f)
    assert cat.compose(fact.p, fact.w) == f
    assert ps.is_weq(fact.w)
    assert ps.is_fibration(fact.p)


def test_ho_category_chain():
    quotient, gamma = ho_category(TrivialStructure(chain()))
    assert len(quotient.morphism_table) == 6
    assert gamma.obj(1) == 1


def test_ho_category_groupoids():
    ps = groupoids()
    quotient, gamma = ho_category(ps)
    i, b = gamma.obj(interval()), gamma.obj(delooping(2))
    assert len(quotient.hom(i, i)) == 1
    assert len(quotient.hom(b, b)) == 2
    first, second = ps.category.hom(point(), interval())
    assert gamma.mor(first) == gamma.mor(second)


def test_homotopy_pullback():
    ps = TrivialStructure(chain())
    cat = ps.category
    f, g = cat.morphism_id("0<=2"), cat.morphism_id("1<=2")
    canonical = homotopy_pullback(ps, f, g)
    assert canonical.obj == 0
    assert cat.compose(f, canonical.p1) == cat.compose(g, canonical.p2)
    square = (cat.identity(0), cat.morphism_id("0<=1"))
    assert is_homotopy_pullback(ps, *square, f, g) is not None
    up = cat.morphism_id("1<=2")
    assert is_homotopy_pullback(ps, up, up, cat.identity(2), cat.identity(2)) is None
    with pytest.raises(PreconditionError, match="different codomains"):
        homotopy_pullback(ps, f, cat.morphism_id("0<=1"))


def test_path_map():
    ps = groupoids()
    cat = ps.category
    (f,) = cat.hom(interval(), point())
    source, target = ps.path_object(interval()), ps.path_object(point())
    m = path_map(ps, f)
    assert m is not None
    assert cat.compose(m, source.r) == cat.compose(target.r, f)
    assert cat.compose(target.s, m) == cat.compose(f, source.s)
    assert cat.compose(target.t, m) == cat.compose(f, source.t)


def test_compare_factorizations():
    ps = groupoids()
    cat = ps.category
    f = cat.hom(point(), interval())[0]
    identity = cat.identity(interval())
    fact = factorize(ps, f)
    m = compare_factorizations(ps, (f, identity), (fact.w, fact.p))
    assert m is not None
    assert cat.compose(fact.p, m) == identity
    assert ps.is_weq(m)
    assert compare_factorizations(ps, (fact.w, fact.p), (fact.w, fact.p)) is not None
    other = cat.hom(point(), interval())[1]
    with pytest.raises(PreconditionError, match="same map"):
        compare_factorizations(ps, (f, identity), (other, identity))
