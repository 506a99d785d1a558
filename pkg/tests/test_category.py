import pytest

from hexcat import (
    BoundExceeded,
    Congruence,
    Diagram,
    FiniteCategory,
    FinSets,
    Functor,
    HexcatOptions,
    PreconditionError,
    StructuralError,
    chain,
    check_category_laws,
    check_congruence,
    check_equivalence,
    classify_morphism,
    compatible_tuples,
    diamond,
    find_isomorphism,
    find_limit,
    materialize,
    quotient_by_congruence,
    terminal_category,
    validate_category,
)


def involution() -> FiniteCategory:
    return FiniteCategory.build(
        ["A"],
        [("id_A", "A", "A"), ("e", "A", "A")],
        {"A": "id_A"},
        {
            ("id_A", "id_A"): "id_A",
            ("e", "id_A"): "e",
            ("id_A", "e"): "e",
            ("e", "e"): "id_A",
        },
    )


@pytest.mark.parametrize("cat", [terminal_category(), chain(), chain(5), diamond(), involution()])
def test_laws(cat: FiniteCategory):
    report = validate_category(cat)
    assert report.valid
    assert check_category_laws(cat) == []


def test_undeclared_name():
    with pytest.raises(StructuralError, match="Undeclared name 'g'"):
        FiniteCategory.build(["A"], [("id_A", "A", "A")], {"A": "id_A"}, {("g", "id_A"): "id_A"})


def test_missing_composite():
    cat = FiniteCategory.build(
        ["A"],
        [("id_A", "A", "A"), ("e", "A", "A")],
        {"A": "id_A"},
        {("id_A", "id_A"): "id_A", ("e", "id_A"): "e", ("id_A", "e"): "e"},
    )
    report = validate_category(cat)
    assert report.structural == ["missing composite e . e"]
    with pytest.raises(StructuralError):
        cat.compose(1, 1)


def test_associativity():
    cat = FiniteCategory.build(
        ["A"],
        [("id_A", "A", "A"), ("e", "A", "A"), ("k", "A", "A")],
        {"A": "id_A"},
        {
            **{("id_A", f): f for f in ["id_A", "e", "k"]},
            **{(f, "id_A"): f for f in ["e", "k"]},
            ("e", "e"): "k",
            ("e", "k"): "e",
            ("k", "e"): "k",
            ("k", "k"): "k",
        },
    )
    violations = validate_category(cat).violations
    assert violations
    assert all(violation.startswith("associativity fails") for violation in violations)


def test_chain_limits():
    cat = chain()
    assert cat.terminal() == cat.object_id("2")
    assert cat.product(1, 2).apex == 1
    assert cat.pullback(cat.morphism_id("0<=2"), cat.morphism_id("1<=2")).apex == 0
    assert cat.limit(Diagram((0, 1, 2))) is not None


def test_diamond_limits():
    cat = diamond()
    a, b = cat.object_id("a"), cat.object_id("b")
    assert cat.product(a, b).apex == cat.object_id("bot")
    assert cat.terminal() == cat.object_id("top")
    assert find_limit(cat, Diagram((a, b))).apex == cat.object_id("bot")
    assert find_limit(cat, Diagram((a, b)), [cat.object_id("top")]) is None


def test_classify():
    cat = chain()
    f = cat.morphism_id("0<=1")
    flags = classify_morphism(cat, f)
    assert flags.mono and flags.epi
    assert not flags.iso and not flags.split_mono and not flags.split_epi

    flags = classify_morphism(involution(), 1)
    assert flags.iso and flags.split_mono and flags.split_epi


def test_find_isomorphism():
    cat = involution()
    assert find_isomorphism(cat, 0, 0) == (0, 0)
    assert find_isomorphism(chain(), 0, 1) is None


def test_quotient():
    cat = involution()
    congruence = Congruence(((0, 1),))
    assert check_congruence(cat, congruence) == []

    quotient, functor = quotient_by_congruence(cat, congruence)
    assert len(quotient.morphism_table) == 1
    assert check_category_laws(quotient) == []
    assert functor.mor(1) == functor.mor(0) == quotient.identity(0)


def test_quotient_discrete():
    cat = diamond()
    quotient, _ = quotient_by_congruence(cat, Congruence.discrete(cat))
    assert len(quotient.morphism_table) == len(cat.morphism_table)


def test_quotient_rejects_partial_partition():
    with pytest.raises(PreconditionError):
        quotient_by_congruence(involution(), Congruence(((0,),)))


def test_materialize():
    cat = FinSets(HexcatOptions(fragment=[0, 1, 2]))
    explicit = materialize(cat)
    assert len(explicit.morphisms) == 1 + 1 + 1 + 0 + 1 + 2 + 0 + 1 + 4
    assert validate_category(explicit.category).valid


def test_equivalence():
    cat = chain()
    identity = Functor(cat, cat, lambda a: a, lambda f: f)
    assert check_equivalence(identity).equivalence

    collapse = Functor(cat, terminal_category(), lambda a: 0, lambda f: 0)
    verdict = check_equivalence(collapse)
    assert verdict.faithful and verdict.essentially_surjective
    assert not verdict.full
    assert not verdict.equivalence


def test_compatible_tuples():
    domains = [range(2), range(3), range(2)]
    edges = [(0, 2, lambda v: v), (1, 2, lambda v: v % 2)]
    assert compatible_tuples(domains, edges, "tuples", 64) == [(0, 0, 0), (0, 2, 0), (1, 1, 1)]


def test_compatible_tuples_self_loop():
    assert compatible_tuples([range(3)], [(0, 0, lambda v: 2 - v)], "tuples", 64) == [(1,)]


def test_compatible_tuples_bound():
    with pytest.raises(BoundExceeded, match="tuples"):
        compatible_tuples([range(3)] * 3, [], "tuples", 20)
