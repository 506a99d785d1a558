import pytest

from hexcat import (
    Function,
    Hex,
    HexcatOptions,
    PreconditionError,
    TrivialStructure,
    build_ex,
    chain,
    check_axioms,
    check_category_laws,
    check_functor,
    check_pretopos,
    compare_exponential,
    compare_with_oracle,
    cover_section,
    diamond,
    embed_i,
    empty,
    exlex_oracle,
    find_isomorphism,
    finite_groupoids,
    finite_sets,
    hex_hom,
    hex_limits,
    hex_sum,
    image_factorization,
    interval,
    is_cover,
    is_mono,
    is_pseudo_eq_relation,
    partition_relations,
    path_relation,
    point,
    pseudo_to_heq,
    quotient_eqrel,
    subobject_poset,
    terminal_category,
    trivial_lex,
)

options = HexcatOptions(fragment=[0, 1, 2], carriers=[0, 1, 2])


@pytest.fixture(scope="module")
def sets():
    return finite_sets(options)


@pytest.fixture(scope="module")
def sets_hex(sets) -> Hex:
    return sets.hex()


def relation(hex: Hex, carrier: int, size: int):
    return next(r for r in hex.objects() if r.carrier == carrier and r.obj == size)


def test_chain_objects():
    hex = trivial_lex(chain()).hex()
    assert len(hex.objects()) == 3
    assert check_category_laws(hex) == []


def test_ex_structure_axioms():
    ex = build_ex(TrivialStructure(chain()))
    assert len(ex.category.objects()) == 3
    assert check_axioms(ex).passed


def test_objects(sets_hex: Hex):
    assert [r.carrier for r in sets_hex.objects()] == [0, 1, 2, 2]


def test_quotient_is_isomorphic_to_point(sets_hex: Hex):
    full = relation(sets_hex, 2, 4)
    discrete = relation(sets_hex, 2, 2)
    one = relation(sets_hex, 1, 1)
    assert len(hex_hom(sets_hex, full, discrete)) == 2
    assert len(hex_hom(sets_hex, discrete, full)) == 1
    assert find_isomorphism(sets_hex, full, one) is not None
    assert find_isomorphism(sets_hex, discrete, one) is None


def test_canonical_representative(sets_hex: Hex):
    discrete = relation(sets_hex, 2, 2)
    full = relation(sets_hex, 2, 4)
    (only,) = sets_hex.hom(discrete, full)
    assert only.f == Function(2, 2, (0, 0))
    assert sets_hex.canonical(discrete, full, Function(2, 2, (1, 0))) == only


def test_canonical_requires_tracking(sets_hex: Hex):
    full = relation(sets_hex, 2, 4)
    discrete = relation(sets_hex, 2, 2)
    with pytest.raises(PreconditionError, match="has no tracking"):
        sets_hex.canonical(full, discrete, Function(2, 2, (0, 1)))


def test_limits(sets_hex: Hex):
    one = hex_limits(sets_hex, "terminal").apex
    assert one.carrier == 1
    discrete = relation(sets_hex, 2, 2)
    product = hex_limits(sets_hex, "product", discrete, discrete)
    assert product.apex.carrier == 4
    full = relation(sets_hex, 2, 4)
    f, g = sets_hex.hom(full, discrete)
    equalizer = hex_limits(sets_hex, "equalizer", f, g)
    assert equalizer.apex.carrier == 0
    with pytest.raises(PreconditionError, match="Unknown limit request"):
        hex_limits(sets_hex, "coproduct")


def test_image_factorization(sets_hex: Hex):
    discrete = relation(sets_hex, 2, 2)
    full = relation(sets_hex, 2, 4)
    (f,) = sets_hex.hom(discrete, full)
    image = image_factorization(sets_hex, f)
    assert sets_hex.compose(image.mono, image.cover) == f
    assert is_cover(sets_hex, image.cover)
    assert is_mono(sets_hex, image.mono)
    assert not is_mono(sets_hex, f)


def test_quotient_eqrel(sets_hex: Hex):
    discrete = relation(sets_hex, 2, 2)
    quotient = quotient_eqrel(sets_hex, discrete, Function(4, 4, (0, 1, 2, 3)))
    assert quotient.relation.carrier == 2
    assert quotient.relation.obj == 4
    assert quotient.kernel_matches


def test_embed_i():
    hex = trivial_lex(diamond()).hex()
    assert check_functor(embed_i(hex)) == []


def test_subobjects():
    hex = trivial_lex(chain()).hex()
    poset = subobject_poset(hex, 2)
    assert len(poset.direct) == 3
    assert poset.agree


def test_pseudo_to_heq(sets):
    ps = sets.ps
    pseudo = is_pseudo_eq_relation(ps, 2, Function(2, 4, (0, 3)))
    assert pseudo is not None
    replaced = pseudo_to_heq(ps, pseudo)
    assert replaced.relation.carrier == 2


@pytest.mark.parametrize("handle", [trivial_lex(chain()), trivial_lex(diamond())])
def test_oracle(handle):
    verdict = compare_with_oracle(handle.hex(), handle.oracle())
    assert verdict.equivalence, verdict.counterexamples


def test_oracle_terminal():
    oracle = exlex_oracle(terminal_category())
    assert len(oracle.objects()) == 1
    verdict = compare_with_oracle(Hex.of(TrivialStructure(terminal_category())), oracle)
    assert verdict.equivalence


def test_oracle_finite_sets(sets, sets_hex: Hex):
    verdict = compare_with_oracle(sets_hex, sets.oracle())
    assert verdict.equivalence, verdict.counterexamples


def test_partition_relations_are_objects(sets, sets_hex: Hex):
    assert list(partition_relations(sets.ps, 2)) == [r for r in sets_hex.objects() if r.carrier == 2]


def test_quotient_eqrel_requires_relation(sets_hex: Hex):
    discrete = relation(sets_hex, 2, 2)
    with pytest.raises(PreconditionError, match="is not a relation"):
        quotient_eqrel(sets_hex, discrete, Function(1, 4, (1,)))


def test_cover_section(sets_hex: Hex):
    discrete = relation(sets_hex, 2, 2)
    full = relation(sets_hex, 2, 4)
    (f,) = sets_hex.hom(discrete, full)
    g, _ = cover_section(sets_hex, f)
    assert g.source == 2
    one = relation(sets_hex, 1, 1)
    h = sets_hex.hom(one, discrete)[0]
    assert cover_section(sets_hex, h) is None
    assert sets_hex.inverse(h) is None


def test_hex_sum(sets_hex: Hex):
    one = relation(sets_hex, 1, 1)
    discrete = relation(sets_hex, 2, 2)
    data = hex_sum(sets_hex, one, discrete)
    assert data.obj.carrier == 3
    assert data.obj.obj == 3
    assert is_mono(sets_hex, data.inl)
    assert is_mono(sets_hex, data.inr)


def test_finite_sets_pretopos():
    hex = finite_sets(HexcatOptions(fragment=[0, 1, 2], carriers=[0, 1])).hex()
    verdict = check_pretopos(hex)
    assert verdict.extensive, verdict.counterexamples


def test_groupoids_pretopos():
    hex = finite_groupoids([empty(), point(), interval()]).hex()
    objects = [path_relation(hex.ps, x) for x in (empty(), point(), interval())]
    verdict = check_pretopos(hex, objects)
    assert verdict.extensive, verdict.counterexamples


def test_oracle_exponentials(sets, sets_hex: Hex):
    oracle = sets.oracle()
    objects = oracle.objects()
    assert all(compare_exponential(sets_hex, oracle, a, b) for a in objects for b in objects)
