import pytest

from hexcat import (
    GroupoidStructure,
    Hex,
    PreconditionError,
    TrivialStructure,
    chain,
    check_lambda_rho,
    delooping,
    identity_relation,
    interval,
    path_relation,
    slice,
    slice_comparison,
    slice_rho,
    stability,
    swap_cover,
    t_transport,
)


def test_swap_cover_is_unstable():
    sliced, cover = swap_cover()
    hex_x = Hex.of(sliced, carriers=[cover])
    verdict = stability(hex_x, identity_relation(sliced, cover))
    assert not verdict.stable
    assert verdict.loop is not None


def test_swap_cover_paths_are_stable():
    sliced, cover = swap_cover()
    hex_x = Hex.of(sliced, carriers=[cover])
    verdict = stability(hex_x, path_relation(sliced, cover))
    assert verdict.stable
    assert verdict.loop is None


def test_swap_cover_unit_is_not_iso():
    sliced, cover = swap_cover()
    hex_x = Hex.of(sliced, carriers=[cover])
    comparison = slice_comparison(Hex.of(sliced.ps), hex_x, identity_relation(sliced, cover))
    assert comparison.restored_iso is False


def test_groupoid_lambda_rho():
    ps = GroupoidStructure()
    sliced = slice(ps, delooping(2))
    cover = next(F for F in ps.category.hom(interval(), delooping(2)) if ps.is_fibration(F))
    hex_x = Hex.of(sliced)
    assert check_lambda_rho(Hex.of(ps), hex_x, path_relation(ps, interval()), cover)


@pytest.fixture(scope="module")
def chain_slice():
    ps = TrivialStructure(chain())
    return ps, Hex.of(ps), Hex.of(slice(ps, 2))


def test_trivial_slices_are_stable(chain_slice):
    _, hex, hex_x = chain_slice
    relations = hex_x.objects()
    assert len(relations) == 3
    for t in relations:
        verdict = stability(hex_x, t)
        assert verdict.stable
        assert verdict.unique
        assert verdict.preserves
        comparison = slice_comparison(hex, hex_x, t)
        assert comparison.restored_iso


def test_transport(chain_slice):
    ps, _, hex_x = chain_slice
    t = hex_x.objects()[0]
    transport = t_transport(hex_x, t)
    cat = ps.category
    assert cat.compose(t.carrier.fib, transport.gamma) == transport.factorization.p


def test_lambda_rho(chain_slice):
    ps, hex, hex_x = chain_slice
    cat = ps.category
    for x in cat.objects():
        f = cat.hom(x, 2)[0]
        assert check_lambda_rho(hex, hex_x, path_relation(ps, x), f)
        assert slice_rho(hex_x, path_relation(ps, x), f).carrier.fib == f


def test_requires_slice():
    hex = Hex.of(TrivialStructure(chain()))
    with pytest.raises(PreconditionError, match="over a slice"):
        stability(hex, hex.objects()[0])
