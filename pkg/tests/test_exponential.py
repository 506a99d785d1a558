import pytest

from hexcat import (
    FinSets,
    Function,
    HexcatOptions,
    PreconditionError,
    TrivialStructure,
    chain,
    doubled_exponential,
    fib_exponential,
    finite_sets,
    funext_check,
    hex_exponential,
    lift_section,
    slice_exponential,
    weak_exponential,
    weak_pi,
)

sets = TrivialStructure(FinSets(HexcatOptions(fragment=[0, 1, 2])))


@pytest.mark.parametrize("x, y", [(2, 1), (2, 2), (1, 2), (0, 1)])
def test_finite_set_exponentials_are_strong(x: int, y: int):
    verdict = weak_exponential(sets, x, y)
    assert verdict.weak and verdict.strong
    assert verdict.exponential.obj == x ** y


def test_search_in_chain():
    ps = TrivialStructure(chain())
    verdict = weak_exponential(ps, 0, 1, mode="search")
    assert verdict.weak
    assert verdict.exponential.obj == 0


def test_unknown_mode():
    with pytest.raises(PreconditionError, match="Unknown exponential mode"):
        weak_exponential(sets, 1, 1, mode="guess")


def test_doubled_exponential_is_weak():
    exp = sets.category.exponential(2, 1)
    doubled = doubled_exponential(sets, exp)
    assert doubled.obj == 4
    verdict = weak_exponential(sets, 2, 1, candidate=doubled)
    assert verdict.weak
    assert not verdict.strong
    assert verdict.counterexample


def test_weak_pi():
    alpha = Function(2, 1, (0, 0))
    f = Function(3, 2, (0, 1, 1))
    verdict = weak_pi(sets, f, alpha)
    assert verdict.weak and verdict.strong
    assert verdict.pi.obj == 2


def test_weak_pi_search():
    ps = TrivialStructure(chain())
    cat = ps.category
    alpha = cat.identity(2)
    f = cat.morphism_id("1<=2")
    verdict = weak_pi(ps, f, alpha)
    assert verdict.weak
    assert cat.dom(verdict.pi.proj) == 1


def test_slice_exponential():
    p = Function(2, 1, (0, 0))
    q = Function(1, 1, (0,))
    verdict = slice_exponential(sets, p, q)
    assert verdict.weak and verdict.strong


def test_fib_exponential():
    p = Function(2, 1, (0, 0))
    fib = fib_exponential(sets, p, 1, verify=True)
    assert fib.square
    assert fib.quasi_pullback
    assert lift_section(sets, fib, Function(1, 2, (1,))) is not None


def test_funext():
    verdict = funext_check(sets, 2, 1)
    assert verdict.strong
    assert verdict.e is not None
    assert verdict.agree


def test_funext_doubled():
    doubled = doubled_exponential(sets, sets.category.exponential(2, 1))
    verdict = funext_check(sets, 2, 1, exponential=doubled)
    assert not verdict.strong
    assert verdict.e is None
    assert verdict.agree


def test_hex_exponential():
    handle = finite_sets(HexcatOptions(fragment=[0, 1, 2], carriers=[0, 1, 2]))
    hex = handle.hex()
    discrete = next(r for r in hex.objects() if r.carrier == 2 and r.obj == 2)
    one = next(r for r in hex.objects() if r.carrier == 1)
    result = hex_exponential(hex, discrete, one, verify=True)
    assert result.universal, result.counterexample
    assert result.unique, result.counterexample
