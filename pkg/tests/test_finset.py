import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hexcat import BoundExceeded, FinSets, Function, HexcatOptions, materialize, validate_category

cat = FinSets()


@st.composite
def functions(draw, source: int = -1, target: int = -1) -> Function:
    if source < 0:
        source = draw(st.integers(0, 3 if target != 0 else 0))
    if target < 0:
        target = draw(st.integers(1 if source else 0, 3))
    if not target:
        return Function(source, 0, ())
    values = draw(st.lists(st.integers(0, target - 1), min_size=source, max_size=source))
    return Function(source, target, tuple(values))


@st.composite
def composable(draw):
    f = draw(functions())
    g = draw(functions(source=f.target))
    h = draw(functions(source=g.target))
    return h, g, f


@given(composable())
def test_compose(maps):
    h, g, f = maps
    assert cat.compose(h, g, f) == cat.compose(cat.compose(h, g), f)
    assert cat.compose(f, cat.identity(f.source)) == f
    assert cat.compose(cat.identity(f.target), f) == f
    assert all(cat.compose(g, f)(x) == g(f(x)) for x in range(f.source))


@given(functions(), functions())
def test_pair(f: Function, g: Function):
    assume(f.source == g.source)
    cone = cat.product(f.target, g.target)
    assert cone.apex == f.target * g.target
    pair = cat.pair(f, g)
    assert cat.compose(cone[0], pair) == f
    assert cat.compose(cone[1], pair) == g
    assert all(pair(x) == f(x) * g.target + g(x) for x in range(f.source))


@given(functions(), functions())
def test_pullback(f: Function, g: Function):
    assume(f.target == g.target)
    cone = cat.pullback(f, g)
    assert cone.apex == sum(1 for x in range(f.source) for y in range(g.source) if f(x) == g(y))
    assert cat.compose(f, cone[0]) == cat.compose(g, cone[1])


@given(st.data())
def test_lifts(data):
    p = data.draw(functions())
    g = data.draw(functions(target=p.target))
    for lift in cat.lifts(g.source, p, g):
        assert cat.compose(p, lift) == g
    surjective = set(p.values) == set(range(p.target))
    assert not surjective or any(True for _ in cat.lifts(g.source, p, g))


@given(st.integers(0, 3))
def test_inverse(n: int):
    shift = Function(n, n, tuple((x + 1) % n for x in range(n)))
    inverse = cat.inverse(shift)
    assert inverse is not None
    assert cat.compose(inverse, shift) == cat.identity(n)


def test_not_invertible():
    assert cat.inverse(Function(2, 2, (0, 0))) is None
    assert cat.inverse(Function(1, 2, (0,))) is None


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
def test_exponential(x: int, y: int, a: int, data):
    assume(x or not a * y)
    exponential = cat.exponential(x, y)
    assert exponential.obj == x ** y
    h = data.draw(functions(source=a * y, target=x))
    curried = exponential.curry(a, h)
    assert cat.compose(exponential.ev, cat.product_map(curried, cat.identity(y))) == h


def test_sum():
    data = cat.sum(2, 1)
    assert data.obj == 3
    assert data.inl == Function(2, 3, (0, 1))
    assert data.inr == Function(1, 3, (2,))
    assert data.copair(Function(2, 2, (1, 0)), Function(1, 2, (0,))) == Function(3, 2, (1, 0, 0))


def test_pi():
    alpha = Function(2, 1, (0, 0))
    f = Function(3, 2, (0, 1, 1))
    pi = cat.pi(f, alpha)
    assert pi.obj == 2
    assert pi.proj == Function(2, 1, (0, 0))


def test_bound():
    small = FinSets(HexcatOptions(bound=8))
    assert len(small.hom(3, 2)) == 8
    with pytest.raises(BoundExceeded, match="functions 2 -> 3"):
        small.hom(2, 3)


def test_fragment():
    small = FinSets(HexcatOptions(fragment=[0, 1, 2]))
    explicit = materialize(small)
    assert explicit.category.object_names == ("{0}", "{1}", "{2}")
    assert validate_category(explicit.category).valid


def test_lifts_are_lazy():
    small = FinSets(HexcatOptions(bound=64))
    p = Function(2, 1, (0, 0))
    g = Function(10, 1, (0,) * 10)
    assert next(small.lifts(10, p, g)) == Function(10, 2, (0,) * 10)
    with pytest.raises(BoundExceeded, match="lifts"):
        list(small.lifts(10, p, g))


def test_limit_of_large_fibres():
    small = FinSets(HexcatOptions(bound=64))
    f = Function(40, 2, tuple(x % 2 for x in range(40)))
    cone = small.pullback(f, small.identity(2))
    assert cone.apex == 40
