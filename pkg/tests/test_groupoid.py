import pytest

from hexcat import (
    BoundExceeded,
    Groupoid,
    Groupoids,
    GroupoidStructure,
    HexcatOptions,
    StructuralError,
    build_groupoid,
    check_category_laws,
    delooping,
    discrete,
    empty,
    gpd_classify,
    gpd_path_object,
    gpd_pi,
    interval,
    natural_isomorphisms,
    point,
)

gpd = Groupoids()


@pytest.mark.parametrize(
    "groupoid, objects, arrows",
    [
        (empty(), 0, 0),
        (point(), 1, 1),
        (discrete(3), 3, 3),
        (interval(), 2, 4),
        (delooping(3), 1, 3),
    ],
)
def test_fixtures(groupoid: Groupoid, objects: int, arrows: int):
    assert groupoid.check() == []
    assert len(groupoid.objects) == objects
    assert len(groupoid.arrows) == arrows


def test_interval_labels():
    assert [interval().label(u) for u in range(4)] == ["id_0", "01", "01^-1", "id_1"]


def test_components():
    assert len(discrete(3).components) == 3
    assert len(interval().components) == 1


def test_not_closed():
    with pytest.raises(StructuralError, match="not closed"):
        build_groupoid(
            "broken",
            ["*"],
            [(0, "*", "*"), (1, "*", "*")],
            identity=lambda _: 0,
            compose=lambda g, f: g + f,
            inverse=lambda f: f,
        )


def test_broken_laws():
    broken = Groupoid(
        objects=("*",),
        arrows=(("id", 0, 0), ("g", 0, 0)),
        identities=(0,),
        inverses=(0, 1),
        composites=((0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)),
        name="broken",
    )
    assert "id is not a left inverse of g" not in broken.check()
    assert "g is not a left inverse of g" in broken.check()


def test_hom_sizes():
    assert len(gpd.hom(point(), interval())) == 2
    assert len(gpd.hom(interval(), delooping(2))) == 2
    assert len(gpd.hom(interval(), interval())) == 4
    assert len(gpd.hom(discrete(2), empty())) == 0
    assert len(gpd.hom(empty(), discrete(2))) == 1


def test_natural_isomorphisms():
    first, second = gpd.hom(point(), interval())
    assert len(list(natural_isomorphisms(first, second))) == 1
    assert len(list(natural_isomorphisms(first, first))) == 1


def test_classify_interval_to_point():
    (F,) = gpd.hom(interval(), point())
    verdict = gpd_classify(F)
    assert verdict.isofibration and verdict.equivalence


def test_classify_point_to_interval():
    F = gpd.hom(point(), interval())[0]
    verdict = gpd_classify(F)
    assert not verdict.isofibration
    assert verdict.equivalence
    assert verdict.counterexample == "01 has no lift at *"


def test_classify_discrete_to_point():
    (F,) = gpd.hom(discrete(2), point())
    verdict = gpd_classify(F)
    assert verdict.isofibration
    assert not verdict.equivalence


@pytest.mark.parametrize(
    "groupoid, size",
    [(discrete(2), 2), (interval(), 4), (delooping(2), 2)],
)
def test_path_object(groupoid: Groupoid, size: int):
    data = gpd_path_object(groupoid, gpd)
    assert len(data.path.objects) == size
    assert gpd.compose(data.s, data.r) == gpd.identity(groupoid)
    assert gpd.compose(data.t, data.r) == gpd.identity(groupoid)
    assert gpd_classify(data.r).equivalence


def test_terminal():
    assert gpd.terminal() == point()


def test_product():
    cone = gpd.product(interval(), delooping(2))
    assert len(cone.apex.objects) == 2
    assert len(cone.apex.arrows) == 8
    assert cone.apex.check() == []


def test_sum():
    data = gpd.sum(point(), point())
    assert len(data.obj.objects) == 2
    assert data.obj.check() == []
    assert gpd.compose(data.copair(*gpd.hom(point(), interval())), data.inl).objects == (0,)


def test_laws():
    assert check_category_laws(gpd) == []


def test_structure():
    structure = GroupoidStructure()
    (F,) = gpd.hom(interval(), point())
    assert structure.is_fibration(F)
    assert structure.is_weq(F)
    assert structure.is_fibration(gpd.terminal_map(delooping(2)))
    assert not structure.is_weq(gpd.terminal_map(delooping(2)))


def test_pi_over_point():
    (f,) = gpd.hom(delooping(2), point())
    pi = gpd_pi(f, gpd.identity(point()), gpd)
    assert len(pi.obj.objects) == 1
    assert len(pi.obj.arrows) == 2
    assert pi.proj.target == point()


@pytest.mark.parametrize(
    "source, target, count",
    [(4, 2, 2), (2, 4, 2), (3, 2, 1), (2, 2, 2), (3, 3, 3)],
)
def test_vertex_group_maps(source: int, target: int, count: int):
    assert len(gpd.hom(delooping(source), delooping(target))) == count


def test_lifts_are_lazy():
    small = Groupoids(options=HexcatOptions(bound=64))
    (p,) = small.hom(discrete(2), point())
    (g,) = small.hom(discrete(13), point())
    assert next(small.lifts(discrete(13), p, g)).objects == (0,) * 13
    with pytest.raises(BoundExceeded, match="lifts"):
        list(small.lifts(discrete(13), p, g))


def test_limit_of_large_groupoids():
    small = Groupoids(options=HexcatOptions(bound=64))
    (f,) = small.hom(discrete(30), point())
    cone = small.pullback(f, small.identity(point()))
    assert len(cone.apex.objects) == 30
