__all__ = [
    "hexcat",
    "main",
    "error_handler",
    "load_instance",
]


import logging
from functools import wraps
from itertools import product
from typing import Any, Callable, List, Optional, TypeVar

import click

from hexcat import __version__
from .category import check_category_laws, check_functor, validate_category
from .completion import (
    Hex,
    check_pretopos,
    embed_i,
    hex_limits,
    image_factorization,
    is_cover,
    is_mono,
    quotient_eqrel,
)
from .document import Document
from .error import HexcatError, PreconditionError
from .exponential import funext_check, weak_exponential, weak_pi
from .groupoid import (
    Groupoids,
    GroupoidStructure,
    delooping,
    discrete,
    empty,
    gpd_classify,
    gpd_path_object,
    interval,
    point,
)
from .instances import BUILTIN_INSTANCES, InstanceHandle, swap_cover
from .options import HexcatOptions
from .oracle import compare_exponential, compare_with_oracle
from .path import ho_category, is_homotopy_equivalence, slice
from .relation import identity_relation, is_heq_relation, path_relation
from .report import Report, Section
from .stability import check_lambda_rho, slice_comparison, stability
from .sums import check_extensive, check_initial, check_sum, search_sum

Command = TypeVar("Command", bound=Callable[..., Any])


def error_handler(func: Command) -> Command:
    """Print library errors and exit with status 1."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except HexcatError as exc:
            click.echo(f"Error: {exc.format()}")
            click.get_current_context().exit(1)

    return wrapper  # type: ignore


def load_instance(source: str, options: HexcatOptions) -> InstanceHandle:
    """Return a builtin instance by name, or the instance declared by a file."""
    if source in BUILTIN_INSTANCES:
        return BUILTIN_INSTANCES[source](options)
    return Document(path=source, options=options).instance()


def emit(ctx: click.Context, report: Report):
    click.echo(report.render(), nl=False)
    ctx.exit(0 if report.passed else 1)


def first(items: List[str]) -> Optional[str]:
    return items[0] if items else None


@click.group(context_settings={"help_option_names": ("-h", "--help")})
@click.option(
    "--bound",
    metavar="<n>",
    type=click.IntRange(min=1),
    help="Cap on every enumeration.",
)
@click.option("--verbose", is_flag=True, help="Log witness searches.")
@click.version_option(
    __version__,
    "-V",
    "--version",
    message="%(prog)s v%(version)s",
)
@click.pass_context
def hexcat(ctx: click.Context, bound: Optional[int], verbose: bool):
    """Path categories and their homotopy exact completion."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = HexcatOptions() if bound is None else HexcatOptions(bound=bound)


@hexcat.command()
@click.argument("source")
@click.pass_context
@error_handler
def validate(ctx: click.Context, source: str):
    """Check the category table and the category laws."""
    report = Report(f"validate {source}")

    if source in BUILTIN_INSTANCES:
        instance = load_instance(source, ctx.obj)
        section = report.section("Category")
        section.count("objects", len(instance.objects()))
        violations = check_category_laws(instance.category)
        section.check("category laws", not violations, counterexample=first(violations))
        return emit(ctx, report)

    document = Document(path=source, options=ctx.obj)
    if document.kind == "gpd":
        groupoid = document.groupoid
        section = report.section("Groupoid")
        section.count("objects", len(groupoid.objects))
        section.count("arrows", len(groupoid.arrows))
        problems = groupoid.check()
        section.check("groupoid laws", not problems, counterexample=first(problems))
        return emit(ctx, report)

    cat = document.category
    result = validate_category(cat)
    section = report.section("Category")
    section.count("objects", len(cat.object_names))
    section.count("morphisms", len(cat.morphism_table))
    section.check("table", not result.structural, counterexample=first(result.structural))
    if not result.structural:
        section.check(
            "category laws",
            not result.violations,
            counterexample=first(result.violations),
        )
    emit(ctx, report)


@hexcat.command("check-path-axioms")
@click.argument("source")
@click.pass_context
@error_handler
def check_path_axioms(ctx: click.Context, source: str):
    """Check the path category axioms on the instance."""
    instance = load_instance(source, ctx.obj)
    report = Report(f"check-path-axioms {source}")
    section = report.section("Axioms")
    section.count("objects", len(instance.objects()))
    for result in instance.check().results:
        section.check(
            f"{result.axiom}: {result.title}",
            result.passed,
            counterexample=result.counterexample,
        )
    emit(ctx, report)


@hexcat.command()
@click.argument("source")
@click.pass_context
@error_handler
def hocat(ctx: click.Context, source: str):
    """Compute the homotopy category and compare weak and homotopy equivalences."""
    instance = load_instance(source, ctx.obj)
    instance.require_axioms()
    ps, cat = instance.ps, instance.category
    quotient, _ = ho_category(ps)

    report = Report(f"hocat {source}")
    section = report.section("Homotopy category")
    section.count("objects", len(quotient.object_names))
    section.count("morphisms", len(list(cat.morphisms())))
    section.count("classes", len(quotient.morphism_table))

    disagreements = [
        cat.describe(f)
        for f in cat.morphisms()
        if ps.is_weq(f) != (is_homotopy_equivalence(ps, f) is not None)
    ]
    section.check(
        "weak equivalences are the homotopy equivalences",
        not disagreements,
        counterexample=first(disagreements),
    )
    violations = check_category_laws(quotient)
    section.check("quotient laws", not violations, counterexample=first(violations))
    emit(ctx, report)


@hexcat.group("hex")
def hex_group():
    """Homotopy exact completion."""


def _hex(ctx: click.Context, source: str) -> Hex:
    instance = load_instance(source, ctx.obj)
    instance.require_axioms()
    return instance.hex()


@hex_group.command("build")
@click.argument("source")
@click.pass_context
@error_handler
def hex_build(ctx: click.Context, source: str):
    """Enumerate Hex and check its category structure."""
    hex = _hex(ctx, source)
    objects = hex.objects()

    report = Report(f"hex build {source}")
    section = report.section("Hex")
    section.count("objects", len(objects))
    section.count("morphisms", len(list(hex.morphisms())))

    violations = check_category_laws(hex)
    section.check("category laws", not violations, counterexample=first(violations))
    terminal = hex_limits(hex, "terminal").apex
    crowded = [hex.describe_object(a) for a in objects if len(hex.hom(a, terminal)) != 1]
    section.check(
        "terminal object",
        not crowded,
        detail=hex.describe_object(terminal),
        counterexample=first(crowded),
    )
    problems = check_functor(embed_i(hex))
    section.check("embedding is a functor", not problems, counterexample=first(problems))

    relations = report.section("Relations")
    for a in objects:
        verdict = is_heq_relation(hex.ps, a.carrier, a.rho)
        relations.check(
            hex.describe_object(a),
            verdict.passed,
            counterexample=first(verdict.failed),
        )
    emit(ctx, report)


@hex_group.command("check-exact")
@click.argument("source")
@click.pass_context
@error_handler
def hex_check_exact(ctx: click.Context, source: str):
    """Check image factorizations and effective quotients in Hex."""
    hex = _hex(ctx, source)
    base = hex.base
    objects = hex.objects()
    report = Report(f"hex check-exact {source}")

    images = report.section("Images")
    failures: List[str] = []
    count = 0
    for f in hex.morphisms():
        count += 1
        fact = image_factorization(hex, f)
        if not (
            is_cover(hex, fact.cover)
            and is_mono(hex, fact.mono)
            and hex.compose(fact.mono, fact.cover) == f
        ):
            failures.append(hex.describe(f))
    images.count("morphisms", count)
    images.check("cover then mono", not failures, counterexample=first(failures))

    quotients = report.section("Quotients")
    failures = []
    count = 0
    for a, b in product(objects, repeat=2):
        if a.carrier != b.carrier:
            continue
        if next(base.lifts(a.obj, b.rho, a.rho), None) is None:
            continue
        count += 1
        quotient = quotient_eqrel(hex, a, b.rho)
        if not (is_cover(hex, quotient.cover) and quotient.kernel_matches):
            failures.append(f"{hex.describe_object(a)} by {base.describe(b.rho)}")
    quotients.count("relations", count)
    quotients.check(
        "quotients are effective",
        not failures,
        counterexample=first(failures),
    )
    emit(ctx, report)


@hex_group.command("compare-oracle")
@click.argument("source")
@click.pass_context
@error_handler
def hex_compare_oracle(ctx: click.Context, source: str):
    """Compare Hex of a trivial structure with the classical exact completion."""
    instance = load_instance(source, ctx.obj)
    if instance.kind not in ("trivial-lex", "finite-sets"):
        raise PreconditionError("The oracle only covers instances with trivial structure.")
    hex = instance.hex()
    oracle = instance.oracle()
    verdict = compare_with_oracle(hex, oracle)

    report = Report(f"hex compare-oracle {source}")
    section = report.section("Oracle")
    section.count("hex objects", len(hex.objects()))
    section.count("oracle objects", len(oracle.objects()))
    cx = first(verdict.counterexamples)
    section.check("full", verdict.full, counterexample=None if verdict.full else cx)
    section.check("faithful", verdict.faithful, counterexample=None if verdict.faithful else cx)
    section.check(
        "essentially surjective",
        verdict.essentially_surjective,
        counterexample=None if verdict.essentially_surjective else cx,
    )
    if instance.kind == "finite-sets":
        exponentials = report.section("Exponentials")
        pairs = list(product(oracle.objects(), repeat=2))
        mismatched = [
            f"{oracle.describe_object(a)}^{oracle.describe_object(b)}"
            for a, b in pairs
            if not compare_exponential(hex, oracle, a, b)
        ]
        exponentials.count("pairs", len(pairs))
        exponentials.check(
            "classical exponentials agree",
            not mismatched,
            counterexample=first(mismatched),
        )
    emit(ctx, report)


@hexcat.group()
def structure():
    """Sums, extensivity, function spaces and stability."""


def _sums(section: Section, instance: InstanceHandle):
    ps, cat = instance.ps, instance.category
    objects = list(instance.objects())
    zero = cat.initial()
    if zero is not None:
        verdict = check_initial(ps, zero, objects)
        section.check(
            "homotopy initial object",
            verdict.initial and verdict.agree,
            detail=cat.describe_object(zero),
            counterexample=verdict.counterexample,
        )
    for a, b in product(objects, repeat=2):
        candidate = cat.sum(a, b) or search_sum(ps, a, b, objects)
        name = f"{cat.describe_object(a)} + {cat.describe_object(b)}"
        if candidate is None:
            section.check(name, False, counterexample="no sum on the fragment")
            continue
        verdict = check_sum(ps, a, b, candidate, objects)
        section.check(
            name,
            verdict.is_sum and verdict.agree,
            detail=cat.describe_object(candidate.obj),
            counterexample=verdict.counterexample,
        )


def _extensive(section: Section, instance: InstanceHandle):
    verdict = check_extensive(instance.ps)
    for name, passed in verdict.conditions.items():
        section.check(name, passed, counterexample=verdict.counterexamples.get(name))
    section.check("characterizations agree", verdict.agree)
    if instance.kind in ("finite-sets", "finite-groupoids"):
        hex_verdict = check_pretopos(instance.hex())
        section.check(
            "Hex is a pretopos",
            hex_verdict.extensive,
            counterexample=next(iter(hex_verdict.counterexamples.values()), None),
        )


def _pi(section: Section, instance: InstanceHandle):
    ps, cat = instance.ps, instance.category
    objects = list(instance.objects())
    for x, y in product(objects, repeat=2):
        name = f"{cat.describe_object(x)}^{cat.describe_object(y)}"
        mode = "verify" if cat.exponential(x, y) is not None else "search"
        verdict = weak_exponential(ps, x, y, mode=mode, objects=objects)
        section.check(
            name,
            verdict.weak,
            detail="strong" if verdict.strong else "weak",
            counterexample=verdict.counterexample,
        )
    for i in objects:
        for alpha in ps.fibrations_into(i, objects):
            for f in ps.fibrations_into(cat.dom(alpha), objects):
                verdict = weak_pi(ps, f, alpha, objects=objects)
                section.check(
                    f"Pi {cat.describe(f)} along {cat.describe(alpha)}",
                    verdict.weak,
                    detail="strong" if verdict.strong else "weak",
                    counterexample=verdict.counterexample,
                )


def _funext(section: Section, instance: InstanceHandle):
    ps, cat = instance.ps, instance.category
    objects = list(instance.objects())
    for x, y in product(objects, repeat=2):
        if cat.exponential(x, y) is None:
            continue
        verdict = funext_check(ps, x, y, objects=objects)
        section.check(
            f"{cat.describe_object(x)}^{cat.describe_object(y)}",
            verdict.agree,
            detail=f"e {'found' if verdict.e is not None else 'missing'}, "
            f"{'strong' if verdict.strong else 'not strong'}",
        )


def _stability(section: Section, instance: InstanceHandle):
    ps, cat = instance.ps, instance.category
    hex = instance.hex()
    for x in instance.objects():
        sliced = Hex.of(slice(ps, x))
        for t in sliced.objects():
            name = f"{sliced.describe_object(t)} over {cat.describe_object(x)}"
            stable = stability(sliced, t)
            comparison = slice_comparison(hex, sliced, t)
            section.check(
                name,
                comparison.restored_iso == stable.stable,
                detail="stable" if stable.stable else f"unstable at {stable.loop}",
            )
        base = path_relation(ps, x)
        for s in hex.objects():
            for m in hex.hom(s, base):
                if ps.is_fibration(m.f):
                    section.check(
                        f"lambda rho of {hex.describe(m)} on {hex.describe_object(s)}",
                        check_lambda_rho(hex, sliced, s, m.f),
                    )


@structure.command("check")
@click.argument("source")
@click.option("--sums", is_flag=True, help="Check initial object and sums.")
@click.option("--extensive", is_flag=True, help="Check extensivity.")
@click.option("--pi", is_flag=True, help="Check exponentials and dependent products.")
@click.option("--funext", is_flag=True, help="Compare function extensionality with strength.")
@click.option("--stability", "stable", is_flag=True, help="Check stable objects over slices.")
@click.pass_context
@error_handler
def structure_check(
    ctx: click.Context,
    source: str,
    sums: bool,
    extensive: bool,
    pi: bool,
    funext: bool,
    stable: bool,
):
    """Check the requested structure on the instance."""
    instance = load_instance(source, ctx.obj)
    instance.require_axioms()
    report = Report(f"structure check {source}")

    requested = [
        ("Sums", sums, _sums),
        ("Extensivity", extensive, _extensive),
        ("Function spaces", pi, _pi),
        ("Function extensionality", funext, _funext),
        ("Stability", stable, _stability),
    ]
    for title, enabled, run in requested:
        if enabled:
            run(report.section(title), instance)
    emit(ctx, report)


@hexcat.group()
def gpd():
    """Finite groupoids."""


@gpd.command("demo")
@click.pass_context
@error_handler
def gpd_demo(ctx: click.Context):
    """Path objects, classification, dependent products and a swapping loop."""
    options = ctx.obj
    category = Groupoids(options=options)
    structure = GroupoidStructure(category)
    report = Report("gpd demo")

    paths = report.section("Path objects")
    for groupoid, expected in [(discrete(2), 2), (interval(), 4), (delooping(2), 2)]:
        data = gpd_path_object(groupoid, category)
        size = len(data.path.objects)
        paths.check(repr(groupoid), size == expected, detail=f"{size} objects")

    classification = report.section("Classification")
    one, line = point(), interval()
    for F in list(category.hom(line, one)) + list(category.hom(one, line)):
        verdict = gpd_classify(F)
        inverse = is_homotopy_equivalence(structure, F)
        classification.check(
            repr(F),
            verdict.equivalence == (inverse is not None),
            detail=f"isofibration {verdict.isofibration}, equivalence {verdict.equivalence}",
            counterexample=verdict.counterexample,
        )

    pis = report.section("Dependent products")
    alpha = category.terminal_map(discrete(2))
    for f in structure.fibrations_into(discrete(2), [empty(), one, discrete(2), line]):
        verdict = weak_pi(structure, f, alpha)
        pis.check(
            f"Pi {category.describe(f)}",
            verdict.weak and verdict.strong,
            counterexample=verdict.counterexample,
        )

    loops = report.section("Stability")
    sliced, cover = swap_cover(options)
    hex_x = Hex.of(sliced, carriers=[cover])
    verdict = stability(hex_x, identity_relation(sliced, cover))
    loops.check(
        "swap cover is unstable",
        not verdict.stable and verdict.loop is not None,
        detail=verdict.loop,
    )
    emit(ctx, report)


def main():
    """Invoke the command-line entrypoint."""
    hexcat(prog_name="hexcat")  # type: ignore
