"""Command line surface: build objects from JSON files and run verifications.

Exit codes: 0 verified / ok, 1 verification failed, 2 input or hypothesis
error, 3 resource cap exceeded.
"""

from __future__ import annotations

import functools
import json
import sys
from importlib import resources

import click

from .engine import DEFAULT_DEGREE_CAP, DEFAULT_DIM_CAP, normal_form_engine
from .errors import CapError, InputError, QuiverfoldError
from .ideals import monoid_closure, vertex_ideal
from .linalg import parse_field
from .presentations import presentation_from_json
from .quiver import fold, quiver_from_json, triple_from_json, triple_to_json
from .verify import DEFAULT_ELEMENT_CAP, run_prop_a, run_theorem_b
from .weyl import enumerate_weyl, weyl_report_json

PRESETS = ("a3_swap", "d4_rot3", "pi_a2", "pi_b2")


def _load_json_input(path: str | None, preset: str | None) -> tuple[dict, str]:
    if (path is None) == (preset is None):
        raise InputError("provide exactly one of an input file or --preset")
    if preset is not None:
        if preset not in PRESETS:
            raise InputError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
        text = resources.files("quiverfold").joinpath(f"presets/{preset}.json").read_text()
        return json.loads(text), preset
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh), path
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _exit_codes(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CapError as exc:
            click.echo(f"cap exceeded: {exc}", err=True)
            sys.exit(3)
        except (InputError, QuiverfoldError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _emit_report(report, as_json: bool):
    if as_json:
        click.echo(json.dumps(report.to_json(), indent=2))
    else:
        click.echo(report.to_text())
    sys.exit(0 if report.passed else 1)


field_option = click.option(
    "--field", "field_tag", default="f2", show_default=True, help="coefficient field: f<p> or q"
)
degree_cap_option = click.option(
    "--degree-cap", default=DEFAULT_DEGREE_CAP, show_default=True, type=int
)
dim_cap_option = click.option("--dim-cap", default=DEFAULT_DIM_CAP, show_default=True, type=int)
element_cap_option = click.option(
    "--element-cap", default=DEFAULT_ELEMENT_CAP, show_default=True, type=int
)
json_option = click.option("--json", "as_json", is_flag=True, help="emit machine-readable JSON")
preset_option = click.option("--preset", default=None, help=f"bundled instance: {', '.join(PRESETS)}")


@click.group()
def main():
    """Exact computations with folded quivers and their preprojective algebras."""


@main.command("fold")
@click.argument("quiver_file", required=False)
@preset_option
@json_option
@_exit_codes
def cmd_fold(quiver_file, preset, as_json):
    """Fold a quiver with group action into a Cartan triple."""
    data, _ = _load_json_input(quiver_file, preset)
    quiver, action = quiver_from_json(data)
    if action is None:
        raise InputError("the quiver file carries no group action")
    result = fold(quiver, action)
    payload = triple_to_json(result.triple)
    if as_json:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(f"index: {payload['index']}")
        click.echo(f"C: {payload['C']}")
        click.echo(f"D: {payload['D']}")
        click.echo(f"Omega: {payload['Omega']}")
        click.echo(
            "orbits: "
            + ", ".join(f"{k}={list(v)}" for k, v in result.orbit_members.items())
        )


@main.group("verify")
def verify_group():
    """Machine-verify the folding diagrams on an instance."""


@verify_group.command("prop-a")
@click.argument("quiver_file", required=False)
@preset_option
@field_option
@degree_cap_option
@dim_cap_option
@element_cap_option
@json_option
@_exit_codes
def cmd_verify_prop_a(quiver_file, preset, field_tag, degree_cap, dim_cap, element_cap, as_json):
    """Check the commuting square of Weyl-group and ideal-monoid bijections."""
    data, name = _load_json_input(quiver_file, preset)
    quiver, action = quiver_from_json(data)
    if action is None:
        raise InputError("the quiver file carries no group action")
    field = parse_field(field_tag)
    report = run_prop_a(
        quiver,
        action,
        field,
        degree_cap,
        dim_cap,
        element_cap,
        instance_name=f"{name}/{field.key()}",
    )
    _emit_report(report, as_json)


@verify_group.command("theorem-b")
@click.argument("quiver_file", required=False)
@preset_option
@field_option
@degree_cap_option
@dim_cap_option
@element_cap_option
@json_option
@_exit_codes
def cmd_verify_theorem_b(quiver_file, preset, field_tag, degree_cap, dim_cap, element_cap, as_json):
    """Check every finite consequence of the skew-group Morita correspondence."""
    data, name = _load_json_input(quiver_file, preset)
    quiver, action = quiver_from_json(data)
    if action is None:
        raise InputError("the quiver file carries no group action")
    field = parse_field(field_tag)
    report = run_theorem_b(
        quiver,
        action,
        field,
        degree_cap,
        dim_cap,
        element_cap,
        instance_name=f"{name}/{field.key()}",
    )
    _emit_report(report, as_json)


@main.command("algebra")
@click.argument("spec_file", required=False)
@preset_option
@field_option
@degree_cap_option
@dim_cap_option
@json_option
@_exit_codes
def cmd_algebra(spec_file, preset, field_tag, degree_cap, dim_cap, as_json):
    """Realize a presented algebra on its normal words and dump it."""
    data, _ = _load_json_input(spec_file, preset)
    field = parse_field(field_tag)
    presentation = presentation_from_json(data, field)
    algebra = normal_form_engine(presentation, degree_cap, dim_cap)
    if as_json:
        click.echo(json.dumps(algebra.to_json(), indent=2))
    else:
        click.echo(f"field: {field.key()}")
        click.echo(f"dimension: {algebra.dim}")
        click.echo("basis: " + ", ".join(algebra.basis_labels))


@main.command("monoid")
@click.argument("spec_file", required=False)
@preset_option
@click.option(
    "--gens",
    default=None,
    help="comma-separated vertex labels (default: every vertex)",
)
@field_option
@degree_cap_option
@dim_cap_option
@element_cap_option
@json_option
@_exit_codes
def cmd_monoid(spec_file, preset, gens, field_tag, degree_cap, dim_cap, element_cap, as_json):
    """Generate the monoid of ideals attached to the vertices of an algebra."""
    data, _ = _load_json_input(spec_file, preset)
    field = parse_field(field_tag)
    presentation = presentation_from_json(data, field)
    algebra = normal_form_engine(presentation, degree_cap, dim_cap)
    labels = (
        [g.strip() for g in gens.split(",") if g.strip()]
        if gens
        else list(presentation.quiver.vertices)
    )
    for label in labels:
        if label not in presentation.quiver.vertices:
            raise InputError(f"unknown vertex label {label!r}")
    generators = [(label, vertex_ideal(algebra, label)) for label in labels]
    monoid = monoid_closure(algebra, generators, element_cap)
    if as_json:
        click.echo(json.dumps(monoid.to_json(), indent=2))
    else:
        click.echo(f"elements: {monoid.size}")
        click.echo(f"generators: {', '.join(labels)}")
        click.echo(f"zero ideal present: {any(e.is_zero for e in monoid.elements)}")
        click.echo(
            "dimensions: " + ", ".join(str(e.dim) for e in monoid.elements)
        )


@main.command("weyl")
@click.argument("cartan_file", required=False)
@preset_option
@element_cap_option
@json_option
@_exit_codes
def cmd_weyl(cartan_file, preset, element_cap, as_json):
    """Enumerate the Weyl group of a Cartan matrix file."""
    data, _ = _load_json_input(cartan_file, preset)
    triple = triple_from_json(data)
    group = enumerate_weyl(triple.c_matrix, element_cap)
    payload = weyl_report_json(group)
    if as_json:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(f"order: {payload['order']}")
        click.echo(f"length histogram: {payload['length_histogram']}")
        click.echo(f"longest reduced word: {payload['longest_reduced_word']}")


if __name__ == "__main__":
    main()
