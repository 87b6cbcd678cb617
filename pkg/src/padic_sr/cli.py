"""Command-line interface: analysis, certification, graph validation,
conductor certificates, prime-to-p signatures, and batch grids.

All numeric output is exact: rationals are rendered as "num/den" strings.
Exit codes: 0 success / all certified, 1 violations or failed certification,
2 usage errors.

Environment overrides: PADIC_SR_TRUNCATION (series truncation length),
PADIC_SR_HENSEL_DEPTH (unit-power test depth).
"""

from __future__ import annotations

import json
import sys

import click

from .analyzer import (
    analyze,
    branch_signature,
    certify_tail,
    conductor_bound,
    stab_field_tower,
)
from .errors import ArtifactError
from .graph import (
    DecoratedGraph,
    check_vanishing_cycles,
    export_graph,
    tail_invariant_checks,
    validate_structure,
)
from .metacyclic import MetacyclicSpec, signature_solver


def _echo_json(doc, path=None):
    text = json.dumps(doc, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _fail(exc: ArtifactError):
    click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
    sys.exit(1)


@click.group()
def main():
    """Stable reduction of three-point cyclic p^n-covers of the line."""


@main.command("analyze")
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--truncation", type=int, default=None,
              help="series truncation length (default max(p+1, 2p))")
@click.option("--json", "json_path", type=click.Path(writable=True),
              default=None, help="write the report to this file")
@click.option("--dot", "dot_path", type=click.Path(writable=True),
              default=None, help="write the reduction graph in DOT format")
def analyze_cmd(p, n, a, b, truncation, json_path, dot_path):
    """Full self-certifying report for y^(p^n) = x^a (x-1)^b."""
    try:
        report = analyze(p, n, a, b, truncation)
    except ArtifactError as exc:
        _fail(exc)
    _echo_json(report, json_path)
    if json_path:
        click.echo(f"report written to {json_path}")
    if dot_path:
        g = DecoratedGraph.from_json(report["graph"])
        with open(dot_path, "w") as fh:
            fh.write(export_graph(g, "dot"))
        click.echo(f"graph written to {dot_path}")
    sys.exit(0 if report["certified"] else 1)


@main.command("certify")
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--truncation", type=int, default=None)
def certify_cmd(p, n, a, b, truncation):
    """Certify the reduction type of the new etale tail only."""
    try:
        spec = branch_signature(p, n, a, b)
        verdict = certify_tail(spec, truncation)
    except ArtifactError as exc:
        _fail(exc)
    _echo_json({"spec": spec.to_json(), "certificate": verdict.to_json()})
    sys.exit(0 if verdict.kind.startswith("Splits") else 1)


@main.command("validate-graph")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def validate_graph_cmd(file):
    """Check the structural rules on a decorated graph JSON file."""
    with open(file) as fh:
        doc = json.load(fh)
    try:
        g = DecoratedGraph.from_json(doc)
    except (KeyError, ValueError) as exc:
        click.echo(f"error: malformed graph file: {exc}", err=True)
        sys.exit(1)
    violations = validate_structure(g) + tail_invariant_checks(g)
    out = {"violations": [{"code": c, "detail": d} for c, d in violations]}
    try:
        out["vanishing_cycles_residual"] = str(check_vanishing_cycles(g))
    except ArtifactError:
        pass
    _echo_json(out)
    sys.exit(0 if not violations else 1)


@main.command("conductor")
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
def conductor_cmd(p, n, a, b):
    """Field tower of the stable model and the conductor certificate."""
    try:
        spec = branch_signature(p, n, a, b)
        ft = stab_field_tower(spec)
        cb = conductor_bound(ft, n)
    except ArtifactError as exc:
        _fail(exc)
    _echo_json({
        "tower": ft.to_json(),
        "vanishes_at_n": cb["vanishes_at_n"],
        "conductor": cb["conductor"].to_json(),
        "detail": cb["detail"],
    })
    sys.exit(0 if cb["vanishes_at_n"] else 1)


@main.command("signature")
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--a1", type=int, required=True)
@click.option("--a2", type=int, required=True)
@click.option("--a3", type=int, required=True)
def signature_cmd(p, n, m, a1, a2, a3):
    """Deformation-datum signatures for a nontrivial prime-to-p action."""
    try:
        spec = MetacyclicSpec(p, n, m, (a1, a2, a3))
        sol = signature_solver(spec)
    except ArtifactError as exc:
        _fail(exc)
    _echo_json({"spec": spec.to_json(), "signature": sol.to_json()})
    sys.exit(0)


def _batch_pairs(p, n):
    """A few admissible (a, b, s) per degree: full case plus one pair per
    partial s, avoiding degenerate square radicands when p = 2."""
    out = []
    if p > 2:
        out.append((1, 1, n))  # full case
    for s in range(1, n):
        b0 = 3 if p != 3 else 4
        out.append((1, b0 * p ** (n - s), s))
    return out


@main.command("batch")
@click.option("--p", type=int, required=True)
@click.option("--n-max", type=int, required=True)
@click.option("--truncation", type=int, default=None)
def batch_cmd(p, n_max, truncation):
    """Analyze a grid of covers and print a summary table."""
    rows = []
    all_ok = True
    n_min = 2 if p == 2 else 1
    for n in range(n_min, n_max + 1):
        for a, b, s in _batch_pairs(p, n):
            try:
                rep = analyze(p, n, a, b, truncation)
                ok = rep["certified"]
                kind = rep["certificate"]["kind"]
                cond = rep["conductor"]["conductor"]["value"]
            except ArtifactError as exc:
                ok, kind, cond = False, type(exc).__name__, "-"
            all_ok = all_ok and ok
            rows.append((p, n, s, a, b, kind, cond,
                         "certified" if ok else "FAILED"))
    header = ("p", "n", "s", "a", "b", "verdict", "conductor", "status")
    widths = [max(len(str(r[i])) for r in rows + [header])
              for i in range(len(header))]
    for r in [header] + rows:
        click.echo("  ".join(str(x).ljust(w) for x, w in zip(r, widths)))
    sys.exit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
