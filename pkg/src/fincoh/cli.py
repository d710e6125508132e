"""Command-line driver: ``fincoh compute | verify | sweep | show-group``.

Exit codes: 0 success, 2 usage or parse error, 3 resource cap exceeded,
4 a mandatory verification failed.
"""
from __future__ import annotations

import json
import sys

import click

from .engine import CohomologyEngine, TheoryTag, compute as compute_group
from .groups import is_oriented, parse_group, sign_homomorphism, two_torsion_data
from .modules import parse_module
from .resolutions import DEFAULT_MAX_BAR_DEGREE, DEFAULT_MAX_TERM_SIZE, ResourceCapError
from .verify import CLAIMS, CORPUS_GROUPS, CORPUS_MODULES, VerificationReport, run_claim, sweep as run_sweep

EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_FAILED = 4


def parse_degrees(text: str) -> list[int]:
    """``a..b`` (inclusive) or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise click.BadParameter(f"expected 'a..b' or an integer, got {text!r}", param_hint="--degrees")
    if lo > hi:
        raise click.BadParameter(f"empty range {text!r}", param_hint="--degrees")
    return list(range(lo, hi + 1))


def _load(group: str, module: str | None):
    try:
        G = parse_group(group)
        M = parse_module(G, module) if module is not None else None
    except (ValueError, OSError, KeyError) as exc:
        raise click.UsageError(str(exc))
    return G, M


def _emit(obj, fmt: str, lines: list[str]) -> None:
    if fmt == "json":
        click.echo(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        for line in lines:
            click.echo(line)


def _caps(max_bar_degree: int, max_term_size: int) -> dict:
    return {"max_bar_degree": max_bar_degree, "max_term_size": max_term_size}


_cap_options = [
    click.option("--max-bar-degree", type=int, default=DEFAULT_MAX_BAR_DEGREE, show_default=True,
                 help="Highest bar-resolution degree that may be built."),
    click.option("--max-term-size", type=int, default=DEFAULT_MAX_TERM_SIZE, show_default=True,
                 help="Largest bar term (basis elements) that may be built."),
]


def cap_options(f):
    for opt in reversed(_cap_options):
        f = opt(f)
    return f


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Exact (co)homology of finite groups and certificates for the Koszul-type duality."""


@main.command()
@click.option("--group", "group", required=True, help="cyclic:m, dihedral:m, sym:k, klein4, quaternion, product:a,b, file:path")
@click.option("--module", "module", default="trivial:Z", show_default=True,
              help="trivial:Z, trivial:Z/m, twistZ, regular, sum:a+b, file:path")
@click.option("--theory", type=click.Choice([t.value for t in TheoryTag]), required=True)
@click.option("--degrees", default="0..2", show_default=True, help="Inclusive range a..b.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@cap_options
def compute(group, module, theory, degrees, fmt, max_bar_degree, max_term_size):
    """Compute one theory over a range of degrees."""
    degs = parse_degrees(degrees)
    tag = TheoryTag(theory)
    if tag is not TheoryTag.TATE and degs[0] < 0:
        raise click.UsageError("negative degrees are only meaningful for --theory tate")
    G, M = _load(group, module)
    E = CohomologyEngine(G, M, **_caps(max_bar_degree, max_term_size))
    results = []
    try:
        for k in degs:
            if tag is TheoryTag.KAPPA_HOMOLOGY and k > G.n:
                raise click.UsageError(f"kappa-homology degrees run from 0 to {G.n}")
            results.append(compute_group(G, M, tag, k, engine=E))
    except ResourceCapError as exc:
        click.echo(f"resource cap: {exc}", err=True)
        sys.exit(EXIT_CAP)
    _emit([r.to_json() for r in results], fmt, [str(r) for r in results])


def _report_exit(reports: list[VerificationReport], fmt: str, emit_witnesses: bool) -> None:
    _emit([r.to_json(emit_witnesses) for r in reports], fmt, [r.line() for r in reports])
    if not all(r.passed for r in reports):
        sys.exit(EXIT_FAILED)


@main.command()
@click.argument("claim")
@click.option("--group", "group", default=None, help="Group spec; omit to run over the corpus.")
@click.option("--module", "module", default=None, help="Module spec; omit to run over the corpus modules.")
@click.option("--p", "p", type=int, default=None, help="Odd prime for the cor43 range.")
@click.option("--max-order", type=int, default=8, show_default=True, help="Largest corpus group order.")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--emit-witnesses", is_flag=True, help="Include witness matrices in JSON output.")
@cap_options
def verify(claim, group, module, p, max_order, jobs, fmt, emit_witnesses, max_bar_degree, max_term_size):
    """Verify CLAIM (one of duality, ox2, cor601, cor43, lambda2, theta, counterexample, vanishing, all)."""
    if claim != "all" and claim not in CLAIMS:
        raise click.UsageError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS + ('all',))}")
    caps = _caps(max_bar_degree, max_term_size)
    if group is not None:
        _load(group, module)
    try:
        if claim == "counterexample":
            reports = run_claim(claim)
        elif group is not None and claim != "all":
            if module is None and claim not in ("lambda2", "theta"):
                reports = [r for ms in CORPUS_MODULES for r in run_claim(claim, group, ms, p, **caps)]
            else:
                reports = run_claim(claim, group, module, p, **caps)
        else:
            claims = CLAIMS if claim == "all" else (claim,)
            groups = (group,) if group else CORPUS_GROUPS
            modules = (module,) if module else CORPUS_MODULES
            reports = run_sweep(claims, max_order, jobs, groups, modules, **caps)
    except ResourceCapError as exc:
        click.echo(f"resource cap: {exc}", err=True)
        sys.exit(EXIT_CAP)
    _report_exit(reports, fmt, emit_witnesses)


@main.command()
@click.option("--claims", default="all", show_default=True, help="Comma-separated claims or 'all'.")
@click.option("--max-order", type=int, default=8, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--emit-witnesses", is_flag=True)
@cap_options
def sweep(claims, max_order, jobs, fmt, emit_witnesses, max_bar_degree, max_term_size):
    """Run claims over the whole corpus."""
    names = CLAIMS if claims == "all" else tuple(c.strip() for c in claims.split(","))
    unknown = [c for c in names if c not in CLAIMS]
    if unknown:
        raise click.UsageError(f"unknown claim {unknown[0]!r}")
    try:
        reports = run_sweep(names, max_order, jobs, **_caps(max_bar_degree, max_term_size))
    except ResourceCapError as exc:
        click.echo(f"resource cap: {exc}", err=True)
        sys.exit(EXIT_CAP)
    _report_exit(reports, fmt, emit_witnesses)


@main.command("show-group")
@click.argument("spec")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def show_group(spec, fmt):
    """Order, element orders, sign character, involutions and inverse-pair orbits."""
    G, _ = _load(spec, None)
    eps = sign_homomorphism(G)
    tt = two_torsion_data(G)
    info = {
        "name": G.name,
        "order": G.n,
        "element_orders": list(G.orders),
        "sign": list(eps.values),
        "involutions": list(tt.involutions),
        "inverse_pair_orbits": [{"orbit": list(o), "section": s} for o, s in zip(tt.orbits, tt.section)],
        "oriented": is_oriented(G),
    }
    lines = [
        f"group {G.name}, order {G.n}",
        "element orders: " + " ".join(f"{g}:{o}" for g, o in enumerate(G.orders)),
        "sign: " + " ".join(f"{g}:{'+' if e > 0 else '-'}1" for g, e in enumerate(eps.values)),
        "involutions: " + (" ".join(map(str, tt.involutions)) or "none"),
        "inverse-pair orbits: " + (" ".join(f"{{{a},{b}}}->{s}" for (a, b), s in zip(tt.orbits, tt.section)) or "none"),
        "oriented" if info["oriented"] else "non-oriented",
    ]
    _emit(info, fmt, lines)


if __name__ == "__main__":
    main()
