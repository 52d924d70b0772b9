"""Command-line surface for the library.

Every subcommand prints either a plain exact value, a JSON document
tagged with ``"schema": "jackalg/1"``, or a CSV dump.  Exact values are
rendered as strings; floats appear only in Monte-Carlo reports.  Exit
codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import json
import sys

import click
from gmpy2 import mpq

SCHEMA = "jackalg/1"


def _parse_partition(text, flag):
    from .partitions import Partition

    try:
        return Partition.parse(text)
    except (ValueError, TypeError):
        raise click.UsageError(f"unknown partition syntax in {flag}: {text!r}")


def _parse_exact_alpha(text):
    """Exact-path deformation parameter: integer or p/q, never a decimal."""
    if "." in text or "e" in text.lower():
        raise click.UsageError(
            "--alpha must be an exact rational like '1/4' on this subcommand"
        )
    try:
        alpha = mpq(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"--alpha is not a valid rational: {text!r}")
    if alpha <= 0:
        raise click.UsageError("--alpha must be positive")
    return alpha


def _parse_float_alpha(text):
    """Sampling-path deformation parameter: decimal float or p/q."""
    try:
        if "/" in text:
            alpha = float(mpq(text))
        else:
            alpha = float(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"--alpha is not a valid number: {text!r}")
    if alpha <= 0:
        raise click.UsageError("--alpha must be positive")
    return alpha


def _quadext_str(value) -> str:
    return f"{value.a} + {value.b}*sqrt({value.alpha})"


def _emit(document, out):
    text = json.dumps(document, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@click.group()
def main():
    """Exact Jack-deformed character computations and random-diagram
    statistics."""


@main.command()
@click.option("--mu", required=True, help='index partition, e.g. "[2,2]"')
@click.option(
    "--basis",
    type=click.Choice(["M", "R", "Mprime"]),
    default="R",
    show_default=True,
    help="generator family for the output polynomial",
)
@click.option("--out", default=None, help="write JSON here instead of stdout")
def kerov(mu, basis, out):
    """Cumulant expansion of the normalized character Ch_mu."""
    from .lassalle import compute_K, compute_L, compute_Lprime

    p = _parse_partition(mu, "--mu")
    body = {"M": compute_L, "R": compute_K, "Mprime": compute_Lprime}[basis](p)
    doc = {"schema": SCHEMA, "mu": str(p)}
    doc.update(body.to_json())
    _emit(doc, out)


@main.command()
@click.option("--mu", required=True, help='index partition, e.g. "[3]"')
@click.option("--out", default=None, help="write JSON here instead of stdout")
def lmu(mu, out):
    """Moment expansion of Ch_mu (shorthand for kerov --basis M)."""
    from .lassalle import compute_L

    p = _parse_partition(mu, "--mu")
    doc = {"schema": SCHEMA, "mu": str(p)}
    doc.update(compute_L(p).to_json())
    _emit(doc, out)


@main.command()
@click.option("--mu", required=True)
@click.option("--nu", required=True)
@click.option("--out", default=None, help="write JSON here instead of stdout")
def gconst(mu, nu, out):
    """Size-free structure constants of the product Ch_mu * Ch_nu."""
    from .structure import g_table

    pm = _parse_partition(mu, "--mu")
    pn = _parse_partition(nu, "--nu")
    table = {str(pi): coeff.to_json() for pi, coeff in g_table(pm, pn)}
    _emit(
        {"schema": SCHEMA, "mu": str(pm), "nu": str(pn), "coefficients": table},
        out,
    )


@main.command()
@click.option("--mu", required=True)
@click.option("--nu", required=True)
@click.option("--pi", "pi_", required=True)
@click.option("--n", required=True, type=int, help="common size of the three indices")
@click.option("--alpha", required=True, help="exact rational, e.g. '2' or '1/4'")
def cconst(mu, nu, pi_, n, alpha):
    """Fixed-size structure constant, padded with parts 1 up to size n."""
    from .partitions import Partition
    from .structure import c_constant

    a = _parse_exact_alpha(alpha)
    parts = {}
    for flag, text in (("--mu", mu), ("--nu", nu), ("--pi", pi_)):
        p = _parse_partition(text, flag)
        if p.size() > n:
            raise click.UsageError(f"{flag} has more than {n} boxes")
        parts[flag] = Partition(list(p.parts) + [1] * (n - p.size()))
    value = c_constant(parts["--mu"], parts["--nu"], parts["--pi"], a)
    click.echo(_quadext_str(value))


@main.command()
@click.option("--mu", required=True)
@click.option("--lam", "--lambda", "lam", required=True)
@click.option("--alpha", required=True, help="exact rational, e.g. '2' or '1/4'")
def theta(mu, lam, alpha):
    """Normalized Jack character coefficient, via the cumulant tables."""
    from . import lassalle

    pm = _parse_partition(mu, "--mu")
    pl = _parse_partition(lam, "--lambda")
    if pm.size() != pl.size():
        raise click.UsageError("--mu and --lambda must have the same size")
    a = _parse_exact_alpha(alpha)
    click.echo(str(lassalle.theta(pm, pl, a)))


@main.group()
def oracle():
    """Slow reference computations straight from the orthogonality
    construction."""


@oracle.command("theta")
@click.option("--mu", required=True)
@click.option("--lam", "--lambda", "lam", required=True)
@click.option("--alpha", required=True, help="exact rational, e.g. '2' or '1/4'")
def oracle_theta(mu, lam, alpha):
    """Same coefficient, recomputed by Gram-Schmidt in the monomial basis."""
    from .oracle import theta_oracle

    pm = _parse_partition(mu, "--mu")
    pl = _parse_partition(lam, "--lambda")
    if pm.size() != pl.size():
        raise click.UsageError("--mu and --lambda must have the same size")
    a = _parse_exact_alpha(alpha)
    if pl.size() > 8:
        raise click.UsageError("oracle path supports sizes up to 8")
    click.echo(str(theta_oracle(pm, pl, a)))


@main.command()
@click.option("--n", required=True, type=int)
@click.option("--alpha", required=True, help="exact rational, e.g. '2' or '1/4'")
@click.option("--lam", "--lambda", "lam", required=True)
def pmf(n, alpha, lam):
    """Probability of one diagram under the deformed Plancherel measure."""
    from . import measure

    a = _parse_exact_alpha(alpha)
    p = _parse_partition(lam, "--lambda")
    if p.size() != n:
        raise click.UsageError(f"--lambda must have exactly {n} boxes")
    click.echo(str(measure.pmf(p, a)))


@main.command()
@click.option("--n", required=True, type=int)
@click.option("--alpha", required=True, help="decimal float or p/q")
@click.option("--reps", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--out", default=None, help="write CSV here instead of stdout")
def sample(n, alpha, reps, seed, out):
    """Draw random diagrams of size n; one CSV row per replica."""
    from .measure import sample_growth, sampler_rng

    a = _parse_float_alpha(alpha)
    lines = []
    for rep in range(reps):
        lam = sample_growth(n, a, sampler_rng(seed, rep))
        lines.append(f"{rep},{lam}")
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--n", required=True, type=int)
@click.option("--alpha", required=True, help="decimal float or p/q")
@click.option("--reps", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option(
    "--stats",
    default="w2,w3,u1,u2,t3",
    show_default=True,
    help="comma-separated list from w2,w3,w4,u1,u2,t3,t4,sup",
)
@click.option("--threads", default=1, show_default=True, type=int)
@click.option("--out", default=None, help="write the JSON report here")
def mc(n, alpha, reps, seed, stats, threads, out):
    """Monte-Carlo study of fluctuation statistics; deterministic given
    (n, alpha, reps, seed) regardless of --threads."""
    from .asymptotics import _STAT_FUNCS, monte_carlo

    a = _parse_float_alpha(alpha)
    wanted = tuple(s.strip() for s in stats.split(",") if s.strip())
    bad = [s for s in wanted if s not in _STAT_FUNCS]
    if bad:
        raise click.UsageError(f"unknown statistics in --stats: {','.join(bad)}")
    if threads < 1:
        raise click.UsageError("--threads must be at least 1")
    report = dict(monte_carlo(n, a, reps, seed, wanted))
    report = {"schema": SCHEMA, **report}
    _emit(report, out)


@main.command()
@click.option("--lam", "--lambda", "lam", required=True)
@click.option("--alpha", required=True, help="decimal float or p/q")
@click.option("--scale", default=1.0, show_default=True, type=float)
@click.option("--out", default=None, help="write CSV here instead of stdout")
def shape(lam, alpha, scale, out):
    """Breakpoints (x, omega(x)) of the rescaled diagram profile, as CSV."""
    from .profiles import profile

    p = _parse_partition(lam, "--lambda")
    if p.size() < 1:
        raise click.UsageError("--lambda must be nonempty")
    a = _parse_float_alpha(alpha)
    text = profile(p, a, scale).to_csv()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _verify_fast():
    """Quick invariant suite: exact cross-checks on small sizes."""
    from .lassalle import check_degree_bounds, compute_K, compute_L, theta as th
    from .measure import fulman_L, fulman_M, growth_matches_pmf, pmf as pmf_
    from .oracle import theta_oracle
    from .partitions import Partition, enumerate_partitions
    from .structure import g_coefficient, verify_linear_terms_stirling

    from .algebra import GammaPoly

    # golden one-part expansions
    K2 = compute_K(Partition([2]))
    assert K2.coefficient(Partition([3])) == GammaPoly.one()
    assert K2.coefficient(Partition([2])) == GammaPoly.gamma()
    L3 = compute_L(Partition([3]))
    assert L3.coefficient(Partition([2, 2])) == GammaPoly.const(-2)
    # character values against the slow construction
    for n in range(1, 4):
        for lam in enumerate_partitions(n):
            for mu in enumerate_partitions(n):
                for alpha in (mpq(1), mpq(2), mpq(1, 4)):
                    assert th(mu, lam, alpha) == theta_oracle(mu, lam, alpha)
    # degree and parity constraints
    for n in range(1, 5):
        for mu in enumerate_partitions(n):
            check_degree_bounds(mu)
    # product structure specials
    for k in range(1, 5):
        assert g_coefficient(
            Partition([k]), Partition([k]), Partition([1] * k)
        ) == GammaPoly.const(k)
    verify_linear_terms_stirling(4)
    # measure: stationarity and growth marginal
    for n in (2, 3, 4):
        M = fulman_M(n, mpq(2))
        probs = [pmf_(lam, mpq(2)) for lam in M.states]
        for j in range(len(M.states)):
            assert sum(
                probs[i] * M.matrix[i][j] for i in range(len(M.states))
            ) == probs[j]
        assert growth_matches_pmf(n, mpq(2))
    fulman_L(3, mpq(2))


def _verify_full():
    """Exhaustive exact suite; minutes, not seconds."""
    from .lassalle import check_degree_bounds, theta as th
    from .measure import growth_matches_pmf
    from .oracle import theta_oracle
    from .partitions import enumerate_partitions
    from .structure import (
        vassilieva_closed_form,
        vassilieva_oracle,
        verify_linear_terms_stirling,
        verify_struct_const_theorem,
        verify_top_degrees,
    )

    _verify_fast()
    verify_struct_const_theorem(8)
    verify_linear_terms_stirling(6)
    verify_top_degrees(6)
    for n in range(1, 6):
        for lam in enumerate_partitions(n):
            for mu in enumerate_partitions(n):
                for alpha in (mpq(1), mpq(2), mpq(1, 4), mpq(4)):
                    assert th(mu, lam, alpha) == theta_oracle(mu, lam, alpha)
        for mu in enumerate_partitions(n):
            check_degree_bounds(mu)
            for alpha in (mpq(1), mpq(2), mpq(1, 4)):
                assert vassilieva_oracle(mu, alpha) == vassilieva_closed_form(
                    mu, alpha
                )
    for n in range(2, 7):
        assert growth_matches_pmf(n, mpq(2))


@main.command()
@click.option(
    "--level",
    type=click.Choice(["fast", "full"]),
    default="fast",
    show_default=True,
)
def verify(level):
    """Run the built-in invariant suite; exit 1 if any check fails."""
    try:
        if level == "fast":
            _verify_fast()
        else:
            _verify_full()
    except AssertionError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(1)
    click.echo(f"verification level={level}: all checks passed")


if __name__ == "__main__":
    main()
