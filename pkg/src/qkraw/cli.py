"""
Command-line front end.

Global flags (``--q``, ``--trunc``, ``--tol``, ``--json``, ``--seed``) may be
given before the command group or on the leaf command; the leaf wins.
Exit codes: 0 success / suite pass, 1 suite failure, 2 usage or parameter
error.
"""

from __future__ import annotations

import sys

import click

from . import ncalg, qpoly, qscalar
from .corep import h_element, t_factor
from .emit import emit
from .reps import OutsideSafeWindow, apply_matrix_element
from .suites import SUITES, SuiteParameterError, SuiteParams, run_suite

DEFAULTS = {"q": 0.6, "trunc": 24, "tol": 1e-10, "json": False, "seed": 0}


def _int_tuple(text, name):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}", param_hint=name) from None


def _global_options(f):
    f = click.option("--seed", type=int, default=None, help="Seed for randomized suites (default 0).")(f)
    f = click.option("--json", "as_json", is_flag=True, default=None, help="Machine-readable output.")(f)
    f = click.option("--tol", type=float, default=None, help="Tolerance (default 1e-10).")(f)
    f = click.option("--trunc", type=int, default=None, help="Truncation K per leg (default 24).")(f)
    f = click.option("--q", "q", type=float, default=None, help="Numeric q (default 0.6).")(f)
    return f


def _settings(ctx, **local):
    merged = dict(ctx.find_root().obj or DEFAULTS)
    names = {"as_json": "json"}
    for k, v in local.items():
        if v is not None:
            merged[names.get(k, k)] = v
    return merged


def _out(settings, payload, text=None):
    if settings["json"] or text is None:
        click.echo(emit("json", payload).decode("utf-8"), nl=False)
    else:
        click.echo(text)


def _check_q(q):
    if not 0 < q < 1:
        raise click.BadParameter(f"q must lie in (0, 1), got {q}", param_hint="--q")


@click.group()
@_global_options
@click.pass_context
def main(ctx, q, trunc, tol, as_json, seed):
    """Quantum matrix algebra, q-Krawtchouk polynomials and their verification."""
    ctx.obj = dict(DEFAULTS)
    for k, v in {"q": q, "trunc": trunc, "tol": tol, "json": as_json, "seed": seed}.items():
        if v is not None:
            ctx.obj[k] = v


# -- series ---------------------------------------------------------------


@main.group()
def series():
    """q-Pochhammer symbols, q-(multi)nomials and terminating 2phi1 series."""


def _base(settings, exact, base_power):
    if exact:
        return qscalar.Q**base_power
    return settings["q"] ** base_power


def _scalar_payload(value):
    if isinstance(value, qscalar.LaurentScalar):
        return {"exact": value, "text": repr(value)}
    return {"value": float(value)}


def _scalar_text(value):
    return repr(value) if isinstance(value, qscalar.LaurentScalar) else repr(float(value))


@series.command()
@click.option("--a-exp", type=int, required=True, help="a = base^a_exp.")
@click.option("--n", "n", type=int, required=True)
@click.option("--base-power", type=int, default=1, show_default=True, help="Base is q^base_power.")
@click.option("--exact", is_flag=True, help="Exact Laurent polynomial in q.")
@_global_options
@click.pass_context
def pochhammer(ctx, a_exp, n, base_power, exact, **g):
    """(base^a_exp; base)_n."""
    s = _settings(ctx, **g)
    base = _base(s, exact, base_power)
    try:
        value = qscalar.q_pochhammer(qscalar.QPow(a_exp), base, n)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None
    _out(s, _scalar_payload(value), _scalar_text(value))


@series.command()
@click.argument("n", type=int)
@click.argument("k", type=int)
@click.option("--base-power", type=int, default=1, show_default=True)
@click.option("--exact", is_flag=True)
@_global_options
@click.pass_context
def binomial(ctx, n, k, base_power, exact, **g):
    """Gaussian binomial [n, k] in base q^base_power."""
    s = _settings(ctx, **g)
    value = qscalar.q_binomial(n, k, _base(s, exact, base_power))
    _out(s, _scalar_payload(value), _scalar_text(value))


@series.command()
@click.argument("N", type=int)
@click.argument("m")
@click.option("--base-power", type=int, default=1, show_default=True)
@click.option("--exact", is_flag=True)
@_global_options
@click.pass_context
def multinomial(ctx, n, m, base_power, exact, **g):
    """q-multinomial [N; m] with m given as comma-separated parts."""
    s = _settings(ctx, **g)
    try:
        value = qscalar.q_multinomial(n, _int_tuple(m, "M"), _base(s, exact, base_power))
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None
    _out(s, _scalar_payload(value), _scalar_text(value))


def _maybe_int(text):
    return None if text.lower() in ("none", "0param") else int(text)


@series.command()
@click.option("--alpha-exp", type=int, required=True, help="Upper parameter q^alpha_exp, alpha_exp <= 0.")
@click.option("--beta-exp", default="none", show_default=True, help="Integer exponent or 'none' for 0.")
@click.option("--gamma-exp", default="none", show_default=True, help="Integer exponent or 'none' for 0.")
@click.option("--z", type=float, required=True)
@_global_options
@click.pass_context
def phi21(ctx, alpha_exp, beta_exp, gamma_exp, z, **g):
    """Terminating 2phi1(q^alpha, q^beta; q^gamma; q, z)."""
    s = _settings(ctx, **g)
    try:
        value = qscalar.phi21_terminating(alpha_exp, _maybe_int(beta_exp), _maybe_int(gamma_exp), s["q"], z)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(str(exc)) from None
    _out(s, {"value": float(value)}, repr(float(value)))


# -- poly -----------------------------------------------------------------


@main.group()
def poly():
    """Univariate and bivariate q-Krawtchouk, Wall polynomials and shift scalars."""


def _poly_out(s, fn):
    try:
        value = complex(fn())
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        raise click.BadParameter(str(exc)) from None
    payload = {"value": value.real, "imag_residual": abs(value.imag)}
    _out(s, payload, repr(value.real))


@poly.command()
@click.option("--n", "n", type=int, required=True, help="Degree.")
@click.option("--x", type=int, required=True)
@click.option("--p-exp", type=int, required=True, help="p = q^p_exp (exact power of the base).")
@click.option("--size", type=int, required=True, help="Lattice size N.")
@_global_options
@click.pass_context
def kraw1(ctx, n, x, p_exp, size, **g):
    """k_n(q^-x; q^p_exp, N, q) with the global --q as base."""
    s = _settings(ctx, **g)
    _poly_out(s, lambda: qpoly.kraw1(n, x, qscalar.QPow(p_exp), size, s["q"]))


@poly.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--x", type=int, required=True)
@click.option("--y", type=int, required=True)
@click.option("--u-exp", type=int, required=True, help="u = q^u_exp.")
@click.option("--v-exp", type=int, required=True, help="v = q^v_exp.")
@click.option("--size", type=int, required=True, help="Simplex size N.")
@_global_options
@click.pass_context
def kraw2(ctx, n, m, x, y, u_exp, v_exp, size, **g):
    """Tratnik K_{n,m}(x, y; q^u_exp, q^v_exp, N, q) with base --q."""
    s = _settings(ctx, **g)
    _poly_out(
        s, lambda: qpoly.kraw2_tratnik(n, m, x, y, qscalar.QPow(u_exp), qscalar.QPow(v_exp), size, s["q"])
    )


@poly.command()
@click.option("--v", "v", type=int, required=True, help="Degree.")
@click.option("--w", "w", type=int, required=True, help="Lattice point.")
@click.option("--s", "s_", type=int, required=True, help="Parameter exponent.")
@_global_options
@click.pass_context
def wall(ctx, v, w, s_, **g):
    """Normalized Wall polynomial p̄_v(q^{2w}; q^{2s}; q^2)."""
    s = _settings(ctx, **g)
    _check_q(s["q"])
    _poly_out(s, lambda: qpoly.wall_pbar(v, w, s_, s["q"]))


@poly.command("uni-shift")
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--T", "T", type=int, required=True, help="Lattice size.")
@click.option("--k", "k", type=int, required=True, help="State index.")
@_global_options
@click.pass_context
def uni_shift(ctx, m, n, T, k, **g):
    """Scalar of an elementary representation acting on |k>."""
    s = _settings(ctx, **g)
    _poly_out(s, lambda: qpoly.uni_shift_scalar(m, n, T, k, s["q"]))


@poly.command("bi-shift")
@click.option("--m", "m", required=True, help="m1,m2")
@click.option("--n", "n", required=True, help="n1,n2")
@click.option("--N", "N", type=int, required=True)
@click.option("--u", "u", type=int, required=True)
@click.option("--v", "v", type=int, required=True)
@_global_options
@click.pass_context
def bi_shift(ctx, m, n, N, u, v, **g):
    """Scalar of the word-21 representation acting on |u, v>."""
    s = _settings(ctx, **g)
    mm, nn = _int_tuple(m, "--m"), _int_tuple(n, "--n")
    _poly_out(s, lambda: qpoly.bi_shift_scalar(mm, nn, N, u, v, s["q"]))


# -- alg ------------------------------------------------------------------


@main.group()
def alg():
    """Symbolic computations in the quantum matrix algebra."""


def _word_arg(tokens):
    try:
        return [ncalg.parse_generator(t) for t in tokens]
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


@alg.command("normal-order")
@click.argument("tokens", nargs=-1, required=True)
@_global_options
@click.pass_context
def normal_order(ctx, tokens, **g):
    """Normal form of a product of generators, e.g. `x21 x11`."""
    s = _settings(ctx, **g)
    p = ncalg.normal_order_word(_word_arg(tokens))
    _out(s, p, repr(p))


@alg.command()
@click.argument("tokens", nargs=-1, required=True)
@_global_options
@click.pass_context
def antipode(ctx, tokens, **g):
    """Antipode of a product of generators."""
    s = _settings(ctx, **g)
    p = ncalg.antipode(ncalg.normal_order_word(_word_arg(tokens)))
    _out(s, p, repr(p))


@alg.command()
@click.argument("tokens", nargs=-1, required=True)
@_global_options
@click.pass_context
def star(ctx, tokens, **g):
    """Star of a product of generators."""
    s = _settings(ctx, **g)
    p = ncalg.star(ncalg.normal_order_word(_word_arg(tokens)))
    _out(s, p, repr(p))


@alg.command()
@click.argument("tokens", nargs=-1, required=True)
@_global_options
@click.pass_context
def coproduct(ctx, tokens, **g):
    """Coproduct of a product of generators."""
    s = _settings(ctx, **g)
    t = ncalg.coproduct(ncalg.normal_order_word(_word_arg(tokens)))
    payload = [
        {"coeff": c, "legs": [ncalg.NCPoly.monomial(m).to_json() for m in key]}
        for key, c in sorted(t.terms.items())
    ]
    _out(s, payload, repr(t))


@alg.command()
@_global_options
@click.pass_context
def det(ctx, **g):
    """Quantum determinant."""
    s = _settings(ctx, **g)
    p = ncalg.quantum_det()
    _out(s, p, repr(p))


# -- corep ----------------------------------------------------------------


@main.group()
def corep():
    """Corepresentation matrix elements."""


@corep.command()
@click.option("--N", "N", type=int, required=True)
@click.option("--m", "m", required=True, help="m1,m2,m3")
@click.option("--n", "n", required=True, help="n1,n2,n3")
@click.option("--normalized", is_flag=True, help="Also give the numeric unitary normalization.")
@_global_options
@click.pass_context
def matel(ctx, N, m, n, normalized, **g):
    """Matrix element h_{m,n} (exact), optionally with its normalization."""
    s = _settings(ctx, **g)
    mm, nn = _int_tuple(m, "--m"), _int_tuple(n, "--n")
    try:
        h = h_element(N, mm, nn)
        factor = t_factor(N, mm, nn, s["q"]) if normalized else None
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None
    payload = {"element": h}
    text = repr(h)
    if normalized:
        payload["factor"] = factor
        text = f"{factor!r} * ({text})"
    _out(s, payload, text)


# -- rep ------------------------------------------------------------------


@main.group()
def rep():
    """Numeric representations on truncated tensor powers."""


@rep.command()
@click.option("--word", required=True, help="Letters 1 and 2, e.g. 21.")
@click.option("--N", "N", type=int, required=True)
@click.option("--m", "m", required=True)
@click.option("--n", "n", required=True)
@click.option("--state", required=True, help="Comma-separated basis indices.")
@_global_options
@click.pass_context
def apply(ctx, word, N, m, n, state, **g):
    """Image of a basis state under a normalized matrix element."""
    s = _settings(ctx, **g)
    _check_q(s["q"])
    letters = tuple(int(c) for c in word if c in "12")
    if not letters or len(letters) != len(word.replace(",", "")):
        raise click.BadParameter(f"word must consist of 1s and 2s, got {word!r}", param_hint="--word")
    st = _int_tuple(state, "--state")
    if len(st) != len(letters):
        raise click.BadParameter(f"state needs {len(letters)} indices", param_hint="--state")
    try:
        img = apply_matrix_element(letters, N, _int_tuple(m, "--m"), _int_tuple(n, "--n"), st, s["trunc"], s["q"])
    except (OutsideSafeWindow, ValueError) as exc:
        raise click.BadParameter(str(exc)) from None
    payload = {",".join(map(str, k)): [v.real, v.imag] for k, v in img.items()}
    click.echo(emit("json", payload).decode("utf-8"), nl=False)


# -- verify ---------------------------------------------------------------


@main.command()
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@click.option("--N", "N", type=int, default=2, show_default=True)
@click.option("--count", type=int, default=500, show_default=True, help="Word count for confluence.")
@click.option("--word", default="121", show_default=True, help="Representation word.")
@click.option("--form", type=click.Choice(["both", "stated", "corrected"]), default="both", show_default=True)
@click.option("--torus", default=None, help="Torus twist angles theta1,theta2 (radians).")
@click.option("--csv", "as_csv", is_flag=True, help="Emit the checks as CSV.")
@_global_options
@click.pass_context
def verify(ctx, suite, N, count, word, form, torus, as_csv, **g):
    """Run a named verification suite. Exit 0 on pass, 1 on failure."""
    s = _settings(ctx, **g)
    tol = s["tol"]
    if suite == "wall-identity" and g.get("tol") is None and (ctx.find_root().params.get("tol") is None):
        tol = 1e-8
    try:
        angles = tuple(float(x) for x in torus.split(",")) if torus else None
    except ValueError:
        raise click.BadParameter(f"expected two angles, got {torus!r}", param_hint="--torus") from None
    if angles is not None and len(angles) != 2:
        raise click.BadParameter("expected two angles", param_hint="--torus")
    try:
        params = SuiteParams(
            N=N,
            q=s["q"],
            trunc=s["trunc"],
            tol=tol,
            seed=s["seed"],
            count=count,
            word=tuple(int(c) for c in word),
            form=form,
            torus=angles,
        )
        report = run_suite(suite, params)
    except (SuiteParameterError, ValueError) as exc:
        raise click.BadParameter(str(exc)) from None
    if as_csv:
        rows = [c.to_dict() for c in report.checks]
        cols = ["description", "exact", "max_deviation", "pass", "points"]
        click.echo(emit("csv", rows, columns=cols).decode("utf-8"), nl=False)
    elif s["json"]:
        click.echo(emit("json", report.to_dict()).decode("utf-8"), nl=False)
    else:
        for c in report.checks:
            dev = "exact" if c.exact else f"max deviation {c.max_deviation:.3e}"
            click.echo(f"{'PASS' if c.passed else 'FAIL'}  {c.description}  ({dev}, {c.points} points)")
        click.echo(f"{suite}: {'PASS' if report.passed else 'FAIL'}")
    ctx.exit(0 if report.passed else 1)


if __name__ == "__main__":
    sys.exit(main())
