"""Command-line surface of the package.

Every figure-like and table-like quantity the library computes is
reachable here as machine-readable CSV or JSON:

* ``eval``     -- Coulomb wave function columns (u, f, g, df, dg, regime),
* ``scatter``  -- transmission sweep |T_eps|^2 over a log-spaced cutoff grid,
* ``spectrum`` -- interlaced bound-state energies of both families,
* ``states``   -- bound-state wavefunction grids,
* ``overlap``  -- anomalous overlap coefficients and the beta_n constants,
* ``gram``     -- Gram matrix, eigenvalues, and orthogonalization map.

Output schema is the same for both encodings: a ``meta`` mapping, a
``columns`` list, and ``rows``.  CSV carries the meta entries as
``# key = value`` comment lines.  Payloads are deterministic: the same
configuration always produces byte-identical output.

Exit codes: 0 success, 2 invalid configuration, 3 numeric failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

import mpmath as mp

from . import bound, scatter
from .numerics import NumericsError, PrecisionCapError, with_precision
from .specfun import (
    DEFAULT_CONTEXT,
    AccuracyError,
    DomainError,
    PrecisionContext,
    ProblemParams,
    coulomb_eval,
)

__all__ = ["main"]

_EXIT_OK = 0
_EXIT_CONFIG = 2
_EXIT_NUMERIC = 3
_EXIT_IO = 4


class _ConfigError(ValueError):
    """Invalid command-line configuration."""


def _fmt(x, digits: int = 17) -> str:
    """Deterministic decimal rendering of a number."""
    if isinstance(x, (int, str)):
        return str(x)
    if isinstance(x, mp.mpc):
        if x.imag == 0:
            x = x.real
        else:
            return f"{_fmt(x.real, digits)}{'+' if x.imag >= 0 else ''}{_fmt(x.imag, digits)}j"
    return mp.nstr(mp.mpf(x), digits, strip_zeros=True)


def _parse_range(text: str):
    """Parse ``a:b:step`` into mpf triple."""
    parts = text.split(":")
    if len(parts) != 3:
        raise _ConfigError(f"range must be 'a:b:step', got {text!r}")
    try:
        a, b, step = (mp.mpf(p) for p in parts)
    except ValueError as exc:
        raise _ConfigError(f"non-numeric range component in {text!r}") from exc
    if step <= 0 or b < a:
        raise _ConfigError("range requires a <= b and step > 0")
    return a, b, step

def _range_values(a, b, step) -> list:
    n = int(mp.floor((b - a) / step + mp.mpf("0.5"))) + 1
    return [a + i * step for i in range(n)]


def _parse_eps_grid(text: str) -> list:
    """Parse ``a:b:n`` into n log-spaced cutoffs from a down/up to b."""
    parts = text.split(":")
    if len(parts) != 3:
        raise _ConfigError(f"eps grid must be 'a:b:n', got {text!r}")
    try:
        a, b = mp.mpf(parts[0]), mp.mpf(parts[1])
        n = int(parts[2])
    except ValueError as exc:
        raise _ConfigError(f"bad eps grid {text!r}") from exc
    if a <= 0 or b <= 0 or n < 1:
        raise _ConfigError("eps grid endpoints must be positive, n >= 1")
    if n == 1:
        return [a]
    la, lb = mp.log(a), mp.log(b)
    return [mp.exp(la + i * (lb - la) / (n - 1)) for i in range(n)]


def _problem_params(args) -> ProblemParams:
    if args.eta is not None:
        if args.lam is not None:
            raise _ConfigError("give either --eta or --lambda, not both")
        return ProblemParams.from_eta(mp.mpf(args.eta))
    if args.lam is not None:
        energy = mp.mpf(args.energy) if args.energy is not None else mp.mpf(1)
        return ProblemParams.from_coupling(mp.mpf(args.lam), energy)
    raise _ConfigError("one of --eta or --lambda is required")


def _context(args) -> PrecisionContext:
    if args.precision is None:
        return DEFAULT_CONTEXT
    if args.precision < 16:
        raise _ConfigError("--precision must be at least 16 digits")
    return PrecisionContext(working_digits=args.precision)


# ---------------------------------------------------------------------------
# command implementations; each returns (meta, columns, rows)


def _cmd_eval(args):
    params = _problem_params(args)
    ctx = _context(args)
    a, b, step = _parse_range(args.u_range)
    notes = []
    rows = []
    for u in _range_values(a, b, step):
        if u == 0:
            notes.append("row at u = 0 omitted: wave functions are "
                         "defined on the punctured line")
            continue
        w = coulomb_eval(params, u, ctx)
        rows.append([_fmt(u), _fmt(w.f), _fmt(w.g), _fmt(w.df), _fmt(w.dg),
                     w.regime])
    meta = {"command": "eval", "eta": _fmt(params.eta),
            "u_range": args.u_range, "precision": ctx.working_digits}
    if notes:
        meta["notes"] = "; ".join(notes)
    return meta, ["u", "f", "g", "df", "dg", "regime"], rows


def _cmd_scatter(args):
    params = _problem_params(args)
    ctx = _context(args)
    grid = _parse_eps_grid(args.eps_grid)
    rows = []
    for eps in grid:
        cfg = scatter.TruncationConfig(eps, form=args.form)
        try:
            if args.form == "hole":
                amp = scatter.composed_transmission(params, cfg, ctx)
                t2 = abs(amp) ** 2
                digits = scatter.half_barrier(params, cfg, ctx).achieved_digits
            else:
                sol = scatter.matched_solution(params, cfg, ctx)
                t2, digits = sol.T, sol.achieved_digits
            rows.append([_fmt(eps), _fmt(t2), str(digits), "ok"])
        except (AccuracyError, PrecisionCapError):
            # flagged, sweep continues
            rows.append([_fmt(eps), "", "", "precision_cap"])
    meta = {"command": "scatter", "eta": _fmt(params.eta), "form": args.form,
            "eps_grid": args.eps_grid, "precision": ctx.working_digits}
    return meta, ["eps", "T2", "achieved_digits", "status"], rows


def _cmd_spectrum(args):
    states = (bound.spectrum("regular", args.n_max)
              + bound.spectrum("anomalous", args.n_max))
    states.sort(key=lambda s: (-s.energy, s.kind))
    rows = [[s.kind, str(s.n), _fmt(s.eta_n), _fmt(s.energy)] for s in states]
    meta = {"command": "spectrum", "n_max": args.n_max,
            "energy_unit": "E1 (regular ground state)"}
    return meta, ["kind", "n", "eta_n", "E_over_E1"], rows


def _cmd_states(args):
    a, b, step = _parse_range(args.u_range)
    n_max = args.n_max
    cols = ["u"]
    cols += [f"zeta_{n}" for n in range(1, n_max + 1)]
    cols += [f"xi_{n}" for n in range(n_max)]
    rows = []
    notes = []
    for u in _range_values(a, b, step):
        if u == 0:
            notes.append("row at u = 0 omitted: anomalous states are "
                         "non-smooth at the origin")
            continue
        row = [_fmt(u)]
        row += [_fmt(bound.regular_wavefunction(n, u))
                for n in range(1, n_max + 1)]
        row += [_fmt(bound.anomalous_wavefunction(n, u))
                for n in range(n_max)]
        rows.append(row)
    meta = {"command": "states", "n_max": n_max, "u_range": args.u_range}
    if notes:
        meta["notes"] = notes[0]
    return meta, cols, rows


def _cmd_overlap(args):
    if args.pairs != "anomalous":
        raise _ConfigError("only --pairs anomalous is available")
    rows = []
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        s1 = bound.spectrum("anomalous", j + 1)[i]
        s2 = bound.spectrum("anomalous", j + 1)[j]
        # coefficient of 2/|lambda|: half-line value at |lambda| = 2
        coeff = bound.overlap(s1, s2, "half_line", lam=-2) / 1
        rows.append(["overlap", f"xi_{i}", f"xi_{j}", _fmt(coeff, 12)])
    for n in range(3):
        beta = bound.anomalous_norm(n)[1]
        rows.append(["beta", f"xi_{n}", "", _fmt(beta, 12)])
    meta = {"command": "overlap", "pairs": "anomalous",
            "normalization": "coefficient of 2/|lambda|"}
    return meta, ["quantity", "state1", "state2", "value"], rows


def _cmd_gram(args):
    if args.N < 1:
        raise _ConfigError("--N must be at least 1")
    res = bound.gram_analysis(args.N)
    rows = []
    for i in range(res.N):
        for j in range(res.N):
            rows.append(["M", str(i), str(j), _fmt(res.M[i, j])])
    for q, w in enumerate(res.eigenvalues):
        rows.append(["eigenvalue", str(q), "", _fmt(w)])
    for i in range(res.N):
        for j in range(res.N):
            rows.append(["P", str(i), str(j), _fmt(res.P[i, j])])
    meta = {"command": "gram", "N": res.N,
            "convention": "eigenvalues descending; P^T M P = I"}
    return meta, ["quantity", "i", "j", "value"], rows


# ---------------------------------------------------------------------------
# serialization


def _write_csv(fh, meta, columns, rows) -> None:
    for key in sorted(meta):
        fh.write(f"# {key} = {meta[key]}\n")
    fh.write(",".join(columns) + "\n")
    for row in rows:
        fh.write(",".join(row) + "\n")


def _write_json(fh, meta, columns, rows) -> None:
    json.dump({"meta": meta, "columns": columns, "rows": rows}, fh,
              indent=2, sort_keys=True)
    fh.write("\n")


def _emit(args, meta, columns, rows) -> None:
    writer = _write_json if args.format == "json" else _write_csv
    if args.out is None:
        writer(sys.stdout, meta, columns, rows)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            writer(fh, meta, columns, rows)


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coulomb1d",
        description="One-dimensional Coulomb problem: wave functions, "
                    "truncated-barrier scattering, and bound-state analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, physics=False):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH", default=None)
        p.add_argument("--precision", type=int, default=None,
                       metavar="DIGITS")
        if physics:
            p.add_argument("--lambda", dest="lam", default=None,
                           help="coupling strength (sign sets barrier/well)")
            p.add_argument("--energy", default=None,
                           help="scattering energy (with --lambda)")
            p.add_argument("--eta", default=None,
                           help="Sommerfeld parameter (alternative to --lambda)")

    p = sub.add_parser("eval", help="wave function columns over a u grid")
    common(p, physics=True)
    p.add_argument("--u-range", required=True, metavar="A:B:STEP")
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("scatter", help="transmission sweep over cutoffs")
    common(p, physics=True)
    p.add_argument("--eps-grid", required=True, metavar="A:B:N",
                   help="N log-spaced cutoffs between A and B")
    p.add_argument("--form", choices=("hole", "plateau"), default="hole")
    p.set_defaults(run=_cmd_scatter)

    p = sub.add_parser("spectrum", help="interlaced bound-state energies")
    common(p)
    p.add_argument("--n-max", type=int, default=3)
    p.set_defaults(run=_cmd_spectrum)

    p = sub.add_parser("states", help="bound-state wavefunction grids")
    common(p)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--u-range", default="-12:12:0.1", metavar="A:B:STEP")
    p.set_defaults(run=_cmd_states)

    p = sub.add_parser("overlap", help="anomalous overlaps and beta constants")
    common(p)
    p.add_argument("--pairs", default="anomalous")
    p.set_defaults(run=_cmd_overlap)

    p = sub.add_parser("gram", help="Gram matrix diagnostics")
    common(p)
    p.add_argument("--N", type=int, default=4)
    p.set_defaults(run=_cmd_gram)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_CONFIG if exc.code not in (0, None) else _EXIT_OK
    try:
        meta, columns, rows = args.run(args)
    except (_ConfigError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except (NumericsError, AccuracyError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    try:
        _emit(args, meta, columns, rows)
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return _EXIT_IO
    return _EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
