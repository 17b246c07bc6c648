"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 numerical tolerance
failure, 3 structural error.  Complex numbers are written as [re, im] and
floats with 15 significant digits, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import series_T, trace_dGD_coefficients
from .errors import ConfigError, SingZetaError, ToleranceError
from .operator import Extension, has_zero_mode, positive_eigenvalues, rho, secular_F
from .resolvent import tau, trace_dGD, trace_diff, trace_G, trace_G2, trace_GD, trace_GN
from .second_order import predicted_pole_locations, second_order_eigenvalues, varrho
from .special import bessel_zeros
from .zeta import (
    continuation,
    eta,
    pole_table_eta_full,
    pole_table_plus,
    pole_table_zeta,
    zeta_full,
    zeta_plus_sum,
)

G_LIMIT = 0.49
N_LIMIT = 12
CSV_DEFAULT = {"spectrum", "figure1"}


@dataclass
class RunConfig:
    command: str
    g: float | None = None
    alpha: float = 1.0
    beta: float = 1.0
    n: int | None = None
    s: list = field(default_factory=list)
    lam: list = field(default_factory=list)
    k: int = 4
    N: int = 6
    mu_max: float = 1e4
    quad_tol: float = 1e-10
    fmt: str | None = None
    out: str | None = None
    method: str = "continued"
    rho: float = 3.0
    criteria: list = field(default_factory=list)

    def validate(self):
        if self.command == "figure1" and self.g is None:
            self.g = 1.0 / 3.0
        if self.command != "verify":
            if self.g is None:
                raise ConfigError("--g is required")
            if not (math.isfinite(self.g) and abs(self.g) <= G_LIMIT):
                raise ConfigError(f"--g must satisfy |g| <= {G_LIMIT}")
        if not (1 <= self.N <= N_LIMIT):
            raise ConfigError(f"-N must lie in 1..{N_LIMIT}")
        if self.n is None:
            self.n = {"figure1": 800}.get(self.command, 100000 if self.method == "sum" else 10)
        if self.n < 1:
            raise ConfigError("--n must be positive")
        if self.k < 0:
            raise ConfigError("--k must be non-negative")
        if not (self.mu_max > 0 and self.quad_tol > 0):
            raise ConfigError("--mu-max and --quad-tol must be positive")
        if self.fmt is None:
            self.fmt = "csv" if self.command in CSV_DEFAULT else "json"
        return self

    @property
    def extension(self):
        return Extension(self.alpha, self.beta)


# ---------------------------------------------------------------------------
# serialisation


def fnum(x):
    """Float rounded to 15 significant digits (None for nan)."""
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.15g}") + 0.0


def cnum(z):
    z = complex(z)
    return [fnum(z.real), fnum(z.imag)]


def _ext_info(cfg):
    ext = cfg.extension
    try:
        r = fnum(rho(ext, cfg.g))
    except ConfigError:
        r = None
    return {"g": fnum(cfg.g), "alpha": fnum(ext.alpha), "beta": fnum(ext.beta), "rho": r}


def to_json(payload):
    return json.dumps(payload, indent=2) + "\n"


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def _emit(cfg, payload, header, rows):
    return to_json(payload) if cfg.fmt == "json" else to_csv(header, rows)


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(cfg):
    g, ext = cfg.g, cfg.extension
    j = bessel_zeros(g - 0.5, np.arange(1, cfg.n + 3))
    edges = np.concatenate([[0.0], j])
    rows = []
    for sign, e in ((1, ext), (-1, ext.flipped())):
        lam = positive_eigenvalues(e, g, cfg.n)
        slot = np.searchsorted(edges, lam)
        for i, x in enumerate(lam):
            exact = np.isclose(edges, x, rtol=0, atol=1e-12 * x).any()
            lo = x if exact else edges[slot[i] - 1]
            hi = x if exact else edges[slot[i]]
            lo, hi = (lo, hi) if sign > 0 else (-hi, -lo)
            rows.append([sign, i + 1, fnum(sign * x), fnum(lo), fnum(hi)])
    rows.sort(key=lambda r: r[2])
    if has_zero_mode(ext):
        rows.insert(cfg.n, [0, 0, 0.0, 0.0, 0.0])
    header = ["sign", "index", "eigenvalue", "bracket_lo", "bracket_hi"]
    payload = dict(_ext_info(cfg), eigenvalues=[dict(zip(header, r)) for r in rows])
    return _emit(cfg, payload, header, rows)


def cmd_traces(cfg):
    g, ext = cfg.g, cfg.extension
    if not cfg.lam:
        raise ConfigError("traces needs at least one --lam")
    funcs = {
        "trace_GD": lambda z: trace_GD(z, g),
        "trace_GN": lambda z: trace_GN(z, g),
        "trace_dGD": lambda z: trace_dGD(z, g),
        "trace_diff": lambda z: trace_diff(z, g),
        "tau": lambda z: tau(z, g, ext),
        "trace_G": lambda z: trace_G(z, g, ext),
        "trace_G2": lambda z: trace_G2(z, g, ext),
    }
    entries, rows = [], []
    for z in cfg.lam:
        vals = {name: f(z) for name, f in funcs.items()}
        entries.append(dict({"lambda": cnum(z)}, **{k: cnum(v) for k, v in vals.items()}))
        rows.append([fnum(z.real), fnum(z.imag)]
                    + [p for v in vals.values() for p in cnum(v)])
    header = ["lambda_re", "lambda_im"] + [f"{k}_{p}" for k in funcs for p in ("re", "im")]
    return _emit(cfg, dict(_ext_info(cfg), traces=entries), header, rows)


def cmd_asymptotics(cfg):
    g, ext = cfg.g, cfg.extension
    K = max(cfg.k, 2)
    rows = []
    for sg in (1, -1):
        A = trace_dGD_coefficients(g, sg, K)
        for k in range(2, K + 1):
            rows.append(["A", sg, fnum(-k), -k, 0] + cnum(A[k]))
        ser = series_T(ext, g, sg, cfg.N)
        for (a, b), c in sorted(ser.terms.items(), key=lambda kv: -ser.exponent(kv[0])):
            rows.append(["T", sg, fnum(ser.exponent((a, b))), a, b] + cnum(c))
    header = ["series", "sigma", "exponent", "a", "b", "coef_re", "coef_im"]
    terms = [{"series": r[0], "sigma": r[1], "exponent": r[2], "key": [r[3], r[4]],
              "coefficient": [r[5], r[6]]} for r in rows]
    payload = dict(_ext_info(cfg), N=cfg.N, terms=terms,
                   note="T terms: coefficient of lam^(a + 2 g b) on the ray sigma i mu")
    return _emit(cfg, payload, header, rows)


def _zeta_values(cfg, which):
    g, ext = cfg.g, cfg.extension
    if not cfg.s:
        raise ConfigError(f"{which} needs at least one --s")
    s = np.array(cfg.s, dtype=complex)
    if cfg.method == "sum":
        if which != "zeta_plus":
            raise ConfigError("the direct sum is available for zeta_plus only")
        v = zeta_plus_sum(ext, g, s, n_eigs=cfg.n)
        half = zeta_plus_sum(ext, g, s, n_eigs=max(1, cfg.n // 2))
        err = np.abs(v - half)
    else:
        parts = [continuation(ext, g, cfg.N, cfg.mu_max, cfg.quad_tol)]
        if which != "zeta_plus":
            parts.append(continuation(ext.flipped(), g, cfg.N, cfg.mu_max, cfg.quad_tol))
        if which == "zeta_plus":
            v = parts[0](s)
        elif which == "zeta":
            v = zeta_full(ext, g, s, cfg.N, cfg.mu_max)
        else:
            v = eta(ext, g, s, cfg.N, cfg.mu_max)
        err = sum(np.atleast_1d(p.error_estimate(s)) for p in parts)
        if np.any(err > cfg.quad_tol):
            raise ToleranceError(f"quadrature error estimate {float(np.max(err)):.3g} "
                                 f"exceeds --quad-tol {cfg.quad_tol:.3g}")
    return s, np.atleast_1d(v), np.atleast_1d(err)


def cmd_zeta(cfg, which):
    s, v, err = _zeta_values(cfg, which)
    info = _ext_info(cfg)
    method = "sum" if cfg.method == "sum" else "continued"
    entries = [dict(info, function=which, method=method, s=cnum(a), value=cnum(b),
                    error_estimate=fnum(e)) for a, b, e in zip(s, v, err)]
    header = ["function", "method", "s_re", "s_im", "value_re", "value_im", "error_estimate"]
    rows = [[which, method] + cnum(a) + cnum(b) + [fnum(e)] for a, b, e in zip(s, v, err)]
    return _emit(cfg, {"evaluations": entries}, header, rows)


def cmd_poles(cfg):
    g, ext = cfg.g, cfg.extension
    tables = {
        "zeta_plus": pole_table_plus(ext, g, cfg.k),
        "zeta": pole_table_zeta(ext, g, cfg.k),
        "eta": pole_table_eta_full(ext, g, cfg.k),
    }
    payload = dict(_ext_info(cfg), K=cfg.k)
    rows = []
    for name, table in tables.items():
        payload[name] = [{"location": fnum(p.s), "residue": cnum(p.residue), "source": p.origin,
                          "k": p.k, "collision": p.collision} for p in table]
        rows += [[name, fnum(p.s)] + cnum(p.residue) + [p.origin, p.k, p.collision]
                 for p in table]
    header = ["function", "location", "residue_re", "residue_im", "source", "k", "collision"]
    return _emit(cfg, payload, header, rows)


def cmd_second_order(cfg):
    g, ext = cfg.g, cfg.extension
    mu = second_order_eigenvalues(ext, g, cfg.n)
    try:
        vr = fnum(varrho(ext, g))
    except ConfigError:
        vr = None
    poles = [fnum(p) for p in predicted_pole_locations(g, cfg.k)]
    rows = [["eigenvalue", i + 1, fnum(m), fnum(m * m)] for i, m in enumerate(mu)]
    rows += [["pole", i + 1, p, None] for i, p in enumerate(poles)]
    payload = {"g": fnum(g), "alpha": fnum(ext.alpha), "beta": fnum(ext.beta), "varrho": vr,
               "mu": [fnum(m) for m in mu], "eigenvalues": [fnum(m * m) for m in mu],
               "predicted_pole_locations": poles}
    return _emit(cfg, payload, ["kind", "index", "value", "square"], rows)


def cmd_figure1(cfg, clip=20.0):
    """F(lam) samples on (0, j_{g-1/2,4}); blank cells mark the asymptotes."""
    g = cfg.g
    j = bessel_zeros(g - 0.5, np.arange(1, 5))
    n = cfg.n
    lam = j[-1] * (np.arange(1, n + 1) / (n + 1))
    F = secular_F(lam, g)
    gap = (np.abs(F) > clip) | (np.min(np.abs(lam[:, None] - j[None, :]), axis=1) < 1e-3 * j[-1])
    rows = [[fnum(x), None if bad else fnum(f), fnum(cfg.rho)] for x, f, bad in zip(lam, F, gap)]
    payload = {"g": fnum(g), "rho": fnum(cfg.rho), "poles": [fnum(x) for x in j],
               "samples": [{"lambda": r[0], "F": r[1]} for r in rows]}
    return _emit(cfg, payload, ["lambda", "F", "rho"], rows)


def cmd_verify(cfg):
    from .acceptance import run

    results = run(cfg.criteria or None)
    lines = [r.line() for r in results]
    text = "\n".join(lines) + "\n"
    failed = any(not r.passed for r in results)
    return text, (2 if failed else 0)


# ---------------------------------------------------------------------------
# entry point


def _complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from exc


def build_parser():
    p = argparse.ArgumentParser(prog="singzeta", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=["spectrum", "traces", "asymptotics", "zeta", "zeta-plus",
                                       "eta", "poles", "second-order", "figure1", "verify"])
    p.add_argument("--g", type=float)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--n", type=int, help="number of eigenvalues or samples")
    p.add_argument("--s", type=_complex, action="append", default=[], help="repeatable")
    p.add_argument("--lam", type=_complex, action="append", default=[], help="repeatable")
    p.add_argument("--k", type=int, default=4, help="number of pole or series terms")
    p.add_argument("-N", dest="N", type=int, default=6, help="subtraction order")
    p.add_argument("--mu-max", type=float, default=1e4)
    p.add_argument("--quad-tol", type=float, default=1e-10)
    p.add_argument("--method", choices=["continued", "sum"], default="continued")
    p.add_argument("--rho", type=float, default=3.0, help="figure1 only")
    p.add_argument("--criteria", type=int, action="append", default=[], help="verify only")
    p.add_argument("--format", dest="fmt", choices=["json", "csv"])
    p.add_argument("--out")
    return p


def run(cfg):
    """Execute a validated RunConfig; returns (text, exit code)."""
    cfg.validate()
    c = cfg.command
    if c == "verify":
        return cmd_verify(cfg)
    if c == "spectrum":
        return cmd_spectrum(cfg), 0
    if c == "traces":
        return cmd_traces(cfg), 0
    if c == "asymptotics":
        return cmd_asymptotics(cfg), 0
    if c in ("zeta", "eta", "zeta-plus"):
        return cmd_zeta(cfg, c.replace("-", "_")), 0
    if c == "poles":
        return cmd_poles(cfg), 0
    if c == "second-order":
        return cmd_second_order(cfg), 0
    return cmd_figure1(cfg), 0


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    cfg = RunConfig(**vars(args))
    try:
        text, code = run(cfg)
    except SingZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
