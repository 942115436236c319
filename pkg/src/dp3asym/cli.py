"""Command-line entry point.

Exit status: 0 when every requested check passes, 1 when a check fails, 2 on
configuration errors.  Configuration comes from an optional JSON file with flag
overrides; the environment supplies only DP3ASYM_OUT_DIR and DP3ASYM_THREADS.
"""
from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import click
import sympy

from .errors import ConfigError, Dp3Error

FORMATS = ("json", "latex", "csv", "text")
EXPAND_KINDS = ("log", "log-b", "trig", "trig-b", "trig-truncated", "elliptic-a1", "elliptic-b2")


@dataclass
class RunConfig:
    command: str = ""
    params: dict = field(default_factory=dict)
    branch: dict = field(default_factory=dict)
    depth: int = None
    tol: float = 1e-8
    format: str = None
    out: str = None
    suites: list = field(default_factory=list)

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = sorted(set(data) - known)
        if extra:
            raise ConfigError(f"unknown configuration keys: {extra}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.depth is not None and (not isinstance(self.depth, int) or self.depth < 0):
            raise ConfigError("depth must be a nonnegative integer")
        if not (isinstance(self.tol, (int, float)) and self.tol > 0):
            raise ConfigError("tol must be positive")
        if not isinstance(self.params, dict) or not isinstance(self.branch, dict):
            raise ConfigError("params and branch must be mappings")
        for k, v in self.branch.items():
            if k not in ("s", "P") or v not in ("+", "-"):
                raise ConfigError(f"branch flag {k}={v}: expected s=+/- or P=+/-")


def load_config(path, overrides: dict) -> RunConfig:
    data = {}
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    for k, v in overrides.items():
        if v is None or v == () or v == {}:
            continue
        if isinstance(v, dict) and isinstance(data.get(k), dict):
            data[k] = {**data[k], **v}
        else:
            data[k] = v
    return RunConfig.from_mapping(data)


def parse_bindings(items, what="param"):
    out = {}
    for it in items:
        if "=" not in it:
            raise ConfigError(f"--{what} expects name=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def numeric(text, name):
    try:
        return complex(sympy.N(sympy.sympify(str(text), locals={"I": sympy.I})))
    except (sympy.SympifyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{name}={text!r} is not a number") from exc


def _real(v, name):
    z = numeric(v, name)
    if z.imag:
        raise ConfigError(f"{name} must be real")
    return z.real


def dp3_params(cfg: RunConfig):
    from .numerics import DP3Params
    p = cfg.params
    a = numeric(p.get("a", 0), "a")
    b = _real(p.get("b", 1), "b")
    eps = int(_real(p.get("eps", 1), "eps"))
    return DP3Params(a=a if a.imag else a.real, b=b, eps=eps)


def output_path(out):
    if out is None:
        return None
    base = os.environ.get("DP3ASYM_OUT_DIR")
    if base and not os.path.isabs(out):
        out = os.path.join(base, out)
    return out


def threads():
    raw = os.environ.get("DP3ASYM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"DP3ASYM_THREADS={raw!r} is not an integer") from exc
    if n < 1:
        raise ConfigError("DP3ASYM_THREADS must be at least 1")
    return n


def emit(text: str, out):
    path = output_path(out)
    if path is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        d = os.path.dirname(path)
        if d:
            os.makedirs(d, exist_ok=True)
        with open(path, "w") as fh:
            fh.write(text)


def _bind(obj, params):
    """Substitute symbolic parameter values into every exact value inside obj."""
    if not params:
        return obj
    from .cas_kernel.field import FieldElement
    from .cas_kernel.univariate import RationalFunction
    if isinstance(obj, (FieldElement, RationalFunction)):
        names = set(obj.space.names)
        sub = {k: obj.space.parse(v) for k, v in params.items() if k in names}
        return obj.subs(sub) if sub else obj
    if isinstance(obj, dict):
        return {k: _bind(v, params) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return type(obj)(_bind(v, params) for v in obj)
    return obj


# ---------------------------------------------------------------------------
# command bodies

def do_expand(kind, cfg: RunConfig):
    from . import serialization as S
    from .report import latex_document
    n = cfg.depth if cfg.depth is not None else 2
    if kind == "log":
        from .log_expansion import compute_log_A
        obj = compute_log_A(n)
    elif kind == "log-b":
        from .log_expansion import compute_log_B
        obj = compute_log_B(n)
    elif kind == "trig":
        from .trig_expansion import compute_A_infty
        obj = compute_A_infty(n)
    elif kind == "trig-b":
        from .trig_expansion import TrigContext, compute_B_infty
        obj = compute_B_infty(n, TrigContext.generic_b())
    elif kind == "trig-truncated":
        from .trig_expansion import compute_truncated
        obj = compute_truncated("both-zero", max(n, 1))
    elif kind == "elliptic-a1":
        from .elliptic_expansion import compute_A1_elliptic
        obj = compute_A1_elliptic(max(n, 1))
    else:
        from .elliptic_expansion import compute_B2_elliptic
        obj = compute_B2_elliptic(max(n, 1))
    payload = _bind(S.expansion_payload(obj), cfg.params)
    fmt = cfg.format or "json"
    if fmt == "json":
        return S.dumps(f"expansion/{kind}", payload)
    items = _formula_items(kind, payload)
    if fmt == "latex":
        return latex_document(items, title=f"{kind} generators")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value"])
        for k, v in items.items():
            w.writerow([k, v.to_sympy() if hasattr(v, "to_sympy") else v])
        return buf.getvalue()
    return "".join(f"{k} = {v.to_sympy() if hasattr(v, 'to_sympy') else v}\n" for k, v in items.items())


class _Expr:
    def __init__(self, expr):
        self.expr = expr

    def latex(self):
        return sympy.latex(self.expr)

    def to_sympy(self):
        return self.expr


def _formula_items(kind, payload):
    items = {}
    if "b2n" in payload and payload["b2n"]:
        for i, v in enumerate(payload["b2n"], start=1):
            items[f"b_{2 * i}"] = v
        return items
    if "polynomials" in payload and payload["polynomials"]:
        y = sympy.Symbol("y")
        for n, co in enumerate(payload["polynomials"]):
            items[f"B_{n}"] = _Expr(sum((c.to_sympy() * y ** p for p, c in enumerate(co)), sympy.S.Zero))
        return items
    var = sympy.Symbol("y" if kind in ("elliptic-b2", "log-b") else "x")
    for k, g in enumerate(payload.get("generators", [])):
        if isinstance(g, dict):
            g = _Expr(sum((v.to_sympy() * var ** e for e, v in g.items()), sympy.S.Zero))
        items[f"A_{k}"] = g
    return items


def do_verify(cfg: RunConfig):
    from .report import emit_report
    from .verify import SUITES, resolve_suites, run_check
    names = resolve_suites(cfg.suites) if cfg.suites else []
    jobs = [(s, c) for s in names for c in SUITES[s]()]
    nthreads = threads()
    if nthreads > 1 and jobs:
        with ThreadPoolExecutor(nthreads) as ex:
            results = list(ex.map(lambda sc: run_check(*sc), jobs))
    else:
        results = [run_check(s, c) for s, c in jobs]
    return results, emit_report(results, cfg.format or "text")


def do_oracle(kind, cfg: RunConfig, depth_m):
    from . import serialization as S
    from .series_oracle import LogParams, TrigParams, oracle_log_coeffs, oracle_trig_coeffs
    n = cfg.depth if cfg.depth is not None else 4
    if kind.startswith("trig"):
        prm = {"trig": TrigParams.generic, "trig-b": TrigParams.generic_b,
               "trig-truncated": TrigParams.truncated,
               "trig-doubly-truncated": TrigParams.doubly_truncated}[kind]()
        run = oracle_trig_coeffs(n, prm)
    else:
        run = oracle_log_coeffs(n, depth_m, LogParams.generic())
    grid = _bind(run.grid, cfg.params)
    fmt = cfg.format or "json"
    if fmt == "json":
        return S.dumps(f"oracle/{kind}", {"depth": run.depth, "free_symbols": run.free_symbols,
                                          "grid": grid, "residual_order": run.residual_order})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "j", "value"])
        for (a, b), v in sorted(grid.items()):
            w.writerow([a, b, v])
        return buf.getvalue()
    if fmt == "latex":
        from .report import latex_document
        return latex_document({f"[{a},{b}]": v for (a, b), v in sorted(grid.items())},
                              title=f"{kind} oracle grid")
    return "".join(f"[{a},{b}] = {v}\n" for (a, b), v in sorted(grid.items()))


def _truncated_series(cfg):
    from .numerics import bind_truncated
    from .trig_expansion import compute_truncated
    prm = dp3_params(cfg)
    data = compute_truncated("both-zero", 10)
    return bind_truncated(data.b2n, prm.a, prm), prm


def do_numeval(cfg: RunConfig, rho_min, rho_max, samples, angle):
    from .numerics import PathSpec, prefactor
    ser, prm = _truncated_series(cfg)
    N = cfg.depth if cfg.depth is not None else 3
    if N > len(ser.nonzero_terms()) - 1:
        raise ConfigError(f"at most {len(ser.nonzero_terms()) - 1} nonzero corrections are available")
    path = PathSpec(angle, rho_min, rho_max, samples)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rho", "re_u", "im_u", "next_term"])
    for r in path.radii():
        tau = path.tau(r)
        u = ser.value(N, tau)
        nxt = abs(prefactor(tau, prm) * ser.term(N + 1, tau))
        w.writerow([repr(float(r)), repr(u.real), repr(u.imag), repr(nxt)])
    return buf.getvalue()


def do_validate(cfg: RunConfig, orders, rho_min, rho_max, start):
    import numpy as np
    from .numerics import PathSpec, asymptotic_validation, integrate_dp3
    ser, prm = _truncated_series(cfg)
    top = len(ser.nonzero_terms())
    path = PathSpec(0.0, start, rho_min, 400)
    sol = integrate_dp3(prm, (complex(start), ser.value(top, start), ser.derivative(top, start)), path,
                        rtol=1e-13, atol=1e-16)
    rep = asymptotic_validation(sol, ser, list(range(1, orders + 1)),
                                rhos=np.linspace(rho_min, rho_max, 200), factor=10.0)
    fmt = cfg.format or "text"
    if fmt == "json":
        from .serialization import dumps
        text = dumps("validate", {"orders": rep.orders, "errors": rep.errors, "next_terms": rep.next_terms,
                                  "monotone": rep.monotone, "within_factor": rep.within_factor})
    elif fmt == "csv":
        text = "N,err,next\n" + "".join(f"{N},{rep.errors[N]!r},{rep.next_terms[N]!r}\n" for N in rep.orders)
    else:
        text = "\n".join(rep.lines()) + f"\n{'PASS' if rep.passed else 'FAIL'}\n"
    return rep.passed, text


def do_bridge(cfg: RunConfig):
    from . import serialization as S
    from .elliptic_expansion import branch_from_q, weierstrass_bridge
    W = weierstrass_bridge()
    payload = {"e": W.e, "mu2": W.mu2, "g2": W.g2, "g3": W.g3, "Aphi": W.Aphi, "checks": W.checks()}
    if "q" in cfg.params:
        br = branch_from_q(numeric(cfg.params["q"], "q"),
                           s_sign=-1 if cfg.branch.get("s") == "-" else 1,
                           P_sign=-1 if cfg.branch.get("P") == "-" else 1)
        payload["branch"] = {"q": br.q, "s": br.s, "k2": br.k2, "P_over_p": br.P_over_p,
                             "Aphi": 2 ** (2 / 3) * (2 * br.q ** 3 + 1) / br.q ** 2}
    ok = all(payload["checks"].values())
    fmt = cfg.format or "json"
    if fmt == "json":
        return ok, S.dumps("bridge", payload)
    if fmt == "latex":
        from .report import latex_document
        return ok, latex_document({k: payload[k] for k in ("mu2", "g2", "g3", "Aphi")}, title="Weierstrass data")
    lines = [f"{k} = {payload[k]}" for k in ("mu2", "g2", "g3", "Aphi")]
    lines += [f"check {k}: {'PASS' if v else 'FAIL'}" for k, v in payload["checks"].items()]
    if "branch" in payload:
        lines += [f"{k} = {v}" for k, v in payload["branch"].items()]
    return ok, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# click surface

def _common(f):
    f = click.option("--config", "config_path", type=click.Path(), default=None,
                     help="JSON configuration file; flags override its keys.")(f)
    f = click.option("--out", default=None, help="Output file (relative to DP3ASYM_OUT_DIR if set).")(f)
    f = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None)(f)
    f = click.option("--tol", type=float, default=None)(f)
    f = click.option("--branch", multiple=True, help="Branch flag s=+|- or P=+|-.")(f)
    f = click.option("--param", multiple=True, help="Parameter binding name=value.")(f)
    f = click.option("--depth", "--k", "depth", type=int, default=None, help="Truncation depth.")(f)
    return f


def _cfg(command, config_path, depth, param, branch, tol, fmt, out, **extra):
    return load_config(config_path, {"command": command, "depth": depth,
                                     "params": parse_bindings(param),
                                     "branch": parse_bindings(branch, "branch"),
                                     "tol": tol, "format": fmt, "out": out, **extra})


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact asymptotic expansions for the degenerate third Painleve equation."""


@main.command()
@click.argument("kind", type=click.Choice(EXPAND_KINDS))
@_common
def expand(kind, **kw):
    """Compute generators of one expansion family."""
    cfg = _cfg("expand", **kw)
    emit(do_expand(kind, cfg), cfg.out)


@main.command()
@click.option("--suite", "suites", multiple=True, help="Suite name or 'all'; repeatable.")
@_common
def verify(suites, **kw):
    """Run equality and property suites and print a pass/fail table."""
    cfg = _cfg("verify", suites=list(suites), **kw)
    results, text = do_verify(cfg)
    emit(text, cfg.out)
    failed = [r for r in results if not r.passed]
    for r in failed:
        click.echo(f"FAILED {r.suite}/{r.name}: {r.citation}", err=True)
    sys.exit(1 if failed else 0)


@main.command()
@click.argument("kind", type=click.Choice(("trig", "trig-b", "trig-truncated", "trig-doubly-truncated", "log")))
@click.option("--depth-m", type=int, default=2, help="Highest power of the inner variable (log grids).")
@_common
def oracle(kind, depth_m, **kw):
    """Emit a coefficient grid from the direct series substitution."""
    cfg = _cfg("oracle", **kw)
    emit(do_oracle(kind, cfg, depth_m), cfg.out)


@main.command()
@click.option("--rho-min", type=float, default=10.0)
@click.option("--rho-max", type=float, default=100.0)
@click.option("--samples", type=int, default=50)
@click.option("--angle", type=float, default=0.0, help="Ray angle arg(tau).")
@_common
def numeval(rho_min, rho_max, samples, angle, **kw):
    """Evaluate the doubly truncated series along a ray (CSV: rho, re_u, im_u, next_term)."""
    cfg = _cfg("numeval", **kw)
    emit(do_numeval(cfg, rho_min, rho_max, samples, angle), cfg.out)


@main.command()
@click.option("--orders", type=int, default=5)
@click.option("--rho-min", type=float, default=10.0)
@click.option("--rho-max", type=float, default=100.0)
@click.option("--start", type=float, default=1000.0, help="Radius where the integration starts.")
@_common
def validate(orders, rho_min, rho_max, start, **kw):
    """Compare truncated series with an integrated solution; exit 1 on failure."""
    cfg = _cfg("validate", **kw)
    ok, text = do_validate(cfg, orders, rho_min, rho_max, start)
    emit(text, cfg.out)
    sys.exit(0 if ok else 1)


@main.command()
@_common
def bridge(**kw):
    """Weierstrass invariants in terms of q; with --param q=... a numeric branch."""
    cfg = _cfg("bridge", **kw)
    ok, text = do_bridge(cfg)
    emit(text, cfg.out)
    sys.exit(0 if ok else 1)


def run(argv=None):
    """Console entry: configuration and input errors exit with status 2."""
    try:
        rv = main.main(args=argv, standalone_mode=False)
    except click.exceptions.UsageError as exc:
        exc.show()
        return 2
    except click.exceptions.Abort:
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return 2
    except Dp3Error as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return 2
    return rv if isinstance(rv, int) else 0


def entry():
    sys.exit(run())


if __name__ == "__main__":
    entry()
