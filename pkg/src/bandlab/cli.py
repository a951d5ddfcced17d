"""Command-line entry point: build and export quivers and seeds, sample
bands, run the verification batteries, expand theta polynomials, and
serve the HTTP JSON API used by the web explorer.

Exit codes: 0 success, 2 usage error, 3 verification failure,
4 internal invariant breach.
"""

import json
import sys
import time

import click

from . import bands as _bands
from . import tsystem as _tsystem
from .coxeter import make_coxeter
from .quiverzoo import (
    WindowSpec,
    build_gamma0,
    build_gamma_tilde_window,
    build_theta_seed,
)
from .rootdata import cartan_data

EXIT_VERIFY = 3
EXIT_INTERNAL = 4


def _coxeter(type_, cox):
    data = cartan_data(type_)
    if cox:
        word = tuple(int(x) for x in cox.split(","))
    else:
        word = tuple(range(1, data.rank + 1))
    return make_coxeter(data, word)


def _window(text):
    lo, hi = text.split(":")
    return int(lo), int(hi)


def _emit(seed, fmt):
    if fmt == "dot":
        click.echo(seed.quiver.to_dot(seed.labels))
    else:
        click.echo(json.dumps(seed.to_json(), indent=2))


def _finish(report):
    click.echo(json.dumps(report, indent=2, default=str))
    if not report.get("ok", False):
        sys.exit(EXIT_VERIFY)


@click.group()
def main():
    """Seeds of band varieties: quivers, minors, exact verification."""


# ---------------------------------------------------------------------------
# quiver


@main.group()
def quiver():
    """Build and export quivers."""


@quiver.command("gamma-tilde")
@click.option("--type", "type_", default="A2", show_default=True)
@click.option("--cox", default="", help="Coxeter word, e.g. 2,1,3.")
@click.option("--window", default="-1:1", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]),
              default="json", show_default=True)
def quiver_gamma_tilde(type_, cox, window, fmt):
    """The window seed with minor labels."""
    c = _coxeter(type_, cox)
    M, N = _window(window)
    _emit(build_gamma_tilde_window(WindowSpec(c, M, N)), fmt)


@quiver.command("gamma0")
@click.option("--type", "type_", default="A2", show_default=True)
@click.option("--cox", default="")
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]),
              default="json", show_default=True)
def quiver_gamma0(type_, cox, fmt):
    """The finite initial seed."""
    _emit(build_gamma0(_coxeter(type_, cox)), fmt)


@quiver.command("theta")
@click.option("--type", "type_", default="A2", show_default=True)
@click.option("--cox", default="")
@click.option("--rows", "n_rows", default=3, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]),
              default="json", show_default=True)
def quiver_theta(type_, cox, n_rows, fmt):
    """The N-row invariant-ring ladder seed."""
    c = _coxeter(type_, cox)
    _emit(build_theta_seed(c.data, c, n_rows), fmt)


# ---------------------------------------------------------------------------
# band


@main.group()
def band():
    """Sample and export band windows."""


@band.command("sample")
@click.option("--n", default=3, show_default=True)
@click.option("--window", default="-3:3", show_default=True)
@click.option("--seed", default=0, show_default=True)
def band_sample(n, window, seed):
    """A random exact band window as JSON."""
    import random

    M, N = _window(window)
    B = _bands.random_band(n, M, N, random.Random(seed))
    click.echo(json.dumps(B.to_json(), indent=2))


# ---------------------------------------------------------------------------
# verify

_SIMPLE_KINDS = ("gluing", "theta-psi", "tsystem", "cubic", "fz-minor",
                 "black-mutation", "laurent")


def _run_verify(kind, n, samples, seed, window, rows):
    t0 = time.monotonic()
    if kind in _SIMPLE_KINDS:
        kwargs = {"samples": samples, "seed": seed}
        if kind != "cubic":
            kwargs["n"] = n
        report = _bands.verify_identity(kind, **kwargs)
    elif kind == "translation":
        report = _bands.verify_translation(n=n, window=window,
                                           samples=samples, seed=seed)
    elif kind == "seq-m":
        report = _bands.verify_sequence_M(n=n, samples=samples, seed=seed)
    elif kind == "ladder":
        c = _bands._cst(n)
        report = _tsystem.ladder_verify(c.data, c, rows)
    else:
        raise click.UsageError(f"unknown check {kind!r}")
    report["seed"] = seed
    report["seconds"] = round(time.monotonic() - t0, 3)
    return report


@main.command("verify")
@click.argument("kind", type=click.Choice(
    _SIMPLE_KINDS + ("translation", "seq-m", "ladder", "all")))
@click.option("--n", default=3, show_default=True)
@click.option("--samples", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--window", default="-2:2", show_default=True)
@click.option("--rows", default=3, show_default=True,
              help="Ladder height for the 'ladder' check.")
@click.option("--quick", is_flag=True, help="Smaller sample counts.")
def verify(kind, n, samples, seed, window, rows, quick):
    """Run an exact verification battery; exit 3 on any failure."""
    if quick:
        samples = min(samples, 5)
    win = _window(window)
    try:
        if kind == "all":
            reports = []
            for k in _SIMPLE_KINDS + ("translation", "seq-m", "ladder"):
                reports.append(_run_verify(k, n, samples, seed, win, rows))
            report = {"kind": "all",
                      "instances": sum(r["instances"] for r in reports),
                      "failures": [f for r in reports for f in r["failures"]],
                      "ok": all(r["ok"] for r in reports),
                      "parts": reports, "seed": seed}
        else:
            report = _run_verify(kind, n, samples, seed, win, rows)
    except AssertionError as exc:
        click.echo(f"internal invariant breach: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    _finish(report)


# ---------------------------------------------------------------------------
# mutate


@main.command("mutate")
@click.option("--n", default=3, show_default=True)
@click.option("--window", default="-2:2", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]),
              default="json", show_default=True)
@click.argument("vertices", nargs=-1)
def mutate(n, window, seed, fmt, vertices):
    """Mutate the demo window seed at VERTICES (each "i,r") and print
    the resulting seed."""
    cur, _, _ = _bands.demo_seed(n, _window(window), seed)
    from .quiverzoo import session_mutate

    try:
        for spec in vertices:
            i, r = (int(x) for x in spec.split(","))
            cur = session_mutate(cur, (i, r))
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"cannot mutate {spec!r}: {exc}")
    _emit(cur, fmt)


# ---------------------------------------------------------------------------
# tsys


@main.group()
def tsys():
    """Symbolic theta polynomials and ladder checks."""


@tsys.command("expand")
@click.option("--type", "type_", default="A2", show_default=True)
@click.option("--cox", default="")
@click.option("--i", "i_", default=1, show_default=True)
@click.option("--k", default=2, show_default=True)
@click.option("--s", default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def tsys_expand(type_, cox, i_, k, s, fmt):
    """Expand theta^{(s)}_{i,k} in the level-1 variables."""
    c = _coxeter(type_, cox)
    p = _tsystem.theta_poly(c, i_, k, s)
    if fmt == "json":
        click.echo(json.dumps({"i": i_, "k": k, "s": s,
                               "terms": p.to_json()}, indent=2))
    else:
        click.echo(f"th^({s})[{i_},{k}] = {p}")


@tsys.command("ladder")
@click.option("--type", "type_", default="A2", show_default=True)
@click.option("--cox", default="")
@click.option("--rows", "n_rows", default=3, show_default=True)
def tsys_ladder(type_, cox, n_rows):
    """Run the mutation cascades on the ladder seed symbolically."""
    c = _coxeter(type_, cox)
    _finish(_tsystem.ladder_verify(c.data, c, n_rows))


# ---------------------------------------------------------------------------
# serve


def create_app(n=3, window=(-2, 2), seed=0):
    """The HTTP JSON API: one mutable seed session per process."""
    import threading

    from fastapi import FastAPI, HTTPException
    from fastapi.responses import FileResponse
    from pydantic import BaseModel

    base, band_window, _ = _bands.demo_seed(n, window, seed)
    app = FastAPI(title="band seed explorer")
    lock = threading.Lock()
    session = {"stack": [base], "history": []}

    class MutateRequest(BaseModel):
        vertex: list

    def state():
        cur = session["stack"][-1]
        data = cur.to_json()
        data["history"] = [list(v) for v in session["history"]]
        data["n"] = n
        data["window"] = list(window)
        return data

    @app.get("/api/state")
    def get_state():
        with lock:
            return state()

    @app.post("/api/mutate")
    def post_mutate(req: MutateRequest):
        vid = tuple(req.vertex)
        with lock:
            cur = session["stack"][-1]
            v = cur.quiver.vertices.get(vid)
            if v is None:
                raise HTTPException(404, f"no vertex {list(vid)}")
            if v.frozen:
                raise HTTPException(409, f"vertex {list(vid)} is frozen")
            try:
                from .quiverzoo import session_mutate

                nxt = session_mutate(cur, vid)
            except ZeroDivisionError:
                raise HTTPException(
                    422, f"vertex {list(vid)} has value zero: the exchange "
                         f"is undefined on this band")
            session["stack"].append(nxt)
            session["history"].append(vid)
            return state()

    @app.post("/api/undo")
    def post_undo():
        with lock:
            if len(session["stack"]) > 1:
                session["stack"].pop()
                session["history"].pop()
            return state()

    @app.post("/api/reset")
    def post_reset():
        with lock:
            session["stack"] = [base]
            session["history"] = []
            return state()

    @app.get("/api/band")
    def get_band():
        return band_window.to_json()

    from pathlib import Path

    static = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if static.is_dir():
        from fastapi.staticfiles import StaticFiles

        @app.get("/")
        def index():
            return FileResponse(static / "index.html")

        app.mount("/assets", StaticFiles(directory=static / "assets"),
                  name="assets")
    return app


@main.command("serve")
@click.option("--n", default=3, show_default=True)
@click.option("--window", default="-2:2", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8700, show_default=True)
def serve(n, window, seed, host, port):
    """Serve the JSON API (and the web explorer if built)."""
    import uvicorn

    app = create_app(n, _window(window), seed)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
