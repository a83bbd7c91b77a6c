"""HTTP face of the toolchain, consumed by the studio UI.

Stateless JSON-over-HTTP: every response carries {ok, diagnostics, result?}
and diagnostics is always present (possibly empty) with 1-based line/col
matching the parser's spans exactly. Language and simulation problems come
back as ok=false with HTTP 200; malformed requests get a structured 400,
oversized bodies a 413. Simulations are cut off after 10 seconds of wall
clock. CORS is wide open so the UI can be served from anywhere during
development; built studio assets are served at / when a directory is given.
"""
from __future__ import annotations

import os
import random

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__, compile_source
from .arch import export_description
from .diagnostics import Diagnostic, Severity, Span, has_errors, warning
from .diagram import layout, render_svg, render_text
from .ir import count_ops
from .sim import SimulationError, run

MAX_BODY_BYTES = 1 << 20  # 1 MiB
SIMULATION_TIME_LIMIT = 10.0  # seconds
MAX_SHOTS = 1 << 20


class Options(BaseModel):
    shots: int | None = None
    seed: int | None = None
    format: str | None = None
    ascii_only: bool = False


class SourceRequest(BaseModel):
    source: str
    options: Options = Options()


def _payload(diagnostics: list[Diagnostic], result=None) -> dict:
    body = {
        "ok": not has_errors(diagnostics),
        "diagnostics": [d.to_dict() for d in diagnostics],
    }
    if result is not None:
        body["result"] = result
    return body


def _sim_error_diag(exc: SimulationError) -> Diagnostic:
    return Diagnostic(Severity.ERROR, exc.code, exc.message, Span(1, 1, 0))


def create_app(ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="qadl-service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def limit_body_size(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > MAX_BODY_BYTES:
            return JSONResponse(
                status_code=413,
                content=_payload(
                    [
                        Diagnostic(
                            Severity.ERROR,
                            "RequestTooLarge",
                            f"request body exceeds the {MAX_BODY_BYTES} byte limit",
                            Span(1, 1, 0),
                        )
                    ]
                ),
            )
        return await call_next(request)

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        messages = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        return JSONResponse(
            status_code=400,
            content=_payload(
                [
                    Diagnostic(
                        Severity.ERROR,
                        "MalformedRequest",
                        f"malformed request body: {messages}",
                        Span(1, 1, 0),
                    )
                ]
            ),
        )

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/parse")
    def parse(req: SourceRequest):
        ir, diagnostics = compile_source(req.source)
        if ir is None:
            return _payload(diagnostics)
        totals = count_ops(ir)
        return _payload(
            diagnostics,
            {
                "name": ir.name,
                "qubits": ir.n_qubits,
                "cbits": len(ir.cbit_names),
                "gates": totals["gates"],
                "measures": totals["measures"],
                "ops": totals["gates"] + totals["measures"],
            },
        )

    @app.post("/api/render")
    def render(req: SourceRequest):
        ir, diagnostics = compile_source(req.source)
        if ir is None:
            return _payload(diagnostics)
        diagram = layout(ir)
        fmt = req.options.format or "svg"
        if fmt == "text":
            document = render_text(diagram, ascii_only=req.options.ascii_only)
        elif fmt == "svg":
            document = render_svg(diagram)
        else:
            return _payload(
                diagnostics
                + [
                    Diagnostic(
                        Severity.ERROR,
                        "UnknownFormat",
                        f"unknown render format {fmt!r} (use 'text' or 'svg')",
                        Span(1, 1, 0),
                    )
                ]
            )
        return _payload(diagnostics, {"format": fmt, "document": document})

    @app.post("/api/simulate")
    def simulate(req: SourceRequest):
        ir, diagnostics = compile_source(req.source)
        if ir is None:
            return _payload(diagnostics)
        shots = req.options.shots if req.options.shots is not None else 1024
        if not 1 <= shots <= MAX_SHOTS:
            return _payload(
                diagnostics
                + [
                    Diagnostic(
                        Severity.ERROR,
                        "BadShotCount",
                        f"shots must be between 1 and {MAX_SHOTS}",
                        Span(1, 1, 0),
                    )
                ]
            )
        seed = req.options.seed if req.options.seed is not None else random.getrandbits(64)
        try:
            outcome = run(ir, shots=shots, seed=seed, wall_clock_limit=SIMULATION_TIME_LIMIT)
        except SimulationError as exc:
            return _payload(diagnostics + [_sim_error_diag(exc)])
        if not ir.cbit_names:
            diagnostics = diagnostics + [
                warning(
                    "NoMeasurements",
                    "circuit has no measurements; nothing to count",
                    Span(1, 1, 0),
                )
            ]
        marginals = {}
        for i, name in enumerate(ir.cbit_names):
            ones = sum(count for bits, count in outcome.counts.items() if bits[i] == "1")
            marginals[name] = ones / outcome.shots
        return _payload(
            diagnostics,
            {
                "seed": outcome.seed,
                "shots": outcome.shots,
                "counts": outcome.counts,
                "marginals": marginals,
            },
        )

    @app.post("/api/export")
    def export(req: SourceRequest):
        ir, diagnostics = compile_source(req.source)
        if ir is None:
            return _payload(diagnostics)
        return _payload(
            diagnostics,
            {"document": export_description(ir), "filename": f"{ir.name}.qadl.arch"},
        )

    if ui_dir is None:
        candidate = os.path.join(os.getcwd(), "frontend", "dist")
        if os.path.isdir(candidate):
            ui_dir = candidate
    if ui_dir is not None and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="studio")
    return app
