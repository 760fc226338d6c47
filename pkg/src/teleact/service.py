"""Stateless HTTP facade over the design pipeline, consumed by the explorer UI.

POST /api/generate   design JSON -> mesh (base64 STL) + diagnostics + bend + metrics
POST /api/bend       {s0, s1, r, h0?} -> tilted-cone prediction
GET  /api/presets    the named preset designs
GET  /healthz        liveness probe

Responses depend only on the request body; the preset table is immutable
after startup.  Meshes above the size cap are refused with 413.
"""

from __future__ import annotations

import base64
import json
import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .bend import BendInputs, InfeasibleConeError, predict_from_design, solve_tilted_cone
from .params import ValidationError, collect_errors, design_from_dict, design_to_dict
from .presets import preset, preset_names
from .solid import export_stl, loft, mesh_diagnostics
from .sweep import evaluate_design

__all__ = ["app", "create_app", "MESH_SIZE_CAP_BYTES"]

MESH_SIZE_CAP_BYTES = 20 * 1024 * 1024
_STL_TRIANGLE_BYTES = 50
_STL_PREFIX_BYTES = 84


def _error(status: int, errors: list[str]) -> JSONResponse:
    return JSONResponse({"errors": errors}, status_code=status)


async def _json_body(request: Request):
    try:
        return json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        return _error(400, [f"malformed JSON body: {exc}"])


def create_app() -> FastAPI:
    app = FastAPI(title="teleact design service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[os.environ.get("TELEACT_UI_ORIGIN", "*")],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    presets = {name: preset(name) for name in preset_names()}

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "version": __version__}

    @app.get("/api/presets")
    async def get_presets():
        return {
            "presets": [
                {"name": name, "params": design_to_dict(design)}
                for name, design in presets.items()
            ]
        }

    @app.post("/api/bend")
    async def post_bend(request: Request):
        body = await _json_body(request)
        if isinstance(body, JSONResponse):
            return body
        if not isinstance(body, dict):
            return _error(422, ["body must be an object with s0, s1, r, and optional h0"])
        errors = []
        values = {}
        for key in ("s0", "s1", "r"):
            v = body.get(key)
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                errors.append(f"{key} must be a number (got {v!r})")
            else:
                values[key] = float(v)
        h0 = body.get("h0")
        if h0 is not None and (not isinstance(h0, (int, float)) or isinstance(h0, bool)):
            errors.append(f"h0 must be a number when given (got {h0!r})")
        if errors:
            return _error(422, errors)
        try:
            prediction = solve_tilted_cone(
                BendInputs(values["s0"], values["s1"], values["r"], None if h0 is None else float(h0))
            )
        except (InfeasibleConeError, ValueError) as exc:
            return _error(422, [str(exc)])
        return prediction.to_dict()

    @app.post("/api/generate")
    async def post_generate(request: Request):
        body = await _json_body(request)
        if isinstance(body, JSONResponse):
            return body
        if not isinstance(body, dict):
            return _error(422, ["body must be a design config object"])
        try:
            design = design_from_dict(body)
        except ValidationError as exc:
            return _error(422, exc.errors)
        errors = collect_errors(design)
        if errors:
            return _error(422, errors)

        res = design.resolution
        n_frames = round(360.0 / res.angular_step_deg)
        estimated = _STL_PREFIX_BYTES + _STL_TRIANGLE_BYTES * 2 * n_frames * res.contour_points
        if estimated > MESH_SIZE_CAP_BYTES:
            return _error(413, [
                f"mesh would be about {estimated} bytes, above the {MESH_SIZE_CAP_BYTES} byte cap; "
                "reduce contour_points or increase angular_step_deg"
            ])

        mesh = loft(design)
        stl = export_stl(mesh)
        if len(stl) > MESH_SIZE_CAP_BYTES:
            return _error(413, [f"mesh is {len(stl)} bytes, above the {MESH_SIZE_CAP_BYTES} byte cap"])
        report = mesh_diagnostics(mesh)
        if not report.watertight:
            return _error(500, ["generated mesh failed the watertight check"])
        return {
            "mesh_stl_base64": base64.b64encode(stl).decode("ascii"),
            "design_digest": mesh.provenance,
            "diagnostics": report.to_dict(),
            "bend": predict_from_design(design).to_dict(),
            "metrics": evaluate_design(design),
        }

    ui_dir = os.environ.get("TELEACT_UI_DIR", "frontend/dist")
    if Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


app = create_app()
