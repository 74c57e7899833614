"""Loopback HTTP facade over :mod:`ssamask.session`.

Endpoints:
  POST  /sessions                       create a session
  PATCH /sessions/{id}                  apply one mutation (revision-checked)
  GET   /sessions/{id}/views/{view}     spectrum | eigenvector | components |
                                        advisory | preview
  POST  /sessions/{id}/export           masked-signal | microfile | report

Errors come back as ``{"error": {"code": ..., "message": ...}}``.
"""

import io

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .errors import (
    DefinitionError,
    GroupingError,
    IngestionError,
    ParameterError,
    SsamaskError,
    StaleRevisionError,
    StateError,
    SynthesisError,
    UnknownSessionError,
)
from .masking import TrendSpec
from .microdata import QuantitySignal, load_microfile
from .session import SessionStore
from .ssa import Series
from .textio import group_definition_from_config, load_config

_ERROR_MAP = (
    (StaleRevisionError, 409, "stale_revision"),
    (UnknownSessionError, 404, "unknown_session"),
    (StateError, 409, "state"),
    (GroupingError, 400, "grouping"),
    (SynthesisError, 400, "synthesis"),
    (IngestionError, 400, "load"),
    (DefinitionError, 400, "load"),
    (ParameterError, 400, "parameter"),
    (SsamaskError, 400, "error"),
)


def _error_response(exc):
    for kind, status, code in _ERROR_MAP:
        if isinstance(exc, kind):
            return JSONResponse(
                status_code=status,
                content={"error": {"code": code, "message": str(exc)}},
            )
    raise exc


def create_app(store=None):
    app = FastAPI(title="ssamask session service")
    app.state.store = store if store is not None else SessionStore()

    @app.exception_handler(SsamaskError)
    async def handle_toolkit_error(request: Request, exc: SsamaskError):
        return _error_response(exc)

    @app.post("/sessions", status_code=201)
    async def create_session(body: dict):
        store = app.state.store
        if "values" in body:
            values = body["values"]
            labels = body.get("parameter_labels") or [
                str(i + 1) for i in range(len(values))
            ]
            try:
                signal = QuantitySignal(
                    series=Series(values, label=body.get("label", "")),
                    parameter_labels=tuple(labels),
                )
            except ParameterError as exc:
                return JSONResponse(
                    status_code=400,
                    content={"error": {"code": "load", "message": str(exc)}},
                )
            session = store.create(signal)
        elif "microfile" in body:
            # request bodies carry the documents inline, not as paths
            config = load_config(io.StringIO(body["group_config"]))
            group = group_definition_from_config(config)
            identifiers = tuple(config.get("identifiers", ()))
            microfile = load_microfile(
                io.StringIO(body["microfile"]), identifier_columns=identifiers
            )
            session = store.create_from_microfile(
                microfile, group, label=body.get("label")
            )
        else:
            return JSONResponse(
                status_code=400,
                content={
                    "error": {
                        "code": "load",
                        "message": "body needs 'values' or 'microfile'",
                    }
                },
            )
        return session.view()

    @app.patch("/sessions/{session_id}")
    async def update_session(session_id: str, body: dict):
        session = app.state.store.get(session_id)
        revision = body.get("revision")
        if revision is None:
            raise ParameterError("mutation body needs the base 'revision'")
        change = body.get("change") or {}
        kind = change.get("type")
        if kind == "set_window":
            return session.set_window(revision, change["window_length"])
        if kind == "set_grouping":
            return session.set_grouping(
                revision,
                change["subsets"],
                trend_subset=change.get("trend_subset"),
            )
        if kind == "set_trend":
            spec = change.get("trend") or {}
            trend = TrendSpec(
                mode=spec.get("mode"),
                values=tuple(spec["values"]) if "values" in spec else None,
                cap=spec.get("cap"),
                half_width=spec.get("half_width"),
                factor=spec.get("factor"),
            )
            return session.set_trend(revision, trend)
        raise ParameterError(
            f"unknown change type {kind!r}; expected 'set_window', "
            "'set_grouping', or 'set_trend'"
        )

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        return app.state.store.get(session_id).view()

    @app.get("/sessions/{session_id}/views/{view}")
    async def get_view(session_id: str, view: str, index: int | None = None):
        session = app.state.store.get(session_id)
        if view == "spectrum":
            return session.view_spectrum()
        if view == "eigenvector":
            if index is None:
                raise ParameterError(
                    "eigenvector view needs an 'index' query parameter"
                )
            return session.view_eigenvector(index)
        if view == "components":
            return session.view_components()
        if view == "advisory":
            return session.view_advisory()
        if view == "preview":
            return session.view_preview()
        raise ParameterError(
            f"unknown view {view!r}; expected spectrum, eigenvector, "
            "components, advisory, or preview"
        )

    @app.post("/sessions/{session_id}/export")
    async def export(session_id: str, body: dict):
        session = app.state.store.get(session_id)
        what = body.get("what")
        if what is None:
            raise ParameterError("export body needs 'what'")
        return session.export(what, seed=body.get("seed"))

    return app


def serve(host="127.0.0.1", port=8787, static_dir=None):
    """Run the service with uvicorn, optionally serving frontend assets."""
    import uvicorn

    app = create_app()
    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port, log_level="warning")
