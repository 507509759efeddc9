"""HTTP/JSON interface over a QAService snapshot.

POST /ask answers a question, GET /kb/stats reports graph size,
GET /health is a readiness probe. Responses are UTF-8 JSON; malformed
request bodies yield 400, an unready KB yields 503.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .service import QAService


class AskRequest(BaseModel):
    question: str


def create_app(service: QAService | None, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="vnqa")
    # the web console may be served from a different static host
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request body"})

    def ready() -> QAService | None:
        return service

    @app.get("/health")
    def health():
        return {"status": "ok", "ready": ready() is not None}

    @app.get("/kb/stats")
    def kb_stats():
        svc = ready()
        if svc is None:
            return JSONResponse(status_code=503, content={"error": "knowledge base not loaded"})
        stats = svc.stats()
        return {
            "nodes": stats.nodes,
            "relationships": stats.relationships,
            "properties": stats.properties,
        }

    @app.post("/ask")
    def ask(body: AskRequest):
        svc = ready()
        if svc is None:
            return JSONResponse(status_code=503, content={"error": "knowledge base not loaded"})
        return svc.answer(body.question).to_dict()

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
