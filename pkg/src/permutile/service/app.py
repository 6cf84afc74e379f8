"""HTTP front-end: one endpoint per command, documents in and out."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..core import errors
from . import handlers
from .models import (
    ConeRequest,
    DocumentModel,
    EquivRequest,
    FactorizeRequest,
    StandardizeRequest,
    StatespaceRequest,
    VerifyRequest,
    VerifyResponse,
)

_STATUS = [
    (
        (
            errors.ParseError,
            errors.NotARedex,
            errors.InvalidOccurrence,
            errors.SamePosition,
            errors.EndpointMismatch,
            errors.NonComposable,
            errors.NotStandard,
            errors.InvalidApplication,
        ),
        400,
    ),
    ((errors.FuelExhausted, errors.ClosureBudgetExceeded, errors.EnumerationBudgetExceeded), 422),
    (
        (
            errors.FactorisationCheckFailed,
            errors.NoFactorisation,
            errors.MultipleFactorisations,
            errors.InstanceCoherenceError,
        ),
        409,
    ),
]


def _status_for(error: errors.PermutileError) -> int:
    for classes, status in _STATUS:
        if isinstance(error, classes):
            return status
    return 400


def create_app() -> FastAPI:
    app = FastAPI(title="permutile", version="0.1.0")

    @app.exception_handler(errors.PermutileError)
    async def handle_domain_error(request: Request, error: errors.PermutileError):
        return JSONResponse(
            status_code=_status_for(error),
            content={"error": type(error).__name__, "detail": str(error)},
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/standardize", response_model=DocumentModel, response_model_exclude_none=False)
    def standardize(request: StandardizeRequest):
        session = handlers.build_session(request.instance, request.bounds)
        return handlers.run_standardize(session, request.term, request.script)

    @app.post("/equiv", response_model=DocumentModel)
    def equiv(request: EquivRequest):
        session = handlers.build_session(request.instance, request.bounds)
        return handlers.run_equiv(session, request.term, request.script, request.script2)

    @app.post("/factorize", response_model=DocumentModel)
    def factorize(request: FactorizeRequest):
        session = handlers.build_session(request.instance, request.bounds)
        return handlers.run_factorize(session, request.term, request.script)

    @app.post("/cone", response_model=DocumentModel)
    def cone(request: ConeRequest):
        session = handlers.build_session(request.instance, request.bounds)
        return handlers.run_cone(session, request.term)

    @app.post("/statespace", response_model=DocumentModel)
    def statespace(request: StatespaceRequest):
        session = handlers.build_session(request.instance, request.bounds)
        return handlers.run_statespace(session, request.term, request.script)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(request: VerifyRequest):
        return handlers.run_verify(request.document)

    return app


app = create_app()
