"""HTTP wrapper around the measurement engine.

Error mapping: domain validation problems (including malformed request
bodies) come back as 400, numerical breakdowns as 422, both with an
{"error", "message"} body. Everything else is a plain 200 with the
operation's response model.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..errors import NumericalError, ValidationError
from . import handlers, models


def create_app() -> FastAPI:
    app = FastAPI(title="liquidpower", version="0.1.0")

    @app.exception_handler(ValidationError)
    async def on_validation_error(request: Request, exc: ValidationError):
        return JSONResponse(status_code=400,
                            content={"error": type(exc).__name__, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def on_request_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "ValidationError", "message": str(exc.errors())})

    @app.exception_handler(NumericalError)
    async def on_numerical_error(request: Request, exc: NumericalError):
        return JSONResponse(status_code=422,
                            content={"error": type(exc).__name__, "message": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/power", response_model=models.PowerResponse)
    def power(req: models.PowerRequest):
        return handlers.handle_power(req)

    @app.post("/game/dynamics", response_model=models.DynamicsResponse)
    def game_dynamics(req: models.DynamicsRequest):
        return handlers.handle_dynamics(req)

    @app.post("/game/verify", response_model=models.VerifyResponse)
    def game_verify(req: models.VerifyRequest):
        return handlers.handle_verify(req)

    @app.post("/game/best-response", response_model=models.BestResponseResponse)
    def game_best_response(req: models.BestResponseRequest):
        return handlers.handle_best_response(req)

    @app.post("/check", response_model=models.CheckResponse)
    def check(req: models.CheckRequest):
        return handlers.handle_check(req)

    @app.post("/oracle/particles", response_model=models.ParticlesResponse)
    def oracle_particles(req: models.ParticlesRequest):
        return handlers.handle_particles(req)

    @app.post("/oracle/grid", response_model=models.GridResponse)
    def oracle_grid(req: models.GridRequest):
        return handlers.handle_grid(req)

    @app.post("/oracle/enumerate", response_model=models.EnumerateResponse)
    def oracle_enumerate(req: models.EnumerateRequest):
        return handlers.handle_enumerate(req)

    return app


app = create_app()
