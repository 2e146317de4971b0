"""Thin client for the analysis service.

The CLI talks to the service through this interface.  By default requests
are dispatched to the handler functions in-process (no server needed); with
a base URL they are POSTed to a running instance instead, so the same CLI
works against a shared deployment.
"""

from __future__ import annotations

import httpx
from fastapi import HTTPException
from pydantic import BaseModel

from . import service
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    ModelRequest,
    ModelResponse,
    OracleRequest,
    OracleResponse,
    SimulateRequest,
    SimulateResponse,
    StokesRequest,
    StokesResponse,
    SweepRequest,
    SweepResponse,
)


class ServiceError(RuntimeError):
    """Request rejected by the service (maps HTTP 4xx/5xx details)."""


class ServiceClient:
    """Dispatches requests in-process or over HTTP."""

    def __init__(self, base_url: str | None = None, timeout: float = 300.0):
        self.base_url = base_url.rstrip("/") if base_url else None
        self.timeout = timeout

    def analyze(self, request: AnalyzeRequest) -> AnalyzeResponse:
        return self._call("/analyze", service.handle_analyze, request, AnalyzeResponse)

    def sweep(self, request: SweepRequest) -> SweepResponse:
        return self._call("/sweep", service.handle_sweep, request, SweepResponse)

    def model(self, request: ModelRequest) -> ModelResponse:
        return self._call("/model", service.handle_model, request, ModelResponse)

    def stokes(self, request: StokesRequest) -> StokesResponse:
        return self._call("/stokes", service.handle_stokes, request, StokesResponse)

    def simulate(self, request: SimulateRequest) -> SimulateResponse:
        return self._call("/simulate", service.handle_simulate, request, SimulateResponse)

    def oracle(self, request: OracleRequest) -> OracleResponse:
        return self._call("/oracle", service.handle_oracle, request, OracleResponse)

    def _call(self, path: str, handler, request: BaseModel, response_type):
        if self.base_url is None:
            try:
                return handler(request)
            except HTTPException as exc:
                raise ServiceError(str(exc.detail)) from exc
        url = self.base_url + path
        reply = httpx.post(url, json=request.model_dump(), timeout=self.timeout)
        if reply.status_code != 200:
            try:
                detail = reply.json().get("detail", reply.text)
            except ValueError:
                detail = reply.text
            raise ServiceError(f"{path} failed ({reply.status_code}): {detail}")
        return response_type.model_validate(reply.json())
