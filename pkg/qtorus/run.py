import threading
import time

import uvicorn
from starlette.applications import Starlette
from starlette.middleware.cors import CORSMiddleware
from starlette.requests import Request
from starlette.responses import JSONResponse

from qtorus import __version__
from qtorus.config import c_env
from qtorus.lib.logger import get_logger
from qtorus.lib.mcp_server import mcp

log = get_logger(__name__)


def _heartbeat_loop() -> None:
    while True:
        log.info("heartbeat alive")
        time.sleep(c_env.QTORUS_HEARTBEAT_MINS * 60)


def _healthz(_: Request) -> JSONResponse:
    log.debug("healthz hit")
    return JSONResponse({
        "ok": True,
        "version": __version__,
        "default_q_exp": c_env.DEFAULT_Q_EXP,
        "selftest_primes": c_env.SELFTEST_PRIMES,
    })


def build_app() -> Starlette:
    """Streamable HTTP app for the tool module at /mcp, plus /healthz."""
    app = mcp.streamable_http_app()
    # Session header must be readable by browser/IDE clients
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_headers=["*"],
        allow_methods=["*"],
        expose_headers=["Mcp-Session-Id"],
    )
    app.add_route("/healthz", _healthz, methods=["GET"])
    return app


def main() -> None:
    app = build_app()
    threading.Thread(target=_heartbeat_loop, daemon=True).start()
    log.warning(f"qtorus {__version__} serving on 127.0.0.1:{c_env.QTORUS_PORT}/mcp")
    uvicorn.run(app, host="127.0.0.1", port=c_env.QTORUS_PORT, access_log=True)

if __name__ == "__main__":
    main()
