import random
from collections.abc import AsyncGenerator

import httpx
import pytest
from asgi_lifespan import LifespanManager
from httpx import ASGITransport
from starlette.applications import Starlette

from qtorus.lib.cyclotomic import CycParams


@pytest.fixture
def anyio_backend() -> str:
    return "asyncio"


@pytest.fixture(params=[3, 5, 7], ids=lambda n: f"n{n}")
def params(request: pytest.FixtureRequest) -> CycParams:
    return CycParams(request.param)


@pytest.fixture
def p3() -> CycParams:
    return CycParams(3)


@pytest.fixture
def p5() -> CycParams:
    return CycParams(5)


@pytest.fixture
def rng() -> random.Random:
    """Seeded so failures replay."""
    return random.Random(20240611)


@pytest.fixture
def app() -> Starlette:
    from qtorus.lib.mcp_server import mcp
    from qtorus.run import build_app
    # a session manager runs once; each test gets a fresh one
    mcp._session_manager = None  # pyright: ignore[reportPrivateUsage]
    return build_app()


@pytest.fixture
async def client(app: Starlette) -> AsyncGenerator[httpx.AsyncClient, None]:
    async with LifespanManager(app):  # runs startup/shutdown
        transport = ASGITransport(app=app)
        headers = {
            "accept": "application/json, text/event-stream",
            "content-type": "application/json"
        }
        # 127.0.0.1 passes the server's host check
        async with httpx.AsyncClient(transport=transport, base_url="http://127.0.0.1:6542", headers=headers) as c:
            yield c
