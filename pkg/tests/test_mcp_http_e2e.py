import json
import time
from typing import Any

import httpx
import pytest

from qtorus import __version__
from qtorus.lib.conjugator import ConjugationReport


# Helper functions for MCP handshake and tool calls
async def _initialize(client: httpx.AsyncClient) -> dict[str, str]:
    # 1) MCP initialize
    r = await client.post("/mcp", json={
        "jsonrpc": "2.0",
        "id": 0,
        "method": "initialize",
        "params": {
            "protocolVersion": "2025-03-26",
            "capabilities": {},
            "clientInfo": {"name": "pytest", "version": "0.0.0"}
        }
    })
    assert r.status_code == 200
    sid = r.headers.get("Mcp-Session-Id", "s1")
    assert _parse_sse_response(r).get("result") is not None

    # 2) initialized notification
    r2 = await client.post("/mcp",
        headers={"Mcp-Session-Id": sid},
        json={"jsonrpc": "2.0", "method": "notifications/initialized"}
    )
    assert r2.status_code == 202  # Notifications return 202 Accepted
    return {"Mcp-Session-Id": sid}


def _parse_sse_response(response: httpx.Response) -> dict[str, Any]:
    """Parse Server-Sent Events response to extract JSON data"""
    if response.headers.get("content-type", "").startswith("text/event-stream"):
        for line in response.text.strip().split('\n'):
            if line.startswith('data: '):
                return json.loads(line[6:])  # Remove 'data: ' prefix
    else:
        return response.json()
    raise ValueError("No data found in SSE response")


async def _tool(client: httpx.AsyncClient, headers: dict[str, str], name: str, args: dict[str, Any]) -> dict[str, Any]:
    r = await client.post("/mcp",
        headers=headers,
        json={
            "jsonrpc": "2.0",
            "id": int(time.time() * 1e6) % 1_000_000,  # unique-ish
            "method": "tools/call",
            "params": {"name": name, "arguments": args}
        }
    )
    assert r.status_code == 200
    return _parse_sse_response(r)["result"]


def _text(result: dict[str, Any]) -> str:
    return result["content"][0]["text"]


@pytest.mark.anyio(backends=["asyncio"])
async def test_analyze_tool(client: httpx.AsyncClient) -> None:
    headers = await _initialize(client)
    result = await _tool(client, headers, "analyze", {"n": 3, "mat": "0,-1,1,0"})
    assert not result.get("isError")
    report = ConjugationReport.model_validate_json(_text(result))
    assert report.K_B == 1
    assert report.trace_exact == ["1", "2"]
    assert report.ok


@pytest.mark.anyio(backends=["asyncio"])
async def test_conj_trace_det_cocycle_tools(client: httpx.AsyncClient) -> None:
    headers = await _initialize(client)

    conj = json.loads(_text(await _tool(client, headers, "conj", {"n": 3, "mat": "1,0,3,1"})))
    assert conj["path"]["kind"] == "composed"
    assert conj["nu"] == ["9", "0"]

    trace = json.loads(_text(await _tool(client, headers, "trace", {"n": 5, "mat": "1,1,0,1"})))
    assert trace["K_B"] == 0
    assert trace["trace_exact"] == ["5", "0", "0", "0"]

    det = json.loads(_text(await _tool(client, headers, "det", {"n": 3, "mat": "0,-1,1,0"})))
    assert det["det_modulus_ok"] is True

    lam = json.loads(_text(await _tool(client, headers, "cocycle", {"n": 3, "mat1": "0,-1,1,0", "mat2": "0,1,-1,0"})))
    assert lam["lambda"] == ["1", "0"]
    assert lam["norm"] == "1"


@pytest.mark.anyio(backends=["asyncio"])
async def test_bad_input_is_a_tool_error(client: httpx.AsyncClient) -> None:
    headers = await _initialize(client)
    result = await _tool(client, headers, "analyze", {"n": 4, "mat": "0,-1,1,0"})
    assert result.get("isError") is True
    assert "n must be an odd prime" in _text(result)


@pytest.mark.anyio(backends=["asyncio"])
async def test_healthz(client: httpx.AsyncClient) -> None:
    r = await client.get("/healthz")
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is True
    assert body["version"] == __version__
