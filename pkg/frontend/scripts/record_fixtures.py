"""Record API fixtures for the explorer tests from a live session server.

Writes JSON files into ../tests/fixtures:

- notation_state.json / notation_moves.json: a 4x4x4 tiling whose leftmost
  floor holds exactly four circles, all paired into the next floor.
- frozen_state.json / frozen_moves.json: a rigid tiling with no moves.
- session_<n>.json: recorded random walks (moves, undo, reset) with every
  request and response, for replay tests.

Run from the repository root with the package installed:

    python3 frontend/scripts/record_fixtures.py
"""

import json
import pathlib
import random
import threading
import urllib.error
import urllib.request

from dominotwist import cli, geometry as geo, tiling as tl

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def notation_tiling() -> tl.Tiling:
    """Four floors: a ring of bars around four vertical dominoes on the two
    left floors, vertical dominoes everywhere on the two right floors."""
    box = geo.make_box(4, 4, 4)
    ring = [
        ((0, 0), (1, 0)), ((2, 0), (3, 0)), ((3, 1), (3, 2)),
        ((3, 3), (2, 3)), ((1, 3), (0, 3)), ((0, 2), (0, 1)),
    ]
    pairs = []
    for z in (0, 1):
        pairs += [((ax, ay, z), (bx, by, z)) for (ax, ay), (bx, by) in ring]
    pairs += [((x, y, 0), (x, y, 1)) for x in (1, 2) for y in (1, 2)]
    pairs += [((x, y, 2), (x, y, 3)) for x in range(4) for y in range(4)]
    return tl.Tiling(box, [tl.Domino.pair(a, b) for a, b in pairs])


def fetch(base: str, method: str, path: str, body: dict | None = None):
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(base + path, data=data, method=method)
    if data is not None:
        req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read().decode())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode())


def serve(tiling: tl.Tiling):
    server = cli.make_server(tiling.region, tiling, 0)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    return server, f"http://127.0.0.1:{server.server_address[1]}"


def record_pair(tiling: tl.Tiling, prefix: str) -> None:
    server, base = serve(tiling)
    try:
        _, state = fetch(base, "GET", "/api/v1/state")
        _, moves = fetch(base, "GET", "/api/v1/moves")
    finally:
        server.shutdown()
        server.server_close()
    (OUT / f"{prefix}_state.json").write_text(json.dumps(state, indent=1))
    (OUT / f"{prefix}_moves.json").write_text(json.dumps(moves, indent=1))


def record_session(tiling: tl.Tiling, seed: int, steps: int) -> None:
    rng = random.Random(seed)
    server, base = serve(tiling)
    entries = []

    def step(method: str, path: str, body: dict | None = None):
        status, payload = fetch(base, method, path, body)
        request = {"method": method, "path": path}
        if body is not None:
            request["body"] = body
        entries.append({"request": request, "response": {"status": status, "body": payload}})
        return payload

    try:
        step("GET", "/api/v1/state")
        moves = step("GET", "/api/v1/moves")
        for _ in range(steps):
            candidates = moves["flips"] + moves["trits"]
            roll = rng.random()
            if roll < 0.15:
                snapshot = step("POST", "/api/v1/undo")
            elif roll < 0.22:
                snapshot = step("POST", "/api/v1/reset")
            elif candidates:
                picked = rng.choice(candidates)
                snapshot = step("POST", "/api/v1/move", {"id": picked["id"]})
            else:
                snapshot = step("POST", "/api/v1/reset")
            if "moves" in snapshot:
                moves = snapshot["moves"]
    finally:
        server.shutdown()
        server.server_close()
    (OUT / f"session_{seed}.json").write_text(json.dumps(entries, indent=1))


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    record_pair(notation_tiling(), "notation")

    fixtures = pathlib.Path(__file__).resolve().parents[2] / "tests" / "fixtures"
    frozen = json.loads((fixtures / "frozen_depth3.json").read_text())
    region = geo.region_from_json(frozen["region"])
    record_pair(tl.tiling_from_json(frozen["tiling"], region), "frozen")

    walk = json.loads((fixtures / "flip_example.json").read_text())
    region = geo.region_from_json(walk["region"])
    start = tl.tiling_from_json(walk["tiling"], region)
    for seed in (1, 2, 3):
        record_session(start, seed, steps=14)
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
