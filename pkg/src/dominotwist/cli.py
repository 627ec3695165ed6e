"""Command-line entry points and the interactive HTTP session service.

Subcommands: ``count``, ``enumerate``, ``twist``, ``components``,
``construct``, ``validate``, ``gamma`` and ``serve``.  Regions, planar
bases and tilings travel as the JSON documents produced by the library
codecs; ``--format text`` switches tabular or ASCII-art output where it
exists.

Exit status: 0 on success, 1 on a domain error (untileable input, budget
exceeded, twist undefined), 2 on usage errors.

``serve`` runs a single-session HTTP API under ``/api/v1``: the session
holds one tiling, lists its legal moves under stable ids, applies one move
per POST, and can undo and reset.  Every mutation re-derives the twist and
checks the delta against the move's sign before answering.
"""

from __future__ import annotations

import argparse
import json
import sys
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from dominotwist import construct, curves, explore, geometry as geo, moves as mv
from dominotwist import tiling as tl
from dominotwist import twist as tw
from dominotwist.errors import DominoTwistError, InvariantViolationError, ResourceLimitError


class UsageError(Exception):
    """Bad flag combination; reported through the parser with exit status 2."""


def _read_json(path: str):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def _require(value, flag: str, command: str):
    if not value:
        raise UsageError(f"{command} needs {flag}")
    return value


def _load_region(path: str) -> geo.Region:
    return geo.region_from_json(_read_json(path))


def _load_tiling(path: str, region: geo.Region | None = None) -> tl.Tiling:
    return tl.tiling_from_json(_read_json(path), region)


def _parse_axis(name: str) -> geo.Vec:
    name = name.strip()
    axis = geo.axis_from_name(name.lstrip("+-"))
    return geo.neg(axis) if name.startswith("-") else axis


def _emit(obj, args) -> None:
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True))


def _cmd_count(args) -> int:
    if (args.box is None) == (args.region is None):
        raise UsageError("count needs exactly one of --box or --region")
    if args.box is not None:
        dims = [int(v) for v in args.box.split(",")]
        if len(dims) != 3:
            raise UsageError("--box expects L,M,N")
        value = explore.count_box(*dims)
    else:
        region = _load_region(args.region)
        value = 0
        for _ in explore.enumerate(region):
            value += 1
            if value > args.limit:
                raise ResourceLimitError(
                    f"more than {args.limit} tilings; raise --limit to count them"
                )
    _emit({"count": str(value)} if args.format == "json" else str(value), args)
    return 0


def _cmd_enumerate(args) -> int:
    region = _load_region(_require(args.region, "--region", "enumerate"))
    produced = 0
    for t in explore.enumerate(region):
        if produced >= args.limit:
            break
        if args.format == "json":
            print(json.dumps(tl.tiling_to_json(t), sort_keys=True))
        else:
            print(tl.tiling_to_ascii(t))
            print()
        produced += 1
    return 0


def _cmd_twist(args) -> int:
    _require(args.tiling, "--tiling", "twist")
    t = _load_tiling(args.tiling, _load_region(args.region) if args.region else None)
    if args.pretwists:
        values = tw.pretwists(t, threads=args.threads)
        if args.format == "json":
            _emit({k: tw.quarter_to_json(v) for k, v in values.items()}, args)
        else:
            print(" ".join(f"{k}:{v}" for k, v in values.items()))
        distinct = set(values.values())
        if len(distinct) == 1 and next(iter(distinct)).denominator == 1:
            return 0
        return 1
    if args.axis:
        value = tw.pretwist(t, _parse_axis(args.axis), threads=args.threads)
        _emit({"pretwist": tw.quarter_to_json(value)} if args.format == "json" else str(value), args)
        return 0
    value = tw.twist(t, threads=args.threads)
    _emit({"twist": value} if args.format == "json" else str(value), args)
    return 0


def _cmd_components(args) -> int:
    region = _load_region(_require(args.region, "--region", "components"))
    try:
        report = explore.flip_components(region, limit=args.limit)
    except ResourceLimitError as exc:
        if exc.partial is not None:
            _emit(explore.report_to_json(exc.partial), args)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        _emit(explore.report_to_json(report), args)
    else:
        print(f"{report.tiling_count} tilings, {len(report.components)} components,"
              f" {report.trit_edges} trit edges")
        for c in report.components:
            print(f"  size {c.size}  twist {c.twist:+d}")
    return 0


def _cmd_construct(args) -> int:
    base = geo.planar_region_from_json(
        _read_json(_require(args.region, "--region", "construct"))
    )
    w = _parse_axis(args.axis) if args.axis else base.axis
    t, trace = construct.algorithm1_trace(base, w)
    if args.format == "json":
        _emit({"tiling": tl.tiling_to_json(t),
               "region": geo.region_to_json(t.region),
               "axis_pretwist": tw.quarter_to_json(trace.axis_pretwist)}, args)
    else:
        print(tl.tiling_to_ascii(t, w if w in geo.AXES else geo.neg(w)))
        print(f"axis pretwist: {trace.axis_pretwist}")
    return 0


def _cmd_validate(args) -> int:
    _require(args.tiling, "--tiling", "validate")
    region = _load_region(args.region) if args.region else None
    t = _load_tiling(args.tiling, region)
    cls = geo.classify(t.region)
    payload = {"ok": True, "dominoes": len(t.dominoes), "kind": cls.kind}
    if args.format == "json":
        _emit(payload, args)
    else:
        print(f"ok: {len(t.dominoes)} dominoes tile a {cls.kind}")
    return 0


def _cmd_gamma(args) -> int:
    if not args.tiling or len(args.tiling) > 2:
        raise UsageError("gamma needs one or two --tiling files")
    t0 = _load_tiling(args.tiling[0], _load_region(args.region) if args.region else None)
    if len(args.tiling) == 2:
        t1 = _load_tiling(args.tiling[1], t0.region)
    else:
        axis = _parse_axis(args.axis) if args.axis else None
        if axis is None:
            raise UsageError("gamma with one tiling needs --axis for the base tiling")
        t1 = tl.base_tiling(t0.region, axis)
    cs = curves.gamma(t0, t1)
    nontrivial = curves.nontrivial(cs)
    if args.format == "json":
        _emit({
            "curves": [curves.curve_to_json(c) for c in cs.curves],
            "nontrivial": len(nontrivial),
        }, args)
    else:
        print(f"{len(cs.curves)} curves, {len(nontrivial)} nontrivial")
        for c in cs.curves:
            tag = "trivial" if c.trivial else f"{len(c)} segments"
            print(f"  {tag}: starts at {c.vertices[0]} (doubled)")
    return 0


# --- HTTP session service ---------------------------------------------------


@dataclass
class SessionState:
    """One tiling under interactive editing, with exact undo."""

    initial: tl.Tiling
    tiling: tl.Tiling
    twist_value: int
    history: list = field(default_factory=list)  # (move, previous tiling)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @staticmethod
    def start(tiling: tl.Tiling) -> "SessionState":
        return SessionState(tiling, tiling, tw.twist(tiling))

    def revision(self) -> str:
        return self.tiling.digest()[:12]

    def move_id(self, m) -> str:
        x, y, z = m.anchor
        return f"{self.revision()}:{m.kind}:{x},{y},{z}:{m.variant}"

    def state_json(self) -> dict:
        return {
            "region": geo.region_to_json(self.tiling.region),
            "tiling": tl.tiling_to_json(self.tiling),
            "twist": self.twist_value,
            "history": [mv.move_to_json(m) for m, _ in self.history],
        }

    def moves_json(self) -> dict:
        flips, trits = [], []
        for m in mv.moves(self.tiling):
            entry = mv.move_to_json(m)
            entry["id"] = self.move_id(m)
            entry["cells"] = [list(c) for c in mv.move_cells(m)]
            (flips if m.kind == "flip" else trits).append(entry)
        return {"flips": flips, "trits": trits}

    def _check_delta(self, move, before: int) -> None:
        expected = before + (move.sign if move.kind == "trit" else 0)
        if self.twist_value != expected:
            raise InvariantViolationError(
                f"twist moved from {before} to {self.twist_value} on a {move.kind}"
            )

    def apply(self, move_id: str) -> bool:
        """Apply the identified move; False when the id is stale/unknown."""
        with self.lock:
            for m in mv.moves(self.tiling):
                if self.move_id(m) == move_id:
                    before = self.twist_value
                    previous = self.tiling
                    if m.kind == "flip":
                        self.tiling = mv.apply_flip(self.tiling, m)
                    else:
                        self.tiling = mv.apply_trit(self.tiling, m)
                    self.twist_value = tw.twist(self.tiling)
                    self._check_delta(m, before)
                    self.history.append((m, previous))
                    return True
            return False

    def undo(self) -> bool:
        with self.lock:
            if not self.history:
                return False
            _, previous = self.history.pop()
            self.tiling = previous
            self.twist_value = tw.twist(previous)
            return True

    def reset(self) -> None:
        with self.lock:
            self.tiling = self.initial
            self.twist_value = tw.twist(self.initial)
            self.history.clear()


def _session_handler(session: SessionState, static_dir: str | None):
    from http.server import SimpleHTTPRequestHandler

    class Handler(SimpleHTTPRequestHandler):
        def __init__(self, *a, **kw):
            super().__init__(*a, directory=static_dir or ".", **kw)

        def log_message(self, *_args):
            pass

        def _reply(self, status: int, payload: dict) -> None:
            body = json.dumps(payload, sort_keys=True).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()

        def do_GET(self):
            if self.path == "/api/v1/state":
                with session.lock:
                    self._reply(200, session.state_json())
            elif self.path == "/api/v1/moves":
                with session.lock:
                    self._reply(200, session.moves_json())
            elif self.path.startswith("/api/v1"):
                self._reply(404, {"error": f"no such endpoint: {self.path}"})
            elif static_dir is not None:
                super().do_GET()
            else:
                self._reply(404, {"error": "no static bundle configured"})

        def _json_body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if length == 0:
                return {}
            return json.loads(self.rfile.read(length).decode())

        def _snapshot(self) -> dict:
            return {"state": session.state_json(), "moves": session.moves_json()}

        def do_POST(self):
            try:
                body = self._json_body()
            except (ValueError, UnicodeDecodeError):
                self._reply(400, {"error": "body must be JSON"})
                return
            if self.path == "/api/v1/move":
                move_id = body.get("id")
                if not isinstance(move_id, str):
                    self._reply(400, {"error": "need a move id"})
                    return
                if session.apply(move_id):
                    with session.lock:
                        self._reply(200, self._snapshot())
                else:
                    self._reply(409, {"error": f"stale or unknown move id: {move_id}"})
            elif self.path == "/api/v1/undo":
                if session.undo():
                    with session.lock:
                        self._reply(200, self._snapshot())
                else:
                    self._reply(409, {"error": "nothing to undo"})
            elif self.path == "/api/v1/reset":
                session.reset()
                with session.lock:
                    self._reply(200, self._snapshot())
            else:
                self._reply(404, {"error": f"no such endpoint: {self.path}"})

    return Handler


def make_server(region: geo.Region, tiling: tl.Tiling, port: int,
                static_dir: str | None = None) -> ThreadingHTTPServer:
    """A ready-to-run HTTP server bound to 127.0.0.1:port."""
    if tiling.region != region:
        raise ValueError("initial tiling does not cover the region")
    session = SessionState.start(tiling)
    return ThreadingHTTPServer(
        ("127.0.0.1", port), _session_handler(session, static_dir)
    )


def _cmd_serve(args) -> int:
    region = _load_region(_require(args.region, "--region", "serve"))
    if args.tiling:
        t = _load_tiling(args.tiling, region)
    else:
        ok, witness = construct.is_tileable(region)
        if not ok:
            raise DominoTwistError("region is untileable; no initial tiling")
        t = witness
    server = make_server(region, t, args.port, args.static)
    host, port = server.server_address
    print(f"session API on http://{host}:{port}/api/v1", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dominotwist",
        description="Twist of domino tilings: count, explore, construct, serve.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, region=False, tiling=False, axis=False, limit=None, threads=False):
        if region:
            sp.add_argument("--region", "-r", metavar="FILE", help="region JSON file")
        if tiling:
            sp.add_argument("--tiling", "-t", metavar="FILE", help="tiling JSON file")
        if axis:
            sp.add_argument("--axis", metavar="DIR", help="axis name: x, y, z or -x, -y, -z")
        if limit is not None:
            sp.add_argument("--limit", type=int, default=limit, metavar="N",
                            help=f"enumeration budget (default {limit})")
        if threads:
            sp.add_argument("--threads", type=int, default=1, metavar="N",
                            help="worker threads for pair sums")
        sp.add_argument("--format", choices=("json", "text"), default="text")

    sp = sub.add_parser("count", help="count tilings of a box or a region file")
    sp.add_argument("--box", metavar="L,M,N", help="box dimensions")
    common(sp, region=True, limit=explore.DEFAULT_BUDGET)
    sp.set_defaults(run=_cmd_count)

    sp = sub.add_parser("enumerate", help="stream every tiling of a region")
    common(sp, region=True, limit=explore.DEFAULT_BUDGET)
    sp.set_defaults(run=_cmd_enumerate)
    sp = sub.add_parser("twist", help="twist or pretwists of a tiling")
    sp.add_argument("--pretwists", action="store_true",
                    help="print all three axis pretwists")
    common(sp, region=True, tiling=True, axis=True, threads=True)
    sp.set_defaults(run=_cmd_twist)

    sp = sub.add_parser("components", help="flip components and twist histogram")
    common(sp, region=True, limit=explore.DEFAULT_BUDGET)
    sp.set_defaults(run=_cmd_components)

    sp = sub.add_parser("construct", help="build a tiling from a planar base")
    common(sp, region=True, axis=True)
    sp.set_defaults(run=_cmd_construct)

    sp = sub.add_parser("validate", help="check that a tiling file tiles its region")
    common(sp, region=True, tiling=True)
    sp.set_defaults(run=_cmd_validate)

    sp = sub.add_parser("gamma", help="superposition curves of two tilings")
    sp.add_argument("--tiling", "-t", metavar="FILE", action="append",
                    help="tiling JSON file (repeat for a pair)")
    sp.add_argument("--region", "-r", metavar="FILE", help="region JSON file")
    sp.add_argument("--axis", metavar="DIR", help="base tiling axis when one tiling given")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(run=_cmd_gamma)

    sp = sub.add_parser("serve", help="run the interactive session API")
    sp.add_argument("--port", type=int, default=8000)
    sp.add_argument("--static", metavar="DIR", help="directory of UI files to serve")
    common(sp, region=True, tiling=True)
    sp.set_defaults(run=_cmd_serve)
    return p


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DominoTwistError, InvariantViolationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
