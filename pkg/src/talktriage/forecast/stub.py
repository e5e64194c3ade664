"""Stub scoring service implementing the external wire protocol.

Used by the test suite and handy for UI development. Behavior knobs:

* fixed score for every request (default), or
* an injected callable mapping the request payload to a score, or
* artificial response delay / deliberately broken responses.
"""

import argparse
import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


class StubScorerServer:
    def __init__(
        self,
        score: float = 0.5,
        delay: float = 0.0,
        mode: str = "ok",  # ok | out-of-range | malformed
        score_fn=None,
        host: str = "127.0.0.1",
        port: int = 0,
    ):
        self.score = score
        self.delay = delay
        self.mode = mode
        self.score_fn = score_fn
        self.requests_seen: list[dict] = []
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                body = json.loads(self.rfile.read(length) or b"{}")
                stub.requests_seen.append(body)
                if stub.delay:
                    threading.Event().wait(stub.delay)
                if stub.mode == "malformed":
                    payload = b"this is not json"
                elif stub.mode == "out-of-range":
                    payload = json.dumps({"score": 1.5}).encode()
                else:
                    value = stub.score_fn(body) if stub.score_fn else stub.score
                    payload = json.dumps({"score": value}).encode()
                try:
                    self.send_response(200)
                    self.send_header("Content-Type", "application/json")
                    self.send_header("Content-Length", str(len(payload)))
                    self.end_headers()
                    self.wfile.write(payload)
                except BrokenPipeError:
                    pass  # caller gave up (timeout tests do this on purpose)

            def log_message(self, *args):
                pass

        self._server = ThreadingHTTPServer((host, port), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def endpoint(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}/score"

    def start(self) -> "StubScorerServer":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self) -> "StubScorerServer":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Run the stub scoring service")
    parser.add_argument("--port", type=int, default=9900)
    parser.add_argument("--score", type=float, default=0.5)
    parser.add_argument("--delay", type=float, default=0.0)
    args = parser.parse_args(argv)
    server = StubScorerServer(score=args.score, delay=args.delay, port=args.port)
    print(f"stub scorer listening on {server.endpoint}")
    server.start()
    try:
        threading.Event().wait()
    except KeyboardInterrupt:
        server.stop()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
