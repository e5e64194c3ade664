"""Bundled hostility lexicon.

Plain text asset: one lowercase token per line, '#' comments allowed.
The SHA-256 of the raw file keys the built-in scorer id, so every stored
score is traceable to the exact word list that produced it.
"""

import hashlib
from functools import lru_cache
from pathlib import Path

_DEFAULT_PATH = Path(__file__).parent / "data" / "hostility_lexicon.txt"


def _read(path: Path) -> tuple[frozenset[str], str]:
    raw = path.read_bytes()
    digest = hashlib.sha256(raw).hexdigest()[:8]
    tokens = set()
    for line in raw.decode("utf-8").splitlines():
        token = line.split("#", 1)[0].strip().lower()
        if token:
            tokens.add(token)
    return frozenset(tokens), digest


@lru_cache(maxsize=4)
def load_lexicon(path: str | None = None) -> tuple[frozenset[str], str]:
    """(token set, 8-hex digest) for the lexicon at ``path`` or the bundled one."""
    return _read(Path(path) if path else _DEFAULT_PATH)
