"""Bundled benchmark graphs.

``karate.gml``: Zachary's karate club (34 members, 78 friendship ties),
written from ``networkx.karate_club_graph()`` (networkx 3.4.2) with the
interaction weights dropped and node ids shifted to 1..34; each node keeps
its ``club`` faction.

The American college football network (Girvan & Newman, 115 teams, 613
games, 12 conferences) is not redistributed here. Place Newman's
``football.gml`` in this directory, or point ``CREDAL_FOOTBALL_GML`` at it.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent

CHECKSUMS = {
    "karate.gml": "61ae55ad5849ee4ae4ccfe883a7bd9164ceaed5616116df9fd999bb66db71f4c",
}


def sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def karate_path() -> Path:
    return DATA_DIR / "karate.gml"


def football_path() -> Path | None:
    env = os.environ.get("CREDAL_FOOTBALL_GML")
    for cand in ([Path(env)] if env else []) + [DATA_DIR / "football.gml"]:
        if cand.is_file():
            return cand
    return None
