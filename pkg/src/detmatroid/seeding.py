"""Deterministic derivation of per-consumer random streams.

One 64-bit seed reproduces an entire run.  Each randomized consumer derives
its own stream by hashing the seed together with a textual label, so adding
or reordering consumers never perturbs the streams of the others.
"""

from __future__ import annotations

import hashlib


def derive_seed(seed: int, label: str) -> int:
    data = ("%d:%s" % (seed, label)).encode()
    return int.from_bytes(hashlib.sha256(data).digest()[:8], "big")
