import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tmeshkit.verify import random_admissible_mesh  # noqa: E402

CORPUS_SEED = 20260810


def corpus_subseed(k: int) -> int:
    return (CORPUS_SEED * 1_000_003 + k) % (1 << 62)


@pytest.fixture(scope="session")
def corpus200():
    """The shared fuzz corpus: 200 seeded admissible meshes, d in {2, 3},
    degrees <= 3 of mixed parity, up to 40 bisections; every fourth mesh
    refines in a single direction to populate the strongly-suitable class."""
    t0 = time.monotonic()
    meshes = []
    for k in range(200):
        sub = corpus_subseed(k)
        mode = "single" if k % 4 == 0 else "mixed"
        meshes.append((sub, random_admissible_mesh(sub, max_steps=40,
                                                   direction_mode=mode)))
    elapsed = time.monotonic() - t0
    return {"meshes": meshes, "build_seconds": elapsed}
