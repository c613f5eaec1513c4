import hashlib
import json
import logging
import random


def setup_logging(level: int = logging.INFO):
    """
    Set logging level
    """
    logging.basicConfig(level=level, format="%(message)s")


def derive_seed(seed: int, *labels) -> int:
    """
    Derive a deterministic sub-seed from a base seed and any number of labels,
    e.g. the name of a sampling loop and the sample index.
    """
    key = ":".join(str(part) for part in (seed, *labels))
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def seeded_random(seed: int, *labels) -> random.Random:
    return random.Random(derive_seed(seed, *labels))


def dump_json(contents) -> str:
    """
    Serialize with canonical key ordering so reports are byte-stable.
    """
    return json.dumps(contents, indent=2, ensure_ascii=False, sort_keys=True)

