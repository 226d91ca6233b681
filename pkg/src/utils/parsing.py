"""
Tokenizer for the key=value sweep configuration format.
"""
import re
from typing import Iterator, Tuple

WS_RX = re.compile(r"\s+")
KEY_RX = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def normalize_ws(text: str) -> str:
    return WS_RX.sub(" ", text).strip()


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def iter_key_values(text: str) -> Iterator[Tuple[int, str, str]]:
    """
    Yield (line_number, key, value) for every non-blank line.

    Raises ValueError (with the 1-based line number in args[1]) for a line that
    has no '=' or an invalid key.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = normalize_ws(strip_comment(raw))
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if not KEY_RX.match(key):
            raise ValueError(f"invalid key {key!r}", lineno)
        yield lineno, key, value.strip()
