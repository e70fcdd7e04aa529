"""Canonical JSON: sorted keys and fixed separators so equal data gives equal bytes."""

from __future__ import annotations

import json
from typing import Any


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def dumps_pretty(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True)


def loads(text: str) -> Any:
    return json.loads(text)
