"""Shared store for the one-line-per-criterion acceptance summary."""

from contextlib import contextmanager
import time

LINES: list[str] = []


@contextmanager
def criterion(number: int, title: str):
    notes: list[str] = []
    start = time.perf_counter()
    try:
        yield notes
    except BaseException as exc:
        detail = "; ".join(notes + [str(exc).splitlines()[0] if str(exc) else type(exc).__name__])
        LINES.append(f"FAIL [{number}] {title} ({time.perf_counter() - start:.1f}s): {detail}")
        raise
    detail = "; ".join(notes)
    LINES.append(f"PASS [{number}] {title} ({time.perf_counter() - start:.1f}s)"
                 + (f": {detail}" if detail else ""))
