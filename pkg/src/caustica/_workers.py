import os


def worker_count(requested: int | None = None) -> int:
    """Thread count: explicit request, else CAUSTICA_THREADS (0 = all cores), else 1."""
    if requested is None:
        raw = os.environ.get("CAUSTICA_THREADS", "1").strip() or "1"
        try:
            requested = int(raw)
        except ValueError:
            raise ValueError(f"CAUSTICA_THREADS must be an integer, got {raw!r}") from None
    if requested < 0:
        raise ValueError("worker count must be >= 0")
    if requested == 0:
        return os.cpu_count() or 1
    return requested
