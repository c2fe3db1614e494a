import os

IS_DEBUG = False


def _read_num_threads():
    raw = os.environ.get("CROOKED_NUM_THREADS")
    if not raw:
        return max(1, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


NUM_THREADS = _read_num_threads()
