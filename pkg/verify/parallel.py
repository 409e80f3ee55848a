#!/usr/bin/env python3
#
#  parallel.py
#
"""Thread fan-out for per-sample and per-row work."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor


log = logging.getLogger(__name__)

THREADS_ENV = 'GAUSSRIESZ_THREADS'


def thread_count():
    """Worker threads: ``$GAUSSRIESZ_THREADS`` if set, else the CPU count."""
    value = os.environ.get(THREADS_ENV)

    if value:
        try:
            count = int(value)
        except ValueError:
            log.warning("Ignoring non-integer %s=%r.", THREADS_ENV, value)
        else:
            if count > 0:
                return count

            log.warning("Ignoring non-positive %s=%r.", THREADS_ENV, value)

    return os.cpu_count() or 1


def parallel_map(func, items, threads=None):
    """``list(map(func, items))`` on a thread pool; result order is kept."""
    threads = threads or thread_count()
    items = list(items)

    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
