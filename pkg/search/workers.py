import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional

from utils.env_vars import get_threads_from_env


def resolve_thread_count(threads: Optional[int] = None) -> int:
    if threads is None:
        threads = get_threads_from_env()
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, int(threads))


def map_workers(function: Callable, tasks: Iterable, threads: Optional[int] = None) -> List:
    """Runs function over tasks on a thread pool; results come back in task order."""
    tasks = list(tasks)
    worker_count = min(resolve_thread_count(threads), max(1, len(tasks)))
    if worker_count == 1:
        return [function(task) for task in tasks]

    with ThreadPoolExecutor(max_workers=worker_count) as executor:
        return list(executor.map(function, tasks))


def best_of(outcomes: Iterable, key: Callable = lambda outcome: outcome[0]):
    """Lowest key wins, earliest outcome on ties."""
    best = None
    for outcome in outcomes:
        if outcome is None:
            continue
        if best is None or key(outcome) < key(best):
            best = outcome
    return best
