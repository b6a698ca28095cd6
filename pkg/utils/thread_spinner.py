import sys
import time
from threading import Thread

import alive_progress


class ThreadSpinner(object):
    """alive-progress spinner on stderr while a search runs; a no-op when disabled."""

    def __init__(self, title: str, enabled: bool = True) -> None:
        self.title = title
        self.enabled = enabled
        self.stop_spinner = False
        self.thread = None

    def _run_spinner(self) -> None:
        with alive_progress.alive_bar(title=self.title, bar=None, spinner='twirl', monitor=False,
                                      file=sys.stderr) as spinner:
            while not self.stop_spinner:
                time.sleep(0.2)
                spinner()

    def start(self) -> None:
        if not self.enabled:
            return
        self.thread = Thread(target=self._run_spinner, daemon=True)
        self.thread.start()

    def stop(self) -> None:
        if self.thread is None:
            return
        self.stop_spinner = True
        self.thread.join()
        self.thread = None
        self.stop_spinner = False

    def __enter__(self) -> 'ThreadSpinner':
        self.start()
        return self

    def __exit__(self, type, value, traceback) -> None:
        self.stop()
