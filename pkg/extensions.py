"""
Flask Extensions
Initialize all Flask extensions here
"""
from concurrent.futures import ThreadPoolExecutor


class WorkerPool:
    """Maps work items serially or over a thread pool, always in submission order."""

    def __init__(self, app=None):
        self.default_threads = 1
        if app is not None:
            self.init_app(app)

    def init_app(self, app):
        self.default_threads = max(1, int(app.config.get('PLANAR_THREADS', 1)))
        app.extensions['worker_pool'] = self

    def map(self, fn, items, threads=None):
        items = list(items)
        threads = self.default_threads if threads is None else max(1, int(threads))
        if threads == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=threads) as executor:
            return list(executor.map(fn, items))


# Initialize extensions
pool = WorkerPool()
