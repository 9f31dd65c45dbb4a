import multiprocessing
from multiprocessing.pool import ThreadPool


class MultiThread:
    """ Bounded pool for fanning out worker training within a round.

    `map` returns results in input order, so the joined results never
    depend on scheduling. numpy releases the GIL inside its kernels,
    which is why threads are enough here.

    Example:
        with MultiThread(4) as pool:
            updates = pool.map(train_one, worker_ids)
    """

    def __init__(self, n_threads="auto"):
        n_cpu = multiprocessing.cpu_count()
        if n_threads in ("auto", None, 0):
            n_threads = n_cpu
        n_threads = int(n_threads)
        if n_threads < 1:
            raise ValueError("Invalid value of `n_threads`: %d. It should be a positive integer." % n_threads)
        self.n = n_threads
        self.pool = None

    def __enter__(self):
        if self.n > 1:
            self.pool = ThreadPool(self.n)
        return self

    def __exit__(self, *args, **kwargs):
        if self.pool is not None:
            self.pool.close()
            self.pool.join()
            self.pool = None

    def map(self, func, iterable):
        if self.pool is None:
            return list(map(func, iterable))
        return self.pool.map(func, list(iterable))
