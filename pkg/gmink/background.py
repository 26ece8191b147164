import concurrent.futures
import functools
import multiprocessing
import typing

_pool = concurrent.futures.ThreadPoolExecutor(
    max(2, multiprocessing.cpu_count())
)


class BackgroundTask:
    def __init__(
        self, func: typing.Callable, *func_args, **func_kwargs,
    ):
        """
        Run a synchronous job in the shared thread pool.

        Works well for numpy/LAPACK-heavy jobs (they release the GIL);
        the result is available from the returned future or `result()`.

        >>> with BackgroundTask(homotopy_solve, f, Branch.SMALL) as task:
        >>>     task()
        >>> report = task.result()

        :param func:
        :param func_args:
        """
        self._func = functools.partial(func, *func_args, **func_kwargs)
        self._future: typing.Optional[concurrent.futures.Future] = None

    def __call__(self) -> concurrent.futures.Future:
        if self._future is None:
            self._future = _pool.submit(self._func)
        return self._future

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._future is not None:
            concurrent.futures.wait([self._future])

    def result(self, timeout: float = None):
        return self().result(timeout=timeout)


def run_in_background(
    jobs: typing.Sequence[typing.Callable[[], typing.Any]], workers: int = 1
) -> typing.List[typing.Any]:
    """
    Run independent jobs, returning results in submission order.

    workers <= 1 runs them inline; either way the results are identical.
    :param jobs:
    :param workers:
    :return:
    """
    if workers <= 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    tasks = [BackgroundTask(job) for job in jobs]
    for task in tasks:
        task()
    return [task.result() for task in tasks]
