import time

from gmink import BackgroundTask
from gmink.background import run_in_background

sync_task_passed = False


def synchronous_task(number: float):
    global sync_task_passed
    time.sleep(number)
    sync_task_passed = True
    return f"I slept {number} seconds..."


def some_task_with_kwargs(number: int, *, message: str):
    return f"Number: {number}. Message: {message}"


class TestBackground:
    def test_background_task(self):
        with BackgroundTask(synchronous_task, 0.1) as task:
            task()
        assert sync_task_passed
        assert task.result() == "I slept 0.1 seconds..."

        task = BackgroundTask(some_task_with_kwargs, 1, message="Hello!")
        assert task.result() == "Number: 1. Message: Hello!"

    def test_results_keep_submission_order(self):
        jobs = [
            lambda i=i: (time.sleep(0.01 * (5 - i)), i)[1] for i in range(5)
        ]
        assert run_in_background(jobs, workers=1) == list(range(5))
        assert run_in_background(jobs, workers=4) == list(range(5))
