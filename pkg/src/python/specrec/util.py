import logging
import logging.handlers
import queue
import threading

def init_logging(level=logging.INFO,
        format="%(name)s [%(process)d] %(message)s", debug=False,
        syslog_facility=None):
    """Configure the root logger.

    Records go to stderr; stdout carries results only.  A syslog handler is
    added when a facility is configured."""

    log = logging.getLogger()
    log.setLevel(level)
    for handler in list(log.handlers):
        log.removeHandler(handler)

    console = logging.StreamHandler()
    console.setFormatter(logging.Formatter(format))
    log.addHandler(console)

    if syslog_facility is not None:
        syslog = logging.handlers.SysLogHandler("/dev/log", syslog_facility)
        syslog.setFormatter(logging.Formatter(format))
        log.addHandler(syslog)

    if debug:
        log.setLevel(logging.DEBUG)

def get_logger(name):
    return logging.getLogger(name)

class WorkerThread(threading.Thread):
    """Drain a task queue, storing each result under its task index."""

    def __init__(self, taskq, results, errors):
        threading.Thread.__init__(self)
        self.daemon = True

        self.taskq = taskq
        self.results = results
        self.errors = errors

    def run(self):
        while True:
            try:
                task = self.taskq.get(block=False)
            except queue.Empty:
                return

            (index, func, args) = task
            try:
                self.results[index] = func(*args)
            except Exception as e:
                self.errors.append((index, e))
            finally:
                self.taskq.task_done()

def run_tasks(func, arglists, jobs=1):
    """Apply func to each argument tuple, returning results in input order.

    With jobs > 1 the calls are spread over that many WorkerThreads.  The
    first failing task (by input position) has its exception re-raised."""
    arglists = list(arglists)
    if jobs <= 1 or len(arglists) <= 1:
        return [func(*args) for args in arglists]

    taskq = queue.Queue()
    for (index, args) in enumerate(arglists):
        taskq.put((index, func, args))

    results = {}
    errors = []
    workers = [WorkerThread(taskq, results, errors)
            for _ in range(min(jobs, len(arglists)))]
    for worker in workers:
        worker.start()
    for worker in workers:
        worker.join()

    if errors:
        errors.sort(key=lambda x: x[0])
        raise errors[0][1]

    return [results[i] for i in range(len(arglists))]
