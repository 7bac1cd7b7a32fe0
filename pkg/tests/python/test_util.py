import logging
from unittest import mock

import pytest

from specrec.util import init_logging, run_tasks

def square(x):
    return x * x

def test_run_tasks_serial():
    assert run_tasks(square, [(j,) for j in range(5)]) == [0, 1, 4, 9, 16]
    assert run_tasks(square, []) == []

def test_run_tasks_keeps_order_with_threads():
    args = [(j,) for j in range(40)]
    assert run_tasks(square, args, jobs=4) == [j * j for j in range(40)]

def test_run_tasks_reraises_first_failure():
    def fail_on_odd(x):
        if x % 2:
            raise ValueError("odd %d" % x)
        return x

    with pytest.raises(ValueError) as excinfo:
        run_tasks(fail_on_odd, [(j,) for j in range(8)], jobs=3)
    assert str(excinfo.value) == "odd 1"

def test_run_tasks_calls_each_once():
    func = mock.Mock(side_effect=lambda x: x + 1)
    assert run_tasks(func, [(1,), (2,), (3,)], jobs=2) == [2, 3, 4]
    assert func.call_count == 3
    func.assert_any_call(2)

def test_init_logging_replaces_handlers():
    root = logging.getLogger()
    saved = list(root.handlers)
    try:
        init_logging(logging.WARNING)
        init_logging(logging.WARNING)
        assert len(root.handlers) == 1
        assert root.level == logging.WARNING
        init_logging(logging.WARNING, debug=True)
        assert root.level == logging.DEBUG
    finally:
        for handler in list(root.handlers):
            root.removeHandler(handler)
        for handler in saved:
            root.addHandler(handler)

def test_init_logging_syslog():
    with mock.patch('logging.handlers.SysLogHandler') as handler_class:
        handler_class.return_value = mock.Mock(level=logging.NOTSET)
        root = logging.getLogger()
        saved = list(root.handlers)
        try:
            init_logging(syslog_facility=17)
            handler_class.assert_called_once_with("/dev/log", 17)
        finally:
            for handler in list(root.handlers):
                root.removeHandler(handler)
            for handler in saved:
                root.addHandler(handler)
