import pytest

from qvqite.vqite import ConvergenceMonitor


def test_needs_a_full_window():

    monitor = ConvergenceMonitor(tol=0.1, window=3)

    for E in (1.0, 1.0, 1.0):
        stop, stop_args, debug_args = monitor(E)
        assert not stop, "stopped before the window filled"
        assert debug_args is None

    stop, stop_args, debug_args = monitor(1.0)
    assert stop, "flat history should stop"
    assert stop_args.startswith("Converged:")


def test_plateau():

    monitor = ConvergenceMonitor(tol=0.1, window=2)

    for E in (2.9, 2.7, 2.5, 2.3):
        stop, stop_args, debug_args = monitor(E)
    assert not stop, "wrong window setup"

    stop, stop_args, debug_args = monitor(2.45)
    assert stop, "wrong window setup"


def test_state_dict():

    monitor = ConvergenceMonitor(tol=0.1, window=2)
    monitor(3.0)
    monitor(2.0)

    restored = ConvergenceMonitor(tol=0.1, window=2)
    restored.load_state_dict(monitor.state_dict())
    assert restored.history == [3.0, 2.0]

    stop, _, _ = restored(1.95)
    assert not stop, "wrong restored history"


def test_invalid():
    with pytest.raises(ValueError):
        ConvergenceMonitor(tol=0.1, window=0)
    with pytest.raises(ValueError):
        ConvergenceMonitor(tol=0.0)
