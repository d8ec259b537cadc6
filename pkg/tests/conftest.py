import os

import pytest
import torch

from qvqite.pauliops import decompose
from qvqite.quarkmodel import ModelParams, literal_hamiltonian
from qvqite.sim import Executor, RunConfig
from qvqite.utils._global_options import _set_global_options

if "QVQITE_NUM_TASKS" not in os.environ:
    # Test parallelization, but don't waste time spawning tons of workers if lots of cores available
    cores = len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else 1
    os.environ["QVQITE_NUM_TASKS"] = str(min(2, cores))


@pytest.fixture(scope="session", autouse=True)
def default_dtype():
    """All numerics run in float64; restore whatever was set before."""
    old_dtype = torch.get_default_dtype()
    _set_global_options({"default_dtype": "float64"})
    yield torch.float64
    torch.set_default_dtype(old_dtype)


@pytest.fixture(scope="session")
def params():
    return ModelParams()


@pytest.fixture(scope="session", params=["1S0", "3S1", "1P1"])
def channel(request):
    return request.param


@pytest.fixture(scope="session")
def H_1S0():
    return decompose(literal_hamiltonian("1S0"))


@pytest.fixture(scope="session")
def H_3S1():
    return decompose(literal_hamiltonian("3S1"))


@pytest.fixture()
def exact_executor():
    return Executor()


@pytest.fixture()
def sampled_config():
    return RunConfig(mode="sampled", shots=4000, seed=123)


@pytest.fixture()
def sampled_executor(sampled_config):
    return Executor(sampled_config)
