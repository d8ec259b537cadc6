from ._version import __version__  # noqa: F401

import packaging.version

import torch

# torch version checks
torch_version = packaging.version.parse(torch.__version__)

# complex128 tensordot and torch.linalg are needed throughout
assert torch_version >= packaging.version.parse(
    "1.11"
), f"qvqite supports PyTorch 1.11 or later, but {torch_version} found"
