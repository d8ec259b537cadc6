from setuptools import setup, find_packages
from pathlib import Path

# see https://packaging.python.org/guides/single-sourcing-package-version/
version_dict = {}
with open(Path(__file__).parents[0] / "qvqite/_version.py") as fp:
    exec(fp.read(), version_dict)
version = version_dict["__version__"]
del version_dict

setup(
    name="qvqite",
    version=version,
    description="Charmonium spectra and radiative transitions from a two-qubit variational imaginary-time evolution, on a noise-aware state-vector simulator.",
    python_requires=">=3.9",
    packages=find_packages(include=["qvqite", "qvqite.*"]),
    entry_points={
        # make the scripts available as command line scripts
        "console_scripts": [
            "qvqite-model = qvqite.scripts.model:main",
            "qvqite-pauli = qvqite.scripts.pauli:main",
            "qvqite-vqite = qvqite.scripts.vqite:main",
            "qvqite-amp = qvqite.scripts.amp:main",
            "qvqite-zne = qvqite.scripts.zne:main",
        ]
    },
    install_requires=[
        "numpy>=1.25",  # Generator.spawn
        "scipy>=1.6",
        "torch>=1.11",  # linalg.pinv(rtol=...), linalg.cholesky_ex
        "tqdm",
        "pyyaml",
        "packaging",
    ],
    extras_require={"test": ["pytest"]},
    zip_safe=True,
)
