"""Laplacian spectra, conjugate degree majorization, and cut certificates.

The package checks, for graphs and for graphs with deleted vertex sets,
whether the Laplacian spectrum is majorized by the conjugate of the
degree sequence; builds and verifies cut-decomposition certificates;
and sweeps exhaustive graph spaces deterministically.
"""

__version__ = "0.1.0"

from gmlap.graphs import Graph  # noqa: E402
from gmlap.partitions import MajorizationVerdict, conjugate, majorizes  # noqa: E402
from gmlap.spectra import Spectrum, eigenvalues_sym, laplacian_spectrum  # noqa: E402

__all__ = [
    "Graph",
    "MajorizationVerdict",
    "Spectrum",
    "__version__",
    "conjugate",
    "eigenvalues_sym",
    "laplacian_spectrum",
    "majorizes",
]
