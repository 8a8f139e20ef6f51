"""Exact verification of VN-cores and the Tannaka coend construction."""

from .exactla import LinMap, QuotientPresentation, WellDefinednessError
from .vncore import AxiomError, CheckReport, NotAGroupError, VNCoreData
from .setcore import SizeError
from .tannaka import DimensionError, ValidationError
from .kernels import backend as kernel_backend

__version__ = "0.1.0"
