"""Exact information cohomology with Fontené-Ward coefficients."""

from .errors import InfoCohError
from .fontene_ward import AdmissibleSequence, parse_sequence
from .structure import InformationStructure, load_structure, validate

__version__ = "0.1.0"
