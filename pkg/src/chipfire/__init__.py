"""Exact chip-firing dynamics for M-matrices."""

from .critical import (CriticalCertificate, canonical_critical, dual, enumerate_criticals,
                       is_critical, lift_above_diagonal)
from .dynamics import Engine, FiringRecord, d_vector, eligible, fire, new_engine, stabilize
from .energy import EnergySpec, EnergyValue, Phi, energy, energy_difference, minimize_energy
from .errors import (CapExceeded, ChipFireError, DimensionTooLarge, FormatError, IndexOutOfRange,
                     NegativeInput, NoGlobalSink, NotMMatrix, SearchTooLarge, Singular)
from .graphio import (DirectedMultigraph, has_global_sink, is_g_parking, laplacian,
                      reduced_laplacian)
from .matcore import (IntegerMatrix, MVerdict, RationalMatrix, determinant, equivalence_witness,
                      invert_exact, is_z_matrix, m_verdict)
from .stability import (StabilityReport, canonical_z_superstable, enumerate_z_superstables,
                        is_chi_superstable, is_stable, is_z_superstable, stability_report)

__version__ = "0.1.0"

__all__ = [
    "canonical_critical", "canonical_z_superstable", "CapExceeded", "ChipFireError",
    "CriticalCertificate", "d_vector", "determinant", "DimensionTooLarge", "DirectedMultigraph",
    "dual", "eligible", "energy", "energy_difference", "EnergySpec", "EnergyValue", "Engine",
    "enumerate_criticals", "enumerate_z_superstables", "equivalence_witness", "fire",
    "FiringRecord", "FormatError", "has_global_sink", "IndexOutOfRange", "IntegerMatrix",
    "invert_exact", "is_chi_superstable", "is_critical", "is_g_parking", "is_stable",
    "is_z_matrix", "is_z_superstable", "laplacian", "lift_above_diagonal", "m_verdict",
    "minimize_energy", "MVerdict", "NegativeInput", "new_engine", "NoGlobalSink", "NotMMatrix",
    "Phi", "RationalMatrix", "reduced_laplacian", "SearchTooLarge", "Singular", "stability_report",
    "StabilityReport", "stabilize",
]
