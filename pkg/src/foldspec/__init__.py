"""Fourier power spectra at an integer period and its fractional periods,
computed by folding the sequence modulo the period."""

__version__ = "0.1.0"

from .spectra import (
    CongruenceSequence,
    ConsistencyError,
    CosineTable,
    PeriodSpectrum,
    ShiftSums,
    SpectrumEntry,
    cosine_table,
    expand_symmetric,
    fold,
    fps_fractional,
    fps_integer,
    pad_to_multiple,
    scan,
    shift_sums,
    spectrum_for_modulus,
)

__all__ = [
    "CongruenceSequence",
    "ConsistencyError",
    "CosineTable",
    "PeriodSpectrum",
    "ShiftSums",
    "SpectrumEntry",
    "cosine_table",
    "expand_symmetric",
    "fold",
    "fps_fractional",
    "fps_integer",
    "pad_to_multiple",
    "scan",
    "shift_sums",
    "spectrum_for_modulus",
]
