"""
Constantes físicas e conversões de unidade.

Unidades fixas em todo o pacote: rad/fs para frequência angular, fs para tempo,
fs² para β, nm para comprimento de onda e mm para espessura de vidro.
"""
import math

import numpy as np
from scipy.constants import c as _C_SI

# c em nm/fs (299.792458)
SPEED_OF_LIGHT_NM_PER_FS = _C_SI * 1e9 / 1e15

# FWHM = FWHM_PER_SIGMA * rms para uma gaussiana
FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))

NM_PER_MM = 1e6
NM_PER_UM = 1e3


def angular_frequency(wavelength_nm):
    """Converte comprimento de onda (nm) em frequência angular (rad/fs)."""
    return 2.0 * np.pi * SPEED_OF_LIGHT_NM_PER_FS / np.asarray(wavelength_nm, dtype=float)


def wavelength(angular_frequency_rad_fs):
    """Converte frequência angular (rad/fs) em comprimento de onda (nm)."""
    return 2.0 * np.pi * SPEED_OF_LIGHT_NM_PER_FS / np.asarray(angular_frequency_rad_fs, dtype=float)


def fwhm_from_variance(variance_fs2: float) -> float:
    """FWHM (fs) de uma gaussiana com a variância dada."""
    return FWHM_PER_SIGMA * math.sqrt(variance_fs2)


