"""Rectangular microstrip patch resonance (cavity model), forward and inverse."""

from dataclasses import dataclass

import numpy as np

from .em import SPEED_OF_LIGHT
from .errors import DomainError, InvalidModeError


@dataclass(frozen=True)
class Substrate:
    epsilon_r: float
    thickness: float  # metres
    tan_delta: float = 0.0
    mu_r: float = 1.0

    def __post_init__(self):
        if not self.epsilon_r >= 1.0:
            raise DomainError(f"epsilon_r must be >= 1, got {self.epsilon_r}")
        if not self.thickness > 0:
            raise DomainError(f"thickness must be positive, got {self.thickness}")
        if not 0.0 <= self.tan_delta <= 0.1:
            raise DomainError(f"tan_delta must be in [0, 0.1], got {self.tan_delta}")
        if not self.mu_r > 0:
            raise DomainError(f"mu_r must be positive, got {self.mu_r}")


# Rogers RT5880 laminate, 31 mil.
RT5880 = Substrate(epsilon_r=2.2, thickness=0.787e-3, tan_delta=0.0009)


@dataclass(frozen=True)
class ModeIndex:
    m: int = 1
    n: int = 0

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise InvalidModeError(f"mode indices must be non-negative: {self}")
        if self.m == 0 and self.n == 0:
            raise InvalidModeError("TM00 is not a resonant mode")


DOMINANT_MODE = ModeIndex(1, 0)


@dataclass(frozen=True)
class PatchGeometry:
    length: float  # metres, resonant dimension for TM10
    width: float  # metres
    substrate: Substrate

    def __post_init__(self):
        if not (self.length > 0 and self.width > 0):
            raise DomainError("patch length and width must be positive")


def resonant_frequency(patch, mode=DOMINANT_MODE):
    """Cavity-model resonant frequency of the TM_mn mode in Hz.

    ``f_mn = 1/(2*pi*sqrt(mu*eps)) * sqrt((m*pi/L)**2 + (n*pi/W)**2)`` with
    ``mu = mu0*mu_r`` and ``eps = eps0*eps_r``, evaluated as
    ``c / (2*pi*sqrt(mu_r*eps_r)) * ...`` so that vacuum cases are exact.
    """
    if not isinstance(mode, ModeIndex):
        mode = ModeIndex(*mode)
    s = patch.substrate
    kx = mode.m * np.pi / patch.length
    ky = mode.n * np.pi / patch.width
    return SPEED_OF_LIGHT / (2.0 * np.pi * np.sqrt(s.mu_r * s.epsilon_r)) * np.hypot(kx, ky)


def synthesize_patch(f_target, substrate, mode=DOMINANT_MODE):
    """Patch dimensions whose TM10 cavity resonance is ``f_target``.

    Length inverts the cavity formula exactly. Width uses the usual
    efficient-radiator rule ``W = c/(2f) * sqrt(2/(eps_r + 1))``.
    """
    if not isinstance(mode, ModeIndex):
        mode = ModeIndex(*mode)
    if (mode.m, mode.n) != (1, 0):
        raise InvalidModeError(f"only the dominant TM10 mode can be synthesized, got {mode}")
    if not f_target > 0:
        raise DomainError(f"target frequency must be positive, got {f_target}")
    half_wave = SPEED_OF_LIGHT / (2.0 * f_target)
    length = half_wave / np.sqrt(substrate.epsilon_r * substrate.mu_r)
    width = half_wave * np.sqrt(2.0 / (substrate.epsilon_r + 1.0))
    return PatchGeometry(float(length), float(width), substrate)


def effective_permittivity(width, thickness, epsilon_r):
    """Hammerstad quasi-static effective permittivity of a wide microstrip."""
    return (epsilon_r + 1) / 2 + (epsilon_r - 1) / 2 / np.sqrt(1 + 12 * thickness / width)


def length_extension(width, thickness, epsilon_eff):
    """Fringing-field extension ``Delta L`` at each radiating edge."""
    u = width / thickness
    return (0.412 * thickness * (epsilon_eff + 0.3) * (u + 0.264)
            / ((epsilon_eff - 0.258) * (u + 0.8)))


def fringing_corrected_frequency(patch, mode=DOMINANT_MODE):
    """TM10 resonance including effective permittivity and edge extension.

    Returns ``c / (2 (L + 2 dL) sqrt(eps_eff mu_r))``. Only valid while the
    substrate is thinner than the patch is wide.

    For synthesized patches on substrates up to eps_r ~ 4.4 this always lies
    below the cavity value. On thin high-permittivity boards the drop from
    eps_r to eps_eff can outweigh the edge extension and shift it upward.
    """
    if not isinstance(mode, ModeIndex):
        mode = ModeIndex(*mode)
    if (mode.m, mode.n) != (1, 0):
        raise InvalidModeError("fringing correction is defined for TM10 only")
    s = patch.substrate
    if s.thickness >= patch.width:
        raise DomainError("fringing correction needs substrate thickness < patch width")
    eps_eff = effective_permittivity(patch.width, s.thickness, s.epsilon_r)
    dl = length_extension(patch.width, s.thickness, eps_eff)
    return SPEED_OF_LIGHT / (2.0 * (patch.length + 2.0 * dl) * np.sqrt(eps_eff * s.mu_r))
