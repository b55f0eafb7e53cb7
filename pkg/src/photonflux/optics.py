"""Material response, interface coefficients and momentum bookkeeping.

Media are passive (Im chi >= 0) with a constant or tabulated complex
susceptibility; the refractive index is the principal root n = sqrt(1+chi).
Normal incidence only.  Two Fresnel conventions are carried: the default
flux-conserving amplitude pair, and a literal (n-1)/(n+1), 2n/(n+1) pair kept
for comparison because it does not conserve single-photon probability.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, PassivityError, UnitarityError
from .spectral import TWO_PI, SpectralAmplitude
from .units import NATURAL, UnitsConfig

UNITARITY_TOL = 1e-12
PASSIVITY_TOL = 1e-15


def refractive_index(chi):
    """Principal-branch n = sqrt(1 + chi); scalar or array.

    1 + chi on the closed negative real axis is rejected: the branch point
    would make n discontinuous (or zero), and such media are outside the
    passive-dielectric model.
    """
    chi_arr = np.asarray(chi, dtype=complex)
    z = 1.0 + chi_arr
    bad = (z.imag == 0.0) & (z.real <= 0.0)
    if np.any(bad):
        raise DomainError("1 + chi lies on the principal branch cut")
    n = np.sqrt(z)
    if np.isscalar(chi) or chi_arr.ndim == 0:
        return complex(n)
    return n


@dataclass(frozen=True)
class Medium:
    """Passive dielectric: constant chi, or a table linearly interpolated in omega."""

    chi_const: complex | None = None
    table_omega: np.ndarray | None = None
    table_chi: np.ndarray | None = None

    def __post_init__(self):
        if (self.chi_const is None) == (self.table_omega is None):
            raise DomainError("give exactly one of chi_const or a table")
        if self.chi_const is not None:
            self._validate(np.asarray([self.chi_const], dtype=complex))
        else:
            om = np.asarray(self.table_omega, dtype=float)
            ch = np.asarray(self.table_chi, dtype=complex)
            if om.ndim != 1 or om.shape != ch.shape or om.size < 2:
                raise DomainError("table needs matching 1-d omega and chi arrays")
            if np.any(np.diff(om) <= 0):
                raise DomainError("table omega grid must be strictly increasing")
            self._validate(ch)
            object.__setattr__(self, "table_omega", om)
            object.__setattr__(self, "table_chi", ch)

    @staticmethod
    def _validate(chi: np.ndarray) -> None:
        if np.any(chi.imag < -PASSIVITY_TOL):
            raise PassivityError("Im chi < 0: medium would amplify")
        refractive_index(chi)  # rejects branch-cut values

    @classmethod
    def constant(cls, chi: complex) -> "Medium":
        return cls(chi_const=complex(chi))

    @classmethod
    def from_table(cls, omega, chi) -> "Medium":
        return cls(table_omega=np.asarray(omega, float), table_chi=np.asarray(chi, complex))

    @classmethod
    def from_csv(cls, path) -> "Medium":
        """Read rows of omega, Re chi, Im chi (comment lines start with #)."""
        data = np.loadtxt(path, delimiter=",", comments="#")
        if data.ndim == 1:
            data = data[None, :]
        return cls.from_table(data[:, 0], data[:, 1] + 1j * data[:, 2])

    def susceptibility(self, omega):
        if self.chi_const is not None:
            out = np.full(np.shape(omega), self.chi_const, dtype=complex)
            return complex(self.chi_const) if np.ndim(omega) == 0 else out
        om = np.asarray(omega, dtype=float)
        lo, hi = self.table_omega[0], self.table_omega[-1]
        if np.any(om < lo) or np.any(om > hi):
            raise DomainError(
                f"omega outside tabulated range [{lo:.6g}, {hi:.6g}]"
            )
        re = np.interp(om, self.table_omega, self.table_chi.real)
        im = np.interp(om, self.table_omega, self.table_chi.imag)
        return re + 1j * im

    def index(self, omega):
        return refractive_index(self.susceptibility(omega))


def propagate_in_medium(
    state: SpectralAmplitude, medium: Medium, length: float, units: UnitsConfig = NATURAL
) -> SpectralAmplitude:
    """Multiply each bin by exp(i omega n' L / c) * exp(-omega n'' L / c).

    Amplitude attenuation goes as n'' so the photon number in each bin decays
    by exp(-2 omega n'' L / c); a dispersionless n' delays the pulse envelope
    by n' L / c relative to a vacuum run of the same length.
    """
    if length < 0:
        raise DomainError("segment length must be non-negative")
    omega = units.c * state.grid.k
    n = np.asarray(medium.index(omega))
    if np.any(n.imag < -PASSIVITY_TOL):
        raise PassivityError("medium index has n'' < 0")
    transfer = np.exp((1j * n.real - n.imag) * omega * length / units.c)
    return SpectralAmplitude(grid=state.grid, helicity=state.helicity, c=state.c * transfer)


def fresnel_interface(n1: complex, n2: complex, paper_convention: bool = False):
    """Normal-incidence amplitude pair (r, t) from medium 1 into medium 2.

    Default: r = (n1 - n2)/(n1 + n2), t = 2 n1/(n1 + n2), which satisfies
    |r|^2 + (Re n2 / Re n1)|t|^2 = 1 whenever medium 1 is lossless.  The
    ``paper_convention`` pair uses the relative index n = n2/n1 and returns
    r = (n - 1)/(n + 1), t = 2n/(n + 1); this pair does not conserve flux
    and is provided only so the defect can be quantified.
    """
    n1 = complex(n1)
    n2 = complex(n2)
    if n1 == 0 or n2 == 0 or n1 + n2 == 0:
        raise DomainError("degenerate refractive indices")
    if paper_convention:
        n = n2 / n1
        if n + 1 == 0:
            raise DomainError("degenerate relative index")
        return (n - 1) / (n + 1), 2 * n / (n + 1)
    return (n1 - n2) / (n1 + n2), 2 * n1 / (n1 + n2)


@dataclass(frozen=True)
class InterfaceBudget:
    r: complex
    t: complex
    reflectance: float
    transmittance: float
    total: float
    defect: float
    convention: str


def interface_budget(n1: complex, n2: complex, paper_convention: bool = False) -> InterfaceBudget:
    """Probability budget R = |r|^2, T = (Re n2/Re n1)|t|^2 and its defect."""
    r, t = fresnel_interface(n1, n2, paper_convention)
    reflectance = abs(r) ** 2
    transmittance = (complex(n2).real / complex(n1).real) * abs(t) ** 2
    total = reflectance + transmittance
    return InterfaceBudget(
        r=r,
        t=t,
        reflectance=reflectance,
        transmittance=transmittance,
        total=total,
        defect=total - 1.0,
        convention="paper" if paper_convention else "default",
    )


def mirror_momentum_kick(p_em, mode: str) -> np.ndarray:
    """Momentum transferred to the obstacle: 2 p for reflection, p for absorption."""
    p = np.asarray(p_em, dtype=float)
    if mode == "reflect":
        return 2.0 * p
    if mode == "absorb":
        return p.copy()
    raise DomainError(f"mode must be 'reflect' or 'absorb', got {mode!r}")


@dataclass(frozen=True)
class MomentumReport:
    p_abraham: float
    p_minkowski: float | None
    chi: complex
    minkowski_defined: bool


def momentum_report(state: SpectralAmplitude, chi: complex, units: UnitsConfig = NATURAL) -> MomentumReport:
    """Abraham momentum hbar * sum k |c|^2 dk/2pi and Minkowski (1+chi) partner.

    The Minkowski relation p_M = (1 + chi) p_A holds for lossless (real) chi
    only; for complex chi the report carries p_A alone with p_M flagged
    undefined.
    """
    chi = complex(chi)
    k = state.grid.k
    p_a = float(units.hbar * np.sum(k * np.abs(state.c) ** 2) * state.grid.dk / TWO_PI)
    if chi.imag != 0.0:
        return MomentumReport(p_abraham=p_a, p_minkowski=None, chi=chi, minkowski_defined=False)
    return MomentumReport(
        p_abraham=p_a,
        p_minkowski=(1.0 + chi.real) * p_a,
        chi=chi,
        minkowski_defined=True,
    )


@dataclass(frozen=True)
class PhaseShifter:
    phi: float


@dataclass(frozen=True)
class BeamSplitter:
    """Lossless splitter with matrix ((t, r), (-r*, t*)) on its two ports."""

    t: complex
    r: complex

    def __post_init__(self):
        defect = abs(abs(self.t) ** 2 + abs(self.r) ** 2 - 1.0)
        if defect > UNITARITY_TOL:
            raise UnitarityError(f"|t|^2+|r|^2 deviates from 1 by {defect:.3e}")

    @property
    def scattering(self) -> np.ndarray:
        """Amplitude map on (port0, port1) inputs: columns are single-photon images."""
        return np.array(
            [[self.t, -np.conj(self.r)], [self.r, np.conj(self.t)]], dtype=complex
        )


@dataclass(frozen=True)
class MediumSegment:
    medium: Medium
    length: float

    def __post_init__(self):
        if self.length < 0:
            raise DomainError("segment length must be non-negative")


@dataclass(frozen=True)
class DielectricInterface:
    """Planar interface crossed from n_in into n_out; n_in must be lossless."""

    n_in: complex
    n_out: complex

    def __post_init__(self):
        for n in (self.n_in, self.n_out):
            n = complex(n)
            if n == 0 or not np.isfinite([n.real, n.imag]).all():
                raise DomainError("indices must be finite and nonzero")


@dataclass(frozen=True)
class Mirror:
    r: complex = 1.0 + 0.0j

    def __post_init__(self):
        if abs(abs(self.r) - 1.0) > UNITARITY_TOL:
            raise UnitarityError("mirror reflectivity must have unit magnitude")


ElementSpec = Union[PhaseShifter, BeamSplitter, MediumSegment, DielectricInterface, Mirror]
