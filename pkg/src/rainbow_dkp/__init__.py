"""Generalized DKP oscillator in cosmic-string space-time with rainbow gravity."""
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    NoCutoffError,
    NoSignChangeError,
    ParameterError,
    RainbowDKPError,
    ResolutionError,
    UnphysicalError,
)
from .rainbow import RainbowPair, Scenario, eval_g0, eval_g1
from .spectrum import (
    Branch,
    ModelParams,
    QuantumNumbers,
    SpectrumResult,
    cutoff_omega_case3,
    energies,
    energy,
    energy_implicit,
    gap_width_case1,
    kappa_sq,
    kappa_sq_target,
)
from .specfun import kummer_1f1, laguerre
from .wavefunction import RadialGrid, build_spinor, current_jt, total_probability

__version__ = "0.1.0"
