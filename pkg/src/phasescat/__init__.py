"""phasescat: dual-convention Gabor analysis, time-frequency phase
derivatives, and phase-based scattering transforms."""

from .gabor import FREQUENCY_INVARIANT, TIME_INVARIANT, TFMatrix, convention_convert, dgt
from .phasederiv import PhaseDerivMap, cif_f, lgd_t, phase_deriv_oracle
from .scattering import (
    LayerOutput,
    PathStep,
    ScatteringPath,
    crossings,
    extract_zero_crossing,
    layer,
    scatter,
    u_cif,
    u_lgd,
    u_mag,
)
from .signals import (
    ModulationLaw,
    SampledSignal,
    gen_dirac_comb,
    gen_impulse,
    gen_sinusoid,
    gen_vibrato,
)
from .windows import WindowTriple, default_length, effective_support, make_gauss

__version__ = "0.1.0"

__all__ = [
    "FREQUENCY_INVARIANT",
    "TIME_INVARIANT",
    "TFMatrix",
    "dgt",
    "convention_convert",
    "PhaseDerivMap",
    "cif_f",
    "lgd_t",
    "phase_deriv_oracle",
    "PathStep",
    "ScatteringPath",
    "LayerOutput",
    "u_mag",
    "u_cif",
    "u_lgd",
    "scatter",
    "layer",
    "extract_zero_crossing",
    "crossings",
    "SampledSignal",
    "ModulationLaw",
    "gen_sinusoid",
    "gen_vibrato",
    "gen_impulse",
    "gen_dirac_comb",
    "WindowTriple",
    "make_gauss",
    "default_length",
    "effective_support",
    "__version__",
]
