"""Two-state dynamics for power-law level-glancing models.

Exact numerical transition probabilities next to the perturbative, Magnus,
generalized Dykhne-Davis-Pechukas and Rabi-limit approximations.
"""
from .approximations import (DdpParameters, ZeroPoint, ddp_parameters, ddp_zero_points,
                             p_ddp, p_ddp_contour, p_ddp_even, p_ddp_odd,
                             p_ddp_single_pair, p_ddp_single_pair_weak, p_lz_exact,
                             p_magnus, p_perturbative, p_rabi_limit)
from .analysis import (MaximumRecord, SweepRecord, find_maximum, maxima_table, sweep)
from .errors import (ContourError, ConvergenceError, DegenerateSearchError, DomainError,
                     IntegratorError, UnsupportedModelError, ValidityError)
from .model import (ModelSpec, adiabatic_energy, detuning, field_vector,
                    nonadiabatic_coupling, rotating_phase, scale_parameters)
from .propagator import (BlochVector, ComplexAmplitudes, PropagationConfig,
                         PropagationResult, propagate_amplitudes, propagate_bloch,
                         transition_probability, weak_coupling_z_squared)
from .special import (FresnelValue, beta_fn, fresnel_tail, gamma_fn, gen_fresnel,
                      gen_fresnel_limit, nu_coefficient)

__version__ = "0.1.0"
