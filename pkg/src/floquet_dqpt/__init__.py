"""Floquet dynamical-phase-transition toolkit for a harmonically driven chain.

Modules
-------
model     : Bloch Hamiltonian, rotating frame, exact quasienergies and modes
dynamics  : analytic propagator, brute-force oracle, return amplitudes
dqpt      : rate function, Fisher zeros, critical condition
geometry  : Pancharatnam phases, dynamical winding number, tomography route
topology  : chiral time frames and the (W0, Wpi) invariants
lattice   : real-space BdG chain, momentum consistency, edge-mode spectra
cli       : dataset-producing command-line front end (`fdqpt`)
"""

from .model import (ModelParams, BlochComponents, FloquetSolution,
                    bloch_components, hamiltonian_lab, floquet_solution,
                    micromotion, fold_quasienergy)
from .dynamics import (ReturnAmplitude, propagator_analytic, propagator_oracle,
                       return_amplitude, return_probability)
from .dqpt import (CriticalSet, FisherLine, dqpt_condition, fisher_tau,
                   fisher_lines, rate_function)
from .geometry import (PhaseRecord, total_phase, dynamical_phase,
                       geometric_phase, winding_number, bloch_expectations,
                       geometric_phase_from_tomography)
from .topology import (ChiralInvariants, symmetric_frame_operators,
                       chiral_winding_numbers, encircling_condition)
from .lattice import (BdgChain, FloquetSpectrum, build_chain,
                      momentum_consistency_check, obc_floquet_spectrum)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
