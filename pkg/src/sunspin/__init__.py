"""Generalized SU(2)..SU(5) spin coherent states and their classical dynamics."""

from .coherent import CoherentParams, CoherentState, Group, build_closed_form, build_oracle
from .dynamics import EomMethod, HamiltonianSpec, SingularPoint, Term, Trajectory, integrate
from .generators import SpinRep, multipole_ops, spin_rep

__all__ = [
    "CoherentParams", "CoherentState", "Group", "build_closed_form", "build_oracle",
    "EomMethod", "HamiltonianSpec", "SingularPoint", "Term", "Trajectory", "integrate",
    "SpinRep", "multipole_ops", "spin_rep",
]
