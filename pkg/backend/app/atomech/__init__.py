"""atomech - hybrid atom-optomechanics simulator.

Rates of the light-mediated coupling between a mechanical oscillator and a
distant atomic spin ensemble, the Gaussian steady state of the effective
two-mode dynamics, a truncated-Fock oracle, a collision-model check of the
adiabatic elimination, and an operating-point optimizer.
"""

__version__ = "0.1.0"
