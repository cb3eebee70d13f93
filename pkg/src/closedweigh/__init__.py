"""Simulations of measuring conserved quantities from inside a closed system.

Three idealized experiments are implemented: a clock-coupled internal
energy measurement, a gravitational weighing of a shell by a test shell,
and an angular momentum readout on a rotating disc. Each comes with the
uncertainty-product bookkeeping that limits it.
"""

__version__ = "0.1.0"
