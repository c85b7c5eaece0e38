"""RF impedance-matching workbench for lumped-element antenna front ends.

Models a complex antenna load, synthesizes and discretizes L-type matching
networks, evaluates S11 sweeps, ingests VNA .s1p measurements, generates
the leaf-shaped radiator outline, and simulates capacitor-charging
wireless power transfer. See README.md for the CLI and the interactive
Smith-chart service.
"""

__version__ = "0.1.0"
