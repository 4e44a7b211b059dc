"""High-precision numerics for colored Jones asymptotics.

Subpackages cover contour quadrature and polynomial solving (``numerics``),
dilogarithm-family special functions (``special``), the quantum dilogarithm
(``qdilog``), colored Jones evaluations (``jones``), limiting potentials and
their saddle data (``potential``), asymptotic right-hand sides and growth-rate
fitting (``asymptotics``), and SL(2,C) representation / Chern-Simons data
(``slrep``).  ``cli`` exposes everything as a command-line tool.
"""

__version__ = "0.1.0"
