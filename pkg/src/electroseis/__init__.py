"""Forward simulation and algebraic inversion toolkit for the one-way coupled
Maxwell-Biot (electroseismic) system."""

__version__ = "0.1.0"
