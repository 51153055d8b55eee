"""Exact and p-adic computations of Kubota-Leopoldt L-functions and Eisenstein measures."""

from .errors import NotIntegralError, PeisError, PoleError, PrecisionError, PreconditionError
from .exact import bernoulli_number, bernoulli_polynomial, stabilized_zeta
from .padic import PadicInt, PadicNumber, WeightCharacter
from .dirichlet import DirichletCharacter, enumerate_characters, teichmuller_character
from .iwasawa import LambdaElement, weierstrass_prepare
from .measures import bernoulli_distribution, ec_measure, haar_distribution
from .lfunctions import lp_interpolation, lp_measure_route, zeta_star
from .eisenstein import QExpansion, classical_G, padic_G_star, serre_eisenstein_measure

__all__ = [
    "NotIntegralError", "PeisError", "PoleError", "PrecisionError", "PreconditionError",
    "bernoulli_number", "bernoulli_polynomial", "stabilized_zeta",
    "PadicInt", "PadicNumber", "WeightCharacter",
    "DirichletCharacter", "enumerate_characters", "teichmuller_character",
    "LambdaElement", "weierstrass_prepare",
    "bernoulli_distribution", "ec_measure", "haar_distribution",
    "lp_interpolation", "lp_measure_route", "zeta_star",
    "QExpansion", "classical_G", "padic_G_star", "serre_eisenstein_measure",
]

__version__ = "0.1.0"
