"""Exact calculus on Hom-rho-commutative algebras."""

from .algebra import Algebra, Element, Generator, check_structure, rho_commutator
from .calculus import check_cartan, check_d_squared, d_mu, interior, lie_derivative
from .config import CheckConfig
from .connection import Connection, check_connection, christoffel, curvature, levi_civita, torsion
from .derivations import Derivation, DerivationModule, apply_phiA, derivation_bracket
from .dsl import ModelSpec, load_spec, parse_element, parse_spec
from .forms import Metric, Tensor, metric_validate, wedge
from .grading import CocycleSpec, GradingGroup, validate_cocycle
from .poisson import PoissonStructure, Symplectic, hamiltonian_vf, poisson, symplectic_validate
from .render import render
from .report import Report
from .scalars import Q, Scalar

__version__ = "0.1.0"
