"""
tropfan
=======

Integral tropical homology and Chow rings of rational simplicial fans.

Modulos:
    config_loader: Loading and management of the YAML configuration
    lattice: Integer matrices, Smith/Hermite forms, sublattices, abelian groups
    fan: Simplicial fans, star fans, products, blow-ups, conewise linear functions
    matroid: Matroids, parallel connection and Bergman fans
    coefficients: Faces of the compactification and the F_p / F^p coefficients
    homology: Cellular (co)homology, relative pairs, hypercube complex, cap and cup products
    chow: Chow rings, Minkowski weights, cl maps, Hodge isomorphism, Gysin maps
    divisors: Orders of vanishing, divisors and tropical modifications
    properties: Property checks (normal, irreducible, PD, smooth, principal, Deligne)
    shelling: Shellability witness replay
    fan_io: JSON input/output and rebase
    corpus: Built-in example fans and golden reports
    utils: Logging, thread budget, parallel map, JSON helpers

Autor: Otavio Feitosa
Data: 2025
"""

__version__ = "1.0.0"
__author__ = "Otavio Feitosa"
__email__ = "otavio.feitosa@cempa.br"

from .config_loader import ConfigLoader
from .exceptions import (
    FanError,
    InputFormatError,
    MatroidError,
    PreconditionError,
    TropFanError,
    WitnessError,
)
from .lattice import FinAbGroup, SublatticeBasis
from .fan import ConewiseLinear, Fan, blow_down, blow_up, product, star_fan, validate_fan
from .matroid import Matroid, bergman_fan
from .homology import CellComplex, Homology, homology, relative_homology
from .chow import ChowRing, chow_group, cl_map, minkowski_weights
from .divisors import divisor, ord_along, tropical_modification
from .properties import deligne_check, is_smooth, run_checks, verifies_pd
from .shelling import replay_shell_witness

__all__ = [
    'ConfigLoader',
    'TropFanError',
    'FanError',
    'MatroidError',
    'PreconditionError',
    'WitnessError',
    'InputFormatError',
    'FinAbGroup',
    'SublatticeBasis',
    'Fan',
    'ConewiseLinear',
    'validate_fan',
    'star_fan',
    'product',
    'blow_up',
    'blow_down',
    'Matroid',
    'bergman_fan',
    'CellComplex',
    'Homology',
    'homology',
    'relative_homology',
    'ChowRing',
    'chow_group',
    'minkowski_weights',
    'cl_map',
    'divisor',
    'ord_along',
    'tropical_modification',
    'verifies_pd',
    'is_smooth',
    'deligne_check',
    'run_checks',
    'replay_shell_witness',
]
