"""Exact computations for Farey ring configurations of spheres in connected
sums of CP^2: lens spaces from smoothed chains, changemaker obstructions,
and large-square spheres."""
from .changemaker import (
    complement_gram,
    embeds_as_changemaker_complement,
    enumerate_changemakers,
    family_not_changemaker,
    is_changemaker,
    surgery_obstruction,
)
from .configuration import RingConfiguration, build, weight_components
from .farey import FareyPath, Slope, distance, enumerate_paths, parents, validate_path
from .lens import LensSpace, LinearLattice, cf_evaluate, cf_expand, family_lens, lens_canonical
from .smoothing import SmoothedChain, SmoothingSpec, enumerate_smoothings, smooth, smooth_adjacent
from .spheres import (
    find_induced_path,
    is_characteristic,
    max_smoothed_square,
    pairing_bound_check,
    subdivided_petersen,
    twist_concordance_square,
)

__version__ = "0.1.0"
