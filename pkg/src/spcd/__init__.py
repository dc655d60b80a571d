"""Singularly perturbed convection-diffusion problems with a discontinuous
initial condition: erfc-based subtraction of the interior layer, an upwind
scheme on Shishkin meshes and two-mesh convergence tables."""

from .analysis import TwoMeshReport, run_sweep, two_mesh_difference
from .examples import EXAMPLES, get_example, list_examples
from .mesh import build_mesh, build_space_mesh, build_time_mesh
from .problem import CharacteristicCurve, InitialCondition, ProblemSpec, crossing_time, jump
from .singular import SingularBasis, erfc, psi, remainder_data, singular_part
from .solver import GridFunction, reconstruct_u, solve, solve_remainder

__all__ = [
    "CharacteristicCurve", "EXAMPLES", "GridFunction", "InitialCondition", "ProblemSpec",
    "SingularBasis", "TwoMeshReport", "build_mesh", "build_space_mesh", "build_time_mesh",
    "crossing_time", "erfc", "get_example", "jump", "list_examples", "psi",
    "reconstruct_u", "remainder_data", "run_sweep", "singular_part", "solve",
    "solve_remainder", "two_mesh_difference",
]
