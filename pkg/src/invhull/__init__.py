"""Left inverse hulls of finitely presented monoids and their invariants.

The pipeline: present a monoid (``presentation``), generate its hull of
partial bijections with exact or bounded ideal arithmetic (``hull``), study
partial group actions on idempotent semilattices (``paction``, ``orbits``),
verify the matrix-unit structure of the associated algebras with exact
scalars (``smashlab``), and assemble symbolic K-theory expressions with a
provenance ledger (``ktheory``, ``tiling``).  The ``invhull`` command line
exposes every stage with deterministic JSON reports.
"""

__version__ = "0.1.0"

from . import verdicts
from .words import Alphabet, WordError
from .presentation import (MonoidContext, MonoidPresentation,
                           PresentationError, parse_config, preset)
from .hull import (Hull, independence_check, inverse_semigroup_check,
                   right_lcm_check, sigma_check, toeplitz_check)
from .paction import (ACTION_EXAMPLES, ActionError, FiniteGroup,
                      SemilatticePartialAction, crossed_system,
                      induced_action, roundtrip_check)
from .smashlab import (FAMILIES, BudgetExceeded, CellFamily, LabError,
                       build_family, family_report)
from .orbits import ORBIT_EXAMPLES, OrbitChart, action_orbit_report
from .ktheory import (FgAbelianGroup, GroupDescriptor, IndependenceFails,
                      IndependenceUnknown, KTheoryError, KTheoryExpression,
                      UnsupportedPreset, expression_from_action, formula,
                      ideal_orbit_classes, preset_report, resolve,
                      semigroup_route_report)
from .tiling import (PatchTriple, PointSet, SizeLimit, TilingError,
                     gamma_ktheory, patch_classes, triple_mul)

__all__ = [
    "__version__", "verdicts",
    "Alphabet", "WordError",
    "MonoidContext", "MonoidPresentation", "PresentationError",
    "parse_config", "preset",
    "Hull", "independence_check", "inverse_semigroup_check",
    "right_lcm_check", "sigma_check", "toeplitz_check",
    "ACTION_EXAMPLES", "ActionError", "FiniteGroup",
    "SemilatticePartialAction", "crossed_system", "induced_action",
    "roundtrip_check",
    "FAMILIES", "BudgetExceeded", "CellFamily", "LabError", "build_family",
    "family_report",
    "ORBIT_EXAMPLES", "OrbitChart", "action_orbit_report",
    "FgAbelianGroup", "GroupDescriptor", "IndependenceFails",
    "IndependenceUnknown", "KTheoryError", "KTheoryExpression",
    "UnsupportedPreset", "expression_from_action", "formula",
    "ideal_orbit_classes", "preset_report", "resolve",
    "semigroup_route_report",
    "PatchTriple", "PointSet", "SizeLimit", "TilingError", "gamma_ktheory",
    "patch_classes", "triple_mul",
]
