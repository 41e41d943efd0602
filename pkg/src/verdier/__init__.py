"""Eventually periodic complexes over finite-dimensional algebras, truncation
triangles, and Hom spaces in Verdier quotients of homotopy categories."""

from .algebra import (Algebra, Module, builtin, dual_numbers, regular_module, semisimple,
                      simple_module, stable_hom, string_algebra, syzygy)
from .complexes import (Complex, GradedMap, Tail, brutal_ge, brutal_le, cone, homology_dim,
                        homology_profile, intelligent_ge, intelligent_le, stalk)
from .config import SessionConfig
from .formats import emit_complex, parse_algebra, parse_complex
from .homotopy import homotopy_hom, homotopy_hom_dim, is_contractible, null_homotopy
from .minimal import minimal_model
from .quotients import (HasseLabel, QuotientHomResult, TriangleWitness, classify,
                        compose_tstructures, hom_dminus_infty, hom_dplus_infty, hom_sg,
                        split_witness, star_witness)

__version__ = "0.1.0"
