"""Dynamic binary matrices stored as canonical slab sets."""
from .core import (Cell, DecompositionError, MatrixSpec, ParseError, Segment, Slab,
                   SlabDecomposition, slab_contains, validate_decomposition)
from .deamort import WorstCaseConfig, WorstCaseMatrix
from .decompose import decompose
from .dynmatrix import AmortizedMatrix, MatrixConfig, NEVER
from .oracle import DenseMatrix, naive_canonical
from .pointloc import PointLocator, pl_build, pl_locate
from .veb import VebDictionary

__all__ = ["Cell", "DecompositionError", "MatrixSpec", "ParseError", "Segment", "Slab",
           "SlabDecomposition", "slab_contains", "validate_decomposition", "WorstCaseConfig",
           "WorstCaseMatrix", "decompose", "AmortizedMatrix", "MatrixConfig", "NEVER",
           "DenseMatrix", "naive_canonical", "PointLocator", "pl_build", "pl_locate",
           "VebDictionary"]
