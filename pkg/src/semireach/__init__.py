"""Decision procedures for reachability over 1-D affine maps and 2x2
integer matrix semigroups."""

from .core import AffineMap, Mat2, UTMat, Vec2, primitive, xgcd
from .problems import Budget, ProblemInstance, Verdict

__all__ = [
    "AffineMap", "Mat2", "UTMat", "Vec2", "primitive", "xgcd",
    "Budget", "ProblemInstance", "Verdict",
]
