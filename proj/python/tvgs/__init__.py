"""Sampling and exact recovery of jointly bandlimited time-vertex graph signals."""

from fractions import Fraction

from ._core import *  # noqa: F401,F403
from ._core import TvgsError, SamplingPlan

TvgsError.code = property(lambda self: self.args[0])


def plan_ratio(p: SamplingPlan) -> Fraction:
    """Sampling ratio of a plan as an exact fraction."""
    return Fraction(*p.ratio)


__version__ = "0.1.0"
