"""Exact arithmetic: finite fields, polynomial and rational function rings, jets."""

from .fields import GF, QQ, FiniteField, GFElement, RationalField, field
from .jets import JetSeries, jet_lift, jet_point
from .poly import PolyRing, RationalFunction, p_power_decompose, poly_ring, reduce_mod_p
