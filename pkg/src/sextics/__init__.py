"""Exact computer algebra for sextic surfaces with ten ordinary triple
points: family constructors, a Groebner engine over small prime fields
and exact rationals, singular-point analysis, (-1)-conic counting and
reciprocal (Cremona) transformation bookkeeping."""

__version__ = "0.1.0"
