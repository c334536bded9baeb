"""trisectlab: exact workbench for trisection numbers.

Decides, with witnesses or certificates, whether a = 2cos(angle) admits a
straightedge-and-compass trisection over the rationals or a real quadratic
field; enumerates and counts height balls; measures the density decay of
the accepted set; and generates re-verifiable irreducibility, n-section,
and algebraic-degree certificates.
"""

from .coprime_count import Box, CountReport, brute_count, lehmer_report, mobius, sieve_count
from .exact_arith import (
    FieldDescriptor,
    QuadElem,
    RATIONAL_FIELD,
    canonicalize,
    format_element,
    height,
    in_interval,
    parse_element,
    quadratic_field,
)
from .height_enum import (
    HeightBall,
    QBoxSpec,
    count_ball,
    count_ball_interval,
    enumerate_ball,
    enumerate_ball_interval,
    qbox,
)
from .polyalg import (
    IntPoly,
    RatPoly,
    chebyshev_like,
    cos_minimal_poly,
    cyclotomic,
    eisenstein_check,
    rational_roots,
    resultant_minpoly,
)
from .trisect_core import (
    Certificate,
    DensityReport,
    TrisectionVerdict,
    apply_f,
    decide_trisection,
    density_experiment,
    eisenstein_cert_3rs,
    nonconstructible_witness,
    preimage_bound,
    raw_image,
    square_family_check,
    yates_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Certificate",
    "CountReport",
    "DensityReport",
    "FieldDescriptor",
    "HeightBall",
    "IntPoly",
    "QBoxSpec",
    "QuadElem",
    "RATIONAL_FIELD",
    "RatPoly",
    "TrisectionVerdict",
    "apply_f",
    "brute_count",
    "canonicalize",
    "chebyshev_like",
    "cos_minimal_poly",
    "count_ball",
    "count_ball_interval",
    "cyclotomic",
    "decide_trisection",
    "density_experiment",
    "eisenstein_cert_3rs",
    "eisenstein_check",
    "enumerate_ball",
    "enumerate_ball_interval",
    "format_element",
    "height",
    "in_interval",
    "lehmer_report",
    "mobius",
    "nonconstructible_witness",
    "parse_element",
    "preimage_bound",
    "qbox",
    "quadratic_field",
    "rational_roots",
    "raw_image",
    "resultant_minpoly",
    "sieve_count",
    "square_family_check",
    "yates_certificate",
]
