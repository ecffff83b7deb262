"""Donaldson-Thomas style partition functions of C^3/G for finite G in SU(2).

The pieces:

* :mod:`~mckay_dt.roots` - ADE diagrams, finite and affine real roots;
* :mod:`~mckay_dt.quiver` - McKay quiver, superpotential, stability walls;
* :mod:`~mckay_dt.series` - exact truncated multivariate power series;
* :mod:`~mckay_dt.invariants` - chamber, NCDT/DT/PT/GW series and identity checks;
* :mod:`~mckay_dt.cli` - the ``mckay`` command.
"""

from .errors import (
    ImaginaryWallError,
    LabelError,
    McKayError,
    NonGenericError,
    SeriesError,
)
from .invariants import (
    KINDS,
    bps_extract,
    chamber_factors,
    chamber_partition_function,
    check_bps,
    check_crepant,
    check_gw_pt,
    partition_function,
    wall_crossing_factor,
    z_dt,
    z_gw,
    z_ncdt,
    z_pt,
)
from .quiver import crossed_walls, mckay_quiver, superpotential, walls, zeta_im_perturbed, zeta_imaginary
from .roots import (
    DynkinLabel,
    affine_positive_real_roots,
    build_diagram,
    classify_vector,
    finite_positive_roots,
    imaginary_root,
)
from .series import FactorSpec, MultiSeries, SeriesContext, macmahon_power
from .stability import StabilityParameter

__version__ = "0.1.0"
