"""Exact chamber-resolved Seiberg-Witten invariants for 4-manifolds with b+ = 1."""

from .chambers import Chamber, CrossingReport, OnWall, PeriodPair, classify, is_c_good, segment_crossing, sheet_of
from .exterior import Multivector, divided_power, pfaffian, top_pairing, wedge
from .lattice import (
    IntersectionForm,
    enumerate_characteristic,
    is_characteristic,
    make_form,
    pair,
    van_der_blij_check,
)
from .manifest import Manifest, load_catalog, load_manifest, parse_manifest
from .swinv import (
    ChamberValues,
    SWForm,
    flip_orientation1,
    flip_sheet,
    index,
    psc_catalog_check,
    resolve,
    wall_delta,
)
from .topology import ManifoldModel, TopoInvariants, build_model, invariants, u_c

__version__ = "0.1.0"
