"""Combinatorial fragments, timezone templates, earth maps and their symmetries"""
from pentaglobe.mesh.fragment import (Fragment, TimezoneTemplate, EarthMap,
                                      ValidationReport, validate)
from pentaglobe.mesh.templates import (NeighborhoodFragment, build_neighborhood_fragment,
                                       build_extended_fragment, build_timezone_template,
                                       build_part_template, build_earth_map)
from pentaglobe.mesh.symmetry import (Automorphism, SymmetryGroup, automorphisms,
                                      is_automorphism, symmetries)
