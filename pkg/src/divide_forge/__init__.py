"""Links of graph divides, built two ways and cross-checked."""
from .braiding import band_word, braid_index_bound
from .braids import BandWord, BraidWord, closure_diagram, parse_braid
from .converters import gibson_tree_to_graph_divide, parse_tree, positive_braid_to_divide
from .divide_model import GraphDivide, counts, flip_all, flip_signs, parse_divide, random_divide, serialize, validate
from .doubling import double
from .hirasawa import link_of_graph_divide
from .invariants import (
    clasp_number_4d, determinant, invariant_report, jones, simplify, slice_euler_characteristic,
)
from .layout import embed, render_svg

__version__ = "0.1.0"
