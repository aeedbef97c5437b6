"""Free divides with one double point: every sign choice, both pipelines."""
import itertools
from importlib import resources

from divide_forge import band_word, closure_diagram, jones, link_of_graph_divide, parse_divide
from divide_forge.divide_model import Connector

NAMES = {
    "-t^4 +t^3 +t": "right trefoil",
    "-t^6 +t^5 -t^4 +2t^3 -t^2 +t": "5_2 (quasipositive chirality)",
}


def variants(d):
    ends = [i for i, c in enumerate(d.connectors) if c.kind == "end"]
    for signs in itertools.product((-1, 1), repeat=len(ends)):
        pick = dict(zip(ends, signs))
        yield signs, d.with_connectors(
            Connector(c.kind, c.ranks, c.h, c.side, pick[i]) if i in pick else c for i, c in enumerate(d.connectors)
        )


for name in ("alpha_even.div", "tails_inside.div"):
    d = parse_divide(resources.files("divide_forge").joinpath("data", name).read_text())
    print(name)
    for signs, v in variants(d):
        a = jones(link_of_graph_divide(v))
        b = jones(closure_diagram(band_word(v)))
        tag = "".join("+" if s > 0 else "-" for s in signs)
        print(f"  {tag}  {NAMES.get(str(a), str(a)):32s} pipelines agree: {a == b}")
