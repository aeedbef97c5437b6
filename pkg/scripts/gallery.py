"""Write SVG pictures of each bundled divide: the immersion, its doubling and
the link diagram."""
import sys
from importlib import resources
from pathlib import Path

from divide_forge import double, embed, link_of_graph_divide, parse_divide, render_svg, simplify

out = Path(sys.argv[1] if len(sys.argv) > 1 else "gallery")
out.mkdir(exist_ok=True)
for f in sorted(resources.files("divide_forge").joinpath("data").iterdir()):
    if not f.name.endswith(".div"):
        continue
    d = parse_divide(f.read_text())
    stem = f.name[:-4]
    g = embed(d)
    diag = link_of_graph_divide(d)
    (out / f"{stem}.svg").write_text(render_svg(g))
    (out / f"{stem}.double.svg").write_text(render_svg(double(g)))
    (out / f"{stem}.link.svg").write_text(render_svg(diag))
    print(f"{stem}: {len(diag)} crossings drawn, {len(simplify(diag))} after simplification")
