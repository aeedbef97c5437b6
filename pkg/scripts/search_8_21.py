"""Random search for a tree divide whose link is (mirror) 8_21.

Looks at connected tree divides with one double point, the shape forced by
chi_s = -1 and clasp number 1, and tallies the determinant-15 knots met.

    python3 scripts/search_8_21.py --seed 1 --seconds 120 --max-ranks 10
"""
import argparse
import collections
import random
import time
from dataclasses import dataclass

from divide_forge import band_word, closure_diagram, counts, jones, parse_braid, serialize
from divide_forge.divide_model import random_divide
from divide_forge.invariants import determinant_from_jones


@dataclass
class Config:
    seed: int = 1
    seconds: int = 60
    min_ranks: int = 5
    max_ranks: int = 10


def main(cfg: Config):
    target = jones(closure_diagram(parse_braid("s1 s4 s4' s3 s2 s3' s4 s1 s3 s4' s3' s2 s3 s4", 5)))
    rng = random.Random(cfg.seed)
    seen, tried = collections.Counter(), 0
    t0 = time.perf_counter()
    kinds = ("cross", "ycap", "ycup", "end", "cap", "cup")
    while time.perf_counter() - t0 < cfg.seconds:
        d = random_divide(rng, max_connectors=rng.randint(6, 16), max_ranks=rng.randint(cfg.min_ranks, cfg.max_ranks),
                          kinds=kinds)
        c = counts(d)
        if c.delta != 1 or c.euler_G != 1 or len(c.branches) != 1:
            continue
        tried += 1
        v = jones(closure_diagram(band_word(d)))
        if determinant_from_jones(v) == 15:
            seen[str(v)] += 1
        if v in (target, target.mirror()):
            print("found:\n" + serialize(d))
            return d
    print(f"{tried} tree divides with one double point, no 8_21")
    for v, n in seen.most_common():
        print(f"  det 15: {n:5d}  {v}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for f, default in vars(Config()).items():
        p.add_argument(f"--{f.replace('_', '-')}", dest=f, type=int, default=default)
    main(Config(**vars(p.parse_args())))
