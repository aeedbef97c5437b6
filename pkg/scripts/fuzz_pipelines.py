"""Differential run of the two link pipelines on random divides.

    python3 scripts/fuzz_pipelines.py --seed 1 --count 500 --size 10
"""
import argparse
import collections
import random
import time
from dataclasses import dataclass

from divide_forge.cli import crosscheck, shrink
from divide_forge.divide_model import random_divide, serialize


@dataclass
class Config:
    seed: int = 1
    count: int = 200
    size: int = 8


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    by_kind = collections.Counter()
    failures = []
    t0 = time.perf_counter()
    for i in range(cfg.count):
        d = random_divide(rng, max_connectors=cfg.size, max_ranks=rng.randint(1, 6), name=f"case-{i}")
        r = crosscheck(d)
        by_kind[tuple(sorted(b.kind for b in r.counts.branches))] += 1
        if not r.ok:
            failures.append(shrink(d, lambda x: not crosscheck(x).ok))
    dt = time.perf_counter() - t0
    print(f"{cfg.count - len(failures)}/{cfg.count} agree in {dt:.1f}s")
    for kinds, n in by_kind.most_common(8):
        print(f"  {n:4d}  {' + '.join(kinds)}")
    for d in failures:
        print(serialize(d))
    return failures


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for f, default in vars(Config()).items():
        p.add_argument(f"--{f}", type=int, default=default)
    run(Config(**vars(p.parse_args())))
