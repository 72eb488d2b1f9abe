"""Run the lower-bound replay on random and progression-like sets and tally verdicts."""
import argparse
import collections
import math

import numpy as np

from dilates.bounds import critical_density
from dilates.rectification import run_proof_pipeline
from dilates.residue_core import is_prime, make_residue_set

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("-t", type=int, default=2)
parser.add_argument("-n", type=int, default=100)
parser.add_argument("--pmin", type=int, default=10_000)
parser.add_argument("--pmax", type=int, default=100_000)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

rng = np.random.default_rng(args.seed)
primes = [q for q in range(args.pmin, args.pmax) if is_prime(q)]
tally = collections.Counter()
for _ in range(args.n):
    p = int(rng.choice(primes))
    k = int(rng.integers(1, max(1, math.floor(critical_density(args.t) * p)) + 1))
    if rng.random() < 0.5:
        A = make_residue_set(p, rng.choice(p, size=k, replace=False))
    else:
        d = int(rng.integers(1, p))
        A = make_residue_set(p, [d * i for i in range(k)])
    for name, verdict in run_proof_pipeline(A, args.t).verdicts.items():
        tally[name, verdict] += 1

for (name, verdict), n in sorted(tally.items()):
    print(f"{name:18} {verdict:8} {n}")
