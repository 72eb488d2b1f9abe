"""Deficiency (|t|+1)k - min|A + t.A| per k for a fixed prime, as CSV."""
import argparse
import sys

from dilates.render import to_csv
from dilates.search import conjecture1_explorer

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("-p", type=int, default=13)
parser.add_argument("-t", type=int, default=2)
parser.add_argument("--kmax", type=int, default=6)
parser.add_argument("--threads", type=int, default=1)
parser.add_argument("--samples", type=int, default=0, help="fallback sample count for large k")
args = parser.parse_args()

table = conjecture1_explorer(args.p, args.t, range(1, args.kmax + 1),
                             fallback_samples=args.samples, threads=args.threads)
rows = [vars(r) for r in table.rows]
sys.stdout.write(to_csv(rows))
print(f"# running max deficiency {table.running_max}, candidate c {table.c_candidate}", file=sys.stderr)
