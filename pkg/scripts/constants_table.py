"""Print c_t^(0), f_t(0) and f_t at a few densities for a range of t."""
import argparse

from dilates.bounds import critical_density, f_t, f_t_inverse_density, leading_constant

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--t", type=int, nargs="*", default=[2, 3, 4, 5, 7, 10, 100, 10**7])
parser.add_argument("--c", type=float, nargs="*", default=[0.0, 1e-3, 1e-2])
args = parser.parse_args()

print(f"{'t':>10} {'lead':>10} {'c0':>12} " + " ".join(f"{'f(' + str(c) + ')':>14}" for c in args.c))
for t in args.t:
    row = " ".join(f"{f_t(t, c):14.10f}" for c in args.c)
    print(f"{t:>10} {leading_constant(t):10.6f} {critical_density(t):12.8f} {row}")

c = f_t_inverse_density(2, 2.08)
print(f"\nf_2(c) = 2.08 at c = {c:.10e} = 1/{1 / c:.4f}")
