"""Direct theta kernel against its Poincare expansion for several (N, t).

Prints the measured calibration constant, its spread over the sample points
and how much of the Poincare value comes from non-identity cosets.
"""

import argparse

import numpy as np

from shimlift.checks import kernel_points
from shimlift.thetalift import NSParams, ns_kernel_poincare, ns_kernel_sharp


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--params", default="35:2,51:10,3:1,5:1,7:3")
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    rng = np.random.default_rng(a.seed)
    print(f"{'N':>4} {'t':>3} {'constant':>24} {'spread':>9} {'coset share min/med':>20} {'cosets':>7}")
    for item in a.params.split(","):
        params = NSParams(*(int(x) for x in item.split(":")))
        ratios, shares, cos = [], [], []
        for tau, w in kernel_points(rng, a.points, params):
            d = ns_kernel_sharp(tau, w, params)
            q = ns_kernel_poincare(tau, w, params)
            ratios.append(d.value / q.value)
            shares.append(abs(q.coset_part) / abs(q.value))
            cos.append(q.cosets)
        c = ratios[0]
        spread = max(abs(r - c) for r in ratios)
        print(f"{params.N:4d} {params.t:3d} {c.real:12.9f}{c.imag:+12.2e}i {spread:9.1e} {min(shares):9.4f}/{np.median(shares):.4f} {max(cos):7d}")


if __name__ == "__main__":
    main()
