"""A^o(eta) on a grid of eta by quadrature and by the closed form with both
signs of the L'(1) term."""

import argparse

from shimlift import worked_instance
from shimlift.quadfield import l_values
from shimlift.thetalift import constant_term_closed, constant_term_quadrature


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--eta", default="0.25,0.5,1,2,4")
    a = p.parse_args()
    inst = worked_instance()
    D, t = inst.d_b, abs(inst.delta)
    L1, L1p = l_values(inst.chars)
    print(f"L(1) = {L1.imag:.12f} i   L'(1) = {L1p.imag:.12f} i")
    print(f"{'eta':>6} {'quad omega2':>12} {'quad deg':>14} {'closed deg':>14} {'flipped deg':>14} {'quad err':>9}")
    for eta in (float(x) for x in a.eta.split(",")):
        q, err = constant_term_quadrature(eta, inst.chars, D, t)
        c = constant_term_closed(eta, L1, L1p, D, t)
        f = constant_term_closed(eta, L1, L1p, D, t, l_prime_sign=-1)
        print(f"{eta:6.2f} {q.c1:12.8f} {q.c2:14.9f} {c.c2:14.9f} {f.c2:14.9f} {err:9.1e}")


if __name__ == "__main__":
    main()
