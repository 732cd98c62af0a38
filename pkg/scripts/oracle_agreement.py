"""Worst amplitude error between the group simulator and the statevector oracle.

Draws random circuits of growing size under the join policy and reports the
largest error and the largest joint group seen per register size.
"""
import argparse

import numpy as np

from emqubit.gates import CNOT, NOT, SNOT
from emqubit.net import Circuit, GateOp, simulate, verify_against_oracle
from emqubit.signal import encode


def random_circuit(rng, n, depth):
    lines = tuple(f"q{i}" for i in range(n))
    inputs = {q: encode(("even", "odd", "plus", "minus")[rng.integers(4)]) for q in lines}
    gates = []
    for _ in range(depth):
        if n > 1 and rng.random() < 0.3:
            c, t = rng.choice(n, 2, replace=False)
            gates.append(GateOp(CNOT, (lines[c], lines[t])))
        else:
            gates.append(GateOp((NOT, SNOT)[rng.integers(2)], (lines[rng.integers(n)],)))
    return Circuit(lines, inputs, tuple(gates), lines)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--depth", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'N':>3}  {'worst error':>12}  {'largest group':>13}  structure")
    for n in range(1, 13):
        worst, biggest, agree = 0.0, 1, True
        for _ in range(args.trials):
            c = random_circuit(rng, n, args.depth)
            rep = verify_against_oracle(c)
            worst = max(worst, rep.max_amplitude_error)
            agree &= rep.product_structure_agreement
            biggest = max(biggest, simulate(c, "join").report.max_group_size)
        print(f"{n:>3}  {worst:>12.2e}  {biggest:>13}  {'agrees' if agree else 'DIFFERS'}")


if __name__ == "__main__":
    main()
