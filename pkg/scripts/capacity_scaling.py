"""Cost of emulating GHZ chains versus superposition-only circuits.

Prints one row per register size and the largest register that fits a budget.
"""
import argparse

import numpy as np

from emqubit.gates import CNOT, NOT, SNOT
from emqubit.net import Circuit, GateOp, estimate_resources
from emqubit.net.simulate import max_qubits_under_budget
from emqubit.signal import Label, encode


def ghz(n):
    lines = tuple(f"q{i}" for i in range(n))
    gates = tuple(GateOp(CNOT, (lines[i], lines[i + 1])) for i in range(n - 1))
    return Circuit(lines, {"q0": encode(Label.PLUS)}, gates, lines)


def flat(n, rng):
    lines = tuple(f"q{i}" for i in range(n))
    gates = tuple(GateOp((NOT, SNOT)[rng.integers(2)], (lines[rng.integers(n)],)) for _ in range(3 * n))
    return Circuit(lines, {}, gates, lines)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-lines", type=int, default=32)
    ap.add_argument("--budget", type=float, default=1e9)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    budget = int(args.budget)
    print(f"{'N':>3}  {'ghz lines':>12}  {'ghz gates':>12}  {'flat lines':>10}  fits")
    for n in range(1, args.max_lines + 1):
        g = estimate_resources(ghz(n), "join", budget)
        f = estimate_resources(flat(n, rng), "join", budget)
        print(f"{n:>3}  {g.signal_line_cost:>12}  {g.gate_cost:>12}  {f.signal_line_cost:>10}  "
              f"{'no' if g.over_budget else 'yes'}")
    print(f"max qubits with 2^N <= {budget}: {max_qubits_under_budget(budget)}")


if __name__ == "__main__":
    main()
