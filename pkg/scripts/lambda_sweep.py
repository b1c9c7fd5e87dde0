#!/usr/bin/env python3
"""Sweep the linear simulation-function parameter for a problem file.

Replaces the file's zeta parameter with each value of a lambda grid, reruns the
contraction check, and prints one line per value next to the computed feasibility
threshold, e.g.:

    $ python3 scripts/lambda_sweep.py fixtures/example-3-1.problem
    threshold: 0.666667
    lambda 0.100  FAIL  (8 failing pairs)
    ...
    lambda 0.900  PASS
"""

import argparse
import sys
from pathlib import Path

from relfix.contraction import (
    ContractionProblem,
    linear_lambda_threshold,
    verify_contraction,
)
from relfix.problemfile import build_problem, parse_problem
from relfix.simulation import SimulationFunction


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("file", help="problem file to sweep")
    parser.add_argument("--steps", type=int, default=9, help="grid points in (0, 1)")
    parser.add_argument("--tol", type=float, default=0.0, help="verdict tolerance")
    args = parser.parse_args(argv)

    bundle = build_problem(parse_problem(Path(args.file).read_text()))
    base = bundle.problem
    print(f"threshold: {linear_lambda_threshold(base):.6f}")
    for k in range(1, args.steps + 1):
        lam = k / (args.steps + 1)
        problem = ContractionProblem(
            space=base.space,
            relation=base.relation,
            map=base.map,
            potential=base.potential,
            zeta=SimulationFunction(family="linear", lam=lam),
        )
        verdict = verify_contraction(problem, tol=args.tol)
        if verdict.ok:
            print(f"lambda {lam:.3f}  PASS")
        else:
            print(f"lambda {lam:.3f}  FAIL  ({len(verdict.failing_rows)} failing pairs)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
