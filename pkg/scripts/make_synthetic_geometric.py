#!/usr/bin/env python3
"""Regenerate fixtures/synthetic-geometric.problem.

A 20-point descending chain under the absolute-difference metric whose step
sizes shrink by the decaying factor 0.9**n, so the step-ratio sequence
itself decays and the trace exercises the eventual-geometric-decay
diagnostics (rho, n0) that the four-point instance terminates too quickly
to reach.
"""

import pathlib

N = 20
RATIO_BASE = 0.9
FIRST_STEP = 0.5


def chain_values():
    steps = [FIRST_STEP]
    for n in range(1, N - 1):
        steps.append(steps[-1] * RATIO_BASE**n)
    values = [1.0]
    for c in reversed(steps):
        values.append(values[-1] + c)
    values.reverse()  # descending: x_0 largest, x_{N-1} = 1 fixed
    return values


def main():
    xs = chain_values()
    lines = [
        "# Generated by scripts/make_synthetic_geometric.py; do not edit by hand.",
        "# 20-point descending chain, steps shrinking by 0.9**n, fixed point at 1.",
        "",
        "[space]",
        "points = " + " ".join(repr(v) for v in xs),
        "metric = absolute-difference",
        "s = 1",
        "complete = true",
        "",
        "[relation]",
    ]
    pairs = [f"({xs[k]!r},{xs[k + 1]!r})" for k in range(N - 1)]
    pairs.append(f"({xs[-1]!r},{xs[-1]!r})")
    lines.append("pairs = " + " ".join(pairs))
    lines.append("transitive-closure = true")
    lines += ["", "[map]"]
    for k in range(N - 1):
        lines.append(f"{xs[k]!r} = {xs[k + 1]!r}")
    lines.append(f"{xs[-1]!r} = {xs[-1]!r}")
    lines += ["", "[potential]"]
    for k, v in enumerate(xs):
        lines.append(f"{v!r} = {N - 1 - k}")
    lines += [
        "",
        "[zeta]",
        "family = linear",
        "lambda = 0.95",
        "",
        "[solver]",
        f"start = {xs[0]!r}",
        "tol = 0",
    ]
    out = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "synthetic-geometric.problem"
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
