#!/usr/bin/env python3
"""Solve a sparse SDPA problem with Clarabel and report like CSDP.

    sdpa_clarabel.py problem.dat-s [solution.sol] [--tol 1e-8] [--max-iter 500] [--verbose]

The problem is  min c.x  s.t.  sum_i F_i x_i - F_0 >= 0 (PSD blockwise).
Printed "Primal objective value" is tr(F_0 X), "Dual objective value" is c.x.
Exit codes follow CSDP: 0 solved, 1 primal infeasible, 2 dual infeasible,
3 partial success, 4 iteration or time limit, 7 other failure.
"""

import argparse
import math
import sys
import time

import numpy as np
import scipy.sparse as sp

import clarabel


def read_sdpa(path):
    with open(path) as fh:
        lines = []
        for raw in fh:
            s = raw.strip()
            if not s or s[0] in '*"':
                continue
            for ch in ",(){}":
                s = s.replace(ch, " ")
            lines.append(s)
    m = int(lines[0].split()[0])
    nb = int(lines[1].split()[0])
    sizes = [int(t) for t in lines[2].split()[:nb]]
    c = np.array([float(t) for t in lines[3].split()[:m]])
    entries = []
    for s in lines[4:]:
        t = s.split()
        entries.append((int(t[0]), int(t[1]) - 1, int(t[2]) - 1, int(t[3]) - 1, float(t[4])))
    return m, sizes, c, entries


def build(m, sizes, entries):
    offsets, cones, total = [], [], 0
    for s in sizes:
        offsets.append(total)
        if s > 0:
            total += s * (s + 1) // 2
            cones.append(clarabel.PSDTriangleConeT(s))
        else:
            total += -s
            cones.append(clarabel.NonnegativeConeT(-s))
    rows, cols, vals = [], [], []
    b = np.zeros(total)
    for mat, blk, i, j, v in entries:
        if sizes[blk] > 0:
            i, j = min(i, j), max(i, j)
            r = offsets[blk] + j * (j + 1) // 2 + i
            if i != j:
                v *= math.sqrt(2.0)
        else:
            r = offsets[blk] + i
        if mat == 0:
            b[r] -= v
        else:
            rows.append(r)
            cols.append(mat - 1)
            vals.append(-v)
    A = sp.csc_matrix((vals, (rows, cols)), shape=(total, m))
    return A, b, cones, offsets


def unpack(z, sizes, offsets):
    out = []
    for blk, s in enumerate(sizes):
        o = offsets[blk]
        if s > 0:
            for j in range(s):
                for i in range(j + 1):
                    v = z[o + j * (j + 1) // 2 + i]
                    if i != j:
                        v /= math.sqrt(2.0)
                    if v != 0.0:
                        out.append((blk + 1, i + 1, j + 1, v))
        else:
            for i in range(-s):
                if z[o + i] != 0.0:
                    out.append((blk + 1, i + 1, i + 1, z[o + i]))
    return out


def min_slack_eigenvalue(s, sizes, offsets):
    """Smallest eigenvalue of sum_i F_i x_i - F_0 over all blocks."""
    worst = math.inf
    for blk, k in enumerate(sizes):
        o = offsets[blk]
        if k > 0:
            S = np.zeros((k, k))
            for j in range(k):
                for i in range(j + 1):
                    v = s[o + j * (j + 1) // 2 + i]
                    if i != j:
                        v /= math.sqrt(2.0)
                    S[i, j] = S[j, i] = v
            worst = min(worst, float(np.linalg.eigvalsh(S)[0]))
        else:
            worst = min(worst, float(np.min(s[o:o - k])))
    return worst


EXIT = {
    "Solved": 0,
    "PrimalInfeasible": 2,
    "DualInfeasible": 1,
    "AlmostSolved": 3,
    "AlmostPrimalInfeasible": 2,
    "AlmostDualInfeasible": 1,
    "MaxIterations": 4,
    "MaxTime": 4,
}


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("problem")
    ap.add_argument("solution", nargs="?")
    ap.add_argument("--tol", type=float, default=1e-8)
    ap.add_argument("--max-iter", type=int, default=500)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)

    start = time.time()
    m, sizes, c, entries = read_sdpa(args.problem)
    A, b, cones, offsets = build(m, sizes, entries)
    P = sp.csc_matrix((m, m))

    settings = clarabel.DefaultSettings()
    settings.verbose = args.verbose
    settings.max_iter = args.max_iter
    settings.tol_gap_abs = args.tol
    settings.tol_gap_rel = args.tol
    settings.tol_feas = args.tol
    settings.tol_ktratio = 1e-7

    sol = clarabel.DefaultSolver(P, c, A, b, cones, settings).solve()
    status = str(sol.status).split(".")[-1]
    code = EXIT.get(status, 7)

    x = np.array(sol.x)
    z = np.array(sol.z)
    primal = float(sol.obj_val_dual)  # tr(F_0 X)
    dual = float(c @ x)
    pinf = float(np.linalg.norm(A.T @ z + c) / (1.0 + np.linalg.norm(c)))
    slack = min_slack_eigenvalue(b - A @ x, sizes, offsets)
    gap = abs(dual - primal)

    if code == 0:
        print("Success: SDP solved")
    elif code == 3:
        print("Partial Success: SDP solved with reduced accuracy")
    else:
        print(f"Failure: solver status {status}")
    print(f"Primal objective value: {primal:.10e}")
    print(f"Dual objective value: {dual:.10e}")
    print(f"Relative primal infeasibility: {pinf:.2e}")
    print(f"Minimum slack eigenvalue: {slack:.2e}")
    print(f"Real Relative Gap: {gap / (1.0 + abs(primal) + abs(dual)):.2e}")
    print(f"Absolute Gap: {gap:.2e}")
    print(f"Iterations: {sol.iterations}")
    print(f"Elapsed time: {time.time() - start:.3f}")

    if args.solution:
        with open(args.solution, "w") as fh:
            fh.write(" ".join(f"{v:.16e}" for v in x) + "\n")
            for blk, i, j, v in unpack(z, sizes, offsets):
                fh.write(f"2 {blk} {i} {j} {v:.16e}\n")
    return code


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
