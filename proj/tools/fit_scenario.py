"""Fit TDMA fractions for the five-device regression scenario.

Positions are fixed at radii (3, 3, 1, 1, 2). Edge weights are linear in rho,
so once the outside options of every matched agent are fixed, the Nash
conditions for the target matching {(2,3), (4,5)} and target allocation are
linear in rho. Each choice of outside options is tried with an LP that
maximizes the smallest margin of the strict inequalities (stability, unique
maximum weight matching, the chosen options being the maximizers). The best
fit is written as a scenario file.

    python3 tools/fit_scenario.py > scenarios/paper_fig4.scn
"""

import itertools
import math
import sys

import numpy as np
from scipy.optimize import linprog

P_MAX = 3.0
TARGET = np.array([0.0, 0.113, 0.06, 0.079, 0.074])
MATCHING = [(1, 2), (3, 4)]  # 0-based pairs (2,3) and (4,5)


def positions():
    a = math.radians(40.0)
    return np.array([
        [0.0, 3.0],
        [3.0 * math.cos(a), 3.0 * math.sin(a)],
        [1.0, 0.0],
        [-1.0, 0.0],
        [-1.0, -math.sqrt(3.0)],
    ])


def capacity(r):
    return math.log1p(1.0 / r)


def edges(x):
    n = len(x)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if np.linalg.norm(x[i] - x[j]) <= P_MAX:
                out.append((i, j))
    return out


def weight_rows(x, es):
    """Row k gives w_k as a linear function of rho."""
    r = np.linalg.norm(x, axis=1)
    rows = np.zeros((len(es), len(x)))
    for k, (i, j) in enumerate(es):
        cij = math.log1p(1.0 / r[i] + 1.0 / r[j])
        rows[k, i] = cij - capacity(r[i])
        rows[k, j] = cij - capacity(r[j])
    return rows


def matchings(n, es):
    for size in range(len(es) + 1):
        for sub in itertools.combinations(range(len(es)), size):
            verts = [v for k in sub for v in es[k]]
            if len(verts) == len(set(verts)):
                yield sub


def solve_branch(x, es, rows, options):
    """options[i] is the neighbor realizing i's outside option, or None."""
    n = len(x)
    index = {e: k for k, e in enumerate(es)}
    partner = {}
    for i, j in MATCHING:
        partner[i], partner[j] = j, i
    eq_a, eq_b = [], []
    ub_a, ub_b = [], []  # rows of a @ rho + margin <= b
    tie_a, tie_b = [], []  # rows of a @ rho <= b, ties between options allowed

    def w(i, j):
        return rows[index[(min(i, j), max(i, j))]]

    for i, j in MATCHING:
        eq_a.append(w(i, j))
        eq_b.append(TARGET[i] + TARGET[j])
    for i, j in MATCHING:
        # alpha_i - beta_i = alpha_j - beta_j with beta linear on this branch.
        row = np.zeros(n)
        rhs = TARGET[i] - TARGET[j]
        for a, sign in ((i, -1.0), (j, 1.0)):
            k = options[a]
            if k is not None:
                row += -sign * w(a, k)
                rhs += -sign * TARGET[k]
        eq_a.append(row)
        eq_b.append(rhs)
    for i in range(n):
        cands = [k for k in range(n) if (min(i, k), max(i, k)) in index and k != partner.get(i)]
        k = options.get(i)
        for other in cands:
            if other == k:
                continue
            # offer of `other` stays below the chosen option (or below zero)
            row = w(i, other).copy()
            rhs = TARGET[other]
            if k is not None:
                row -= w(i, k)
                rhs -= TARGET[k]
                tie_a.append(row)
                tie_b.append(rhs)
            else:
                ub_a.append(row)
                ub_b.append(rhs)
        if k is not None:
            ub_a.append(-w(i, k))
            ub_b.append(-TARGET[k])
    for (i, j) in es:
        if (i, j) not in MATCHING:
            ub_a.append(w(i, j))
            ub_b.append(TARGET[i] + TARGET[j])
    best = rows[[index[e] for e in MATCHING]].sum(axis=0)
    for sub in matchings(n, es):
        if sorted(es[k] for k in sub) == sorted(MATCHING):
            continue
        ub_a.append(rows[list(sub)].sum(axis=0) - best)
        ub_b.append(0.0)
    # variables (rho, margin); maximize margin
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A_ub = [np.append(a, 1.0) for a in ub_a] + [np.append(a, 0.0) for a in tie_a]
    A_ub.append(np.append(np.ones(n), 0.0))
    b_ub = list(ub_b) + list(tie_b) + [1.0]
    A_eq = [np.append(a, 0.0) for a in eq_a]
    bounds = [(0.01, 1.0)] * n + [(None, 0.05)]
    res = linprog(c, A_ub=np.array(A_ub), b_ub=np.array(b_ub), A_eq=np.array(A_eq),
                  b_eq=np.array(eq_b), bounds=bounds, method="highs")
    if res.status != 0:
        return None
    return res.x[:n], res.x[-1]


def main():
    x = positions()
    es = edges(x)
    rows = weight_rows(x, es)
    matched = [v for e in MATCHING for v in e]
    neighbors = {i: [k for k in range(len(x)) if (min(i, k), max(i, k)) in es] for i in matched}
    partner = {}
    for i, j in MATCHING:
        partner[i], partner[j] = j, i
    choices = [[None] + [k for k in neighbors[i] if k != partner[i]] for i in matched]
    fits = []
    for combo in itertools.product(*choices):
        found = solve_branch(x, es, rows, dict(zip(matched, combo)))
        if found is not None and found[1] > 0.0:
            fits.append((found[1], combo, found[0]))
    if not fits:
        sys.exit("no branch admits the target allocation")
    margin, combo, rho = max(fits, key=lambda f: f[0])
    print("# Five-device TDMA uplink with radii (3, 3, 1, 1, 2) and p_max = 3.")
    print("# rho fitted by tools/fit_scenario.py so that the Nash allocation on the")
    print("# matching {(2,3), (4,5)} is (0, 0.113, 0.06, 0.079, 0.074).")
    print(f"# fit margin {margin:.6f}, outside options {combo} (0-based)")
    print("bs 0 0")
    for k, (p, r) in enumerate(zip(x, rho), start=1):
        print(f"dev {k} {p[0]:.12g} {p[1]:.12g} {r:.12g}")
    print(f"pmax {P_MAX:g}")
    w = rows @ rho
    for (i, j), wk in zip(es, w):
        print(f"# w({i + 1},{j + 1}) = {wk:.6f}")


if __name__ == "__main__":
    main()
