"""Regenerate ``src/cutquad/_simplex_tables.py``.

Fully symmetric rules on the unit triangle and tetrahedron, found by solving
the moment equations for a fixed orbit structure (nonlinear least squares from
random starts, seeded, or from a published starting point). Weights are
positive and points interior unless the generated file says otherwise.

    python tools/gen_simplex_rules.py > src/cutquad/_simplex_tables.py
"""

import itertools
import math
import sys

import numpy as np
from scipy.optimize import least_squares

# (degree, candidate orbit structures tried in order); orbit names follow the
# usual S3/S21/S111 and S4/S31/S22/S211 notation (S22e: S22 at the edge midpoints)
TRIANGLE = [
    (1, [["S3"]]),
    (2, [["S21"]]),
    (4, [["S21", "S21"]]),
    (5, [["S3", "S21", "S21"]]),
    (6, [["S21", "S21", "S111"]]),
]
TETRAHEDRON = [
    (1, [["S4"]]),
    (2, [["S31"]]),
    (3, [["S31", "S31"]]),
    # degree 4 is omitted: positive interior degree-4 rules need 14 points,
    # the size of the degree-5 entry below
    (5, [["S31", "S31", "S22"]]),
    (6, [["S31", "S31", "S31", "S211"]]),
    (7, [["S4", "S31", "S31", "S31", "S22e", "S211"]]),  # Keast 31-point structure
]

# starting guesses (weights as fractions of the volume, orbit parameters) for
# entries where random starts are too slow; degree 7 starts from Keast's
# 31-point rule, which has one negative weight and points on the edge midpoints
STARTS = {
    (3, 7): [0.1095853407966528, 0.0635996491464850, 0.0782131923303186,
             -0.3751064406859797, 0.1218432166639044, 0.0293485515784412,
             0.3325391644464206, 0.0058201058201058,
             0.1653439153439153, 0.1, 0.2],
}

NPARAM = {"S3": 0, "S21": 1, "S111": 2, "S4": 0, "S31": 1, "S22": 1, "S22e": 0, "S211": 2}


def orbit(name, p):
    if name == "S3":
        base = [(1 / 3, 1 / 3, 1 / 3)]
    elif name == "S21":
        a = p[0]
        base = [(a, a, 1 - 2 * a)]
    elif name == "S111":
        a, b = p
        base = [(a, b, 1 - a - b)]
    elif name == "S4":
        base = [(0.25,) * 4]
    elif name == "S31":
        a = p[0]
        base = [(a, a, a, 1 - 3 * a)]
    elif name == "S22":
        a = p[0]
        base = [(a, a, 0.5 - a, 0.5 - a)]
    elif name == "S22e":
        # S22 pinned at the edge midpoints
        base = [(0.0, 0.0, 0.5, 0.5)]
    elif name == "S211":
        a, b = p
        base = [(a, a, b, 1 - 2 * a - b)]
    pts = sorted(set(itertools.permutations(base[0])))
    return np.array(pts)


def exact_moment(alpha):
    d = len(alpha)
    return math.prod(math.factorial(a) for a in alpha) / math.factorial(sum(alpha) + d) * math.factorial(d)


def exponents(d, degree):
    return [a for a in itertools.product(range(degree + 1), repeat=d) if sum(a) <= degree]


def unpack(x, struct):
    pts, wts, k = [], [], 0
    for name in struct:
        w = x[k]
        p = x[k + 1:k + 1 + NPARAM[name]]
        k += 1 + NPARAM[name]
        o = orbit(name, p)
        pts.append(o)
        wts.append(np.full(len(o), w))
    return np.vstack(pts), np.concatenate(wts)


def residual(x, struct, exps, exact):
    bary, w = unpack(x, struct)
    cart = bary[:, 1:]
    return np.prod(cart[:, None, :] ** exps[None], axis=2).T @ w - exact


def polish(x, struct, exps, exact):
    sol = least_squares(residual, x, method="lm", args=(struct, exps, exact),
                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
    bary, w = unpack(sol.x, struct)
    return sol, bary, w


def solve(d, degree, struct, rng, tries=400, positive=True):
    exps = np.array(exponents(d, degree))
    exact = np.array([exact_moment(a) for a in exps])
    start = STARTS.get((d, degree))
    if start is not None and len(start) == sum(1 + NPARAM[n] for n in struct):
        sol, bary, w = polish(start, struct, exps, exact)
        if np.abs(sol.fun).max() < 1e-14 and (bary >= 0).all():
            return bary, w
    best = None
    for _ in range(tries):
        x0, lo, hi = [], [], []
        for name in struct:
            x0.append(rng.uniform(0.01, 0.3))
            lo.append(0.0 if positive else -1.0)
            hi.append(2.0)
            for _ in range(NPARAM[name]):
                x0.append(rng.uniform(0.0, 0.5))
                lo.append(0.0)
                hi.append(0.5 if name in ("S22",) else 1.0)
        sol = least_squares(residual, x0, bounds=(lo, hi), args=(struct, exps, exact),
                            xtol=1e-12, ftol=1e-12, gtol=1e-12)
        if sol.cost > 1e-12:
            continue
        sol, bary, w = polish(sol.x, struct, exps, exact)
        if np.abs(sol.fun).max() < 1e-14 and ((w > 0).all() or not positive) and (bary > 1e-8).all():
            n = len(w)
            if len({tuple(np.round(b, 10)) for b in bary}) == n:
                return bary, w
        if best is None or sol.cost < best:
            best = sol.cost
    raise RuntimeError(f"no rule found for d={d} degree={degree} {struct} (best cost {best})")


def main():
    rng = np.random.default_rng(20240101)
    out = sys.stdout
    out.write('"""Symmetric simplex rules (generated by tools/gen_simplex_rules.py).\n\n'
              'Points are barycentric coordinates; weights sum to one (fraction of the\n'
              'simplex volume). Each entry is ``(degree, points, weights)``.\n"""\n\n')
    for label, d, table in (("TRIANGLE", 2, TRIANGLE), ("TETRAHEDRON", 3, TETRAHEDRON)):
        out.write(f"{label} = [\n")
        for degree, candidates in table:
            signed = (d, degree) in STARTS
            for struct in candidates:
                if signed:
                    continue
                try:
                    bary, w = solve(d, degree, struct, rng)
                    break
                except RuntimeError as exc:
                    print(exc, file=sys.stderr)
            else:
                # no positive rule: accept signed weights with interior points
                for struct in candidates:
                    try:
                        bary, w = solve(d, degree, struct, rng, positive=False)
                        break
                    except RuntimeError as exc:
                        print(exc, file=sys.stderr)
                else:
                    raise RuntimeError(f"degree {degree}: no candidate structure worked")
                out.write("    # signed weights: no positive rule with this orbit structure was found\n")
                if (bary == 0).any():
                    out.write("    # some points lie on the simplex boundary\n")
            out.write(f"    ({degree}, [\n")
            for b in bary:
                out.write("        (" + ", ".join(repr(float(v)) for v in b) + "),\n")
            out.write("    ], [\n")
            for v in w:
                out.write(f"        {float(v)!r},\n")
            out.write("    ]),\n")
            print(f"{label} degree {degree}: {len(w)} points", file=sys.stderr)
        out.write("]\n\n")


if __name__ == "__main__":
    main()
