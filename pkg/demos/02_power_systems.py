"""Solving linear systems whose unknowns are powers of two.

    python demos/02_power_systems.py
"""

from pow2lab.linpoly import parse_linpoly as P
from pow2lab.powersolve import PowerSystem, instantiate_free, solve_in_powers

cases = [
    ("one doubling", [P("x1 - 2*x2")], []),
    ("two equal summands", [P("x1 + x2 - x3")], []),
    ("three summands", [P("x1 + x2 + x3 - x4")], []),
    ("contradiction", [P("x1 - x2")], [P("x1 - x2")]),
    ("coupled", [P("x1 + x2 - x3"), P("x3 - x4 - x5")], []),
    ("coupled, but x1 != x4", [P("x1 + x2 - x3"), P("x3 - x4 - x5")], [P("x1 - x4")]),
]

for name, E, N in cases:
    system = PowerSystem.build(E, N)
    fams = solve_in_powers(system)
    print(f"== {name}: {len(fams)} famil{'y' if len(fams) == 1 else 'ies'}")
    print("   " + system.dump().replace("\n", "\n   ").rstrip())
    for f in fams:
        ys = instantiate_free(f)
        print("  ", f.render())
        if ys is not None:
            xs = [1 << y for y in ys]
            print("     e.g. x =", xs, " E:", [p.evaluate(xs) for p in E], " N:", [p.evaluate(xs) for p in N])
    print()
