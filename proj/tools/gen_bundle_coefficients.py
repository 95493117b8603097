# Draws the rational coefficients of the bundle-p2 quadric u and quartic v.
#   python3 tools/gen_bundle_coefficients.py 1
# Seed 1 is the one committed in src/fixtures.cpp.
import itertools
import random
import sys
from fractions import Fraction

rng = random.Random(int(sys.argv[1]))


def gen(deg):
    s = []
    for e in sorted((e for e in itertools.product(range(deg + 1), repeat=3) if sum(e) == deg), reverse=True):
        # every monomial gets a nonzero coefficient
        c = str(Fraction(rng.choice([i for i in range(-5, 6) if i]), rng.randint(1, 3)))
        mon = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
        s.append(f"{c}*{mon}" if c not in ("1", "-1") else ("-" if c == "-1" else "") + mon)
    return " + ".join(s).replace("+ -", "- ")


print(gen(2))
print(gen(4))
