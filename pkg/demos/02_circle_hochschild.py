#!/usr/bin/env python3
"""Classical Hochschild homology through the circle.

Labelling the minimal circle with k[t]/t^2 recovers the textbook answer
exterior(one degree-1 class) tensor divided-powers(one degree-2 class): a
single class in every degree, sitting in weight equal to its degree.  The
polynomial algebra k[t] is handled per weight; its homology is concentrated
in degrees 0 and 1.
"""

from lodayhom import (
    Coefficients, build_complex, build_space, chain_dims, circle,
    homology_dims, polynomial, truncated_poly,
)

UNIT = Coefficients.unit()

print("k[t]/t^2 over F_3, degrees 0..4:")
table = homology_dims(build_complex(circle(5), truncated_poly(3, 2), UNIT, 4))
print(f"  totals: {table.totals()}")
print(f"  blocks (degree, weight) -> dim: {dict(table.nonzero_blocks())}")
print("  one generator per degree: eps*t in degree 1, its divided powers in")
print("  even degrees, and products thereof; weight always equals degree.\n")

print("Chain sizes show what normalization buys even on the circle:")
full = build_complex(circle(5), truncated_poly(3, 2), UNIT, 4, normalized=False)
norm = build_complex(circle(5), truncated_poly(3, 2), UNIT, 4)
for p in range(6):
    f = sum(v for (q, _), v in chain_dims(full).items() if q == p)
    n = sum(v for (q, _), v in chain_dims(norm).items() if q == p)
    print(f"  level {p}: {f:>3} labelings unnormalized, {n:>2} normalized")
print()

print("k[t] over F_3 with weights bounded by 4 (blockwise exact):")
table = homology_dims(build_complex(circle(3), polynomial(3), UNIT, 2,
                                    weight_bound=4))
print(f"  totals: {table.totals()}")
print(f"  blocks: {dict(table.nonzero_blocks())}")
print("  smooth algebras stop at degree 1; with coefficients reduced to the")
print("  field only the weight-1 class dt survives.")

print()
print("Self coefficients put the algebra back at the basepoint:")
table = homology_dims(build_complex(circle(4), truncated_poly(3, 2),
                                    Coefficients.self_algebra(), 3))
print(f"  k[t]/t^2 with itself as coefficients: {table.totals()}")
