"""Every placement algorithm on the same instance, side by side.

A seeded 30 x 5 Gaussian candidate matrix, 12 sensors to place. The table
shows the frame potential and MSE of each selection; the exhaustive optimum
is too costly here (C(30,12) is about 86 million), so the random picker is
the honest yardstick.
"""

import numpy as np

from framesense import (
    ALGORITHMS,
    GeneratorSpec,
    PlacementOptions,
    frame_potential,
    generate,
    mse,
    run_placement,
)

psi = generate(GeneratorSpec("gaussian", n=30, k=5, seed=7))
sensors = 12

print(f"placing {sensors} sensors among {psi.n} candidates, K = {psi.k}\n")
print(f"{'algorithm':<12}{'frame potential':>18}{'mse':>12}   chosen rows")
for name in ALGORITHMS:
    opts = PlacementOptions(algorithm=name, seed=3)
    selection = run_placement(psi, sensors, opts)
    chosen = sorted(selection.chosen)
    fp = frame_potential(psi, chosen)
    err = mse(psi, chosen)
    head = " ".join(f"{i:2d}" for i in chosen[:8])
    tail = " ..." if len(chosen) > 8 else ""
    print(f"{name:<12}{fp:>18.4f}{err:>12.4f}   {head}{tail}")

print("""
Reading the table: the frame-potential greedy lands at or near the best MSE
despite never evaluating an inverse, which is the whole trick; the det and
mse greedies get comparable quality at a much higher cost per step, and
random trails everything.
""")
