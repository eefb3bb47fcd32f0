"""Observation, forts and why some graphs never reward partial coverage.

Run: python demos/forts_and_propagation.py
"""

from fractions import Fraction

from pdcost import (
    clique_of_hexagons,
    envelope,
    gamma_threshold,
    min_fort_number,
    minimum_fort,
    nordic32,
    observance_table,
    observe,
)
from pdcost.constructions import matching_graph
from pdcost.graph import members


def main():
    G = nordic32()
    res = observe(G, 1 << 41)
    print(f"one sensor at bus 41 observes {res.final.bit_count()} buses")
    print(f"  dominated first: {members(res.initial)}")
    for x, y in res.forces:
        print(f"  {x} forces {y}")
    print("a smallest fort:", members(minimum_fort(G)))

    print("\nperfect matchings: every partial placement loses to doing nothing")
    for n in (6, 8, 10):
        M = matching_graph(n)
        env = envelope(observance_table(M))
        print(f"  n={n}: best size at beta=49/100 is {env.best_sizes(Fraction(49, 100))}, "
              f"at beta=1/2 it is {env.best_sizes(Fraction(1, 2))}")

    H = clique_of_hexagons(18).graph
    t = observance_table(H)
    f = min_fort_number(H)
    th = gamma_threshold(H.n, t.gamma_p, f)
    print(f"\nthree hexagons on a clique: f={f}, gamma_P={t.gamma_p}, threshold={th.beta}")
    print("  envelope sizes:", envelope(t).sizes)


if __name__ == "__main__":
    main()
