"""Build graphs whose useful sizes are a prescribed set.

Run: python demos/useful_size_construction.py
"""

from pdcost import observance_table, realize_useful_sizes, useful_sizes
from pdcost.constructions import cycle_lengths


def main():
    print("full-size cycle lengths for s=2, R={0,1,2}:", cycle_lengths(2, {0, 1, 2}))
    real = realize_useful_sizes(2, {0, 1, 2}, vertex_cap=20000)
    print(f"  full construction has {real.graph.n} vertices (bound {real.vertex_bound})")

    cases = [
        (2, {0, 2}, 1, {2: 4}),
        (2, {0, 1, 2}, 1, {1: 8, 2: 4}),
        (3, {0, 1, 3}, 1, {1: 12, 3: 4}),
        (3, {0, 1, 2, 3}, 2, {1: 12, 2: 8, 3: 4}),
    ]
    print("\nscaled-down instances, solved exactly:")
    for s, R, ell, cycles in cases:
        real = realize_useful_sizes(s, R, ell=ell, cycles=cycles)
        table = observance_table(real.graph)
        got = list(useful_sizes(table).useful)
        print(f"  s={s} R={sorted(R)}: n={real.graph.n}, maxObs={list(table.values)}, useful={got}")


if __name__ == "__main__":
    main()
