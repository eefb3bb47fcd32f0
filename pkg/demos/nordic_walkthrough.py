"""Budget trade-off on the bundled 60-bus grid.

Run: python demos/nordic_walkthrough.py
"""

from fractions import Fraction

from pdcost import analyze, cost, envelope, nordic32, observance_table, useful_sizes


def main():
    G = nordic32()
    table = observance_table(G)
    print(f"grid: n={G.n}, m={G.m}, gamma_P={table.gamma_p}")
    for row in table.rows:
        print(f"  k={row.k:2d}  maxObs={row.max_obs:2d}  witness={list(row.witness)}")

    env = envelope(table)
    print("\nlower envelope of the cost lines:")
    for seg in env.segments:
        hi = "inf" if seg.hi is None else seg.hi
        print(f"  beta in [{seg.lo}, {hi}]  ->  k={seg.k}  ({seg.line})")
    print("useful sizes:", list(useful_sizes(table).useful))

    for beta in (Fraction(1, 20), Fraction(1, 4), Fraction(2, 5), Fraction(1)):
        k = env.best_sizes(beta)[0]
        S = table.rows[k].witness
        print(f"beta={beta}: place {k} sensors at {list(S)}, cost {cost(G, sum(1 << v for v in S), beta)}")

    report, _ = analyze(G, beta="1/4")
    print("\nminimum fort:", report.fort)
    print("threshold above which a full cover is optimal:", report.gamma_threshold["beta"])


if __name__ == "__main__":
    main()
