"""Regenerates the synthetic fixtures. Answers come from networkx simple-path
enumeration, independent of the Rust code."""
import itertools
import random

import networkx as nx
import numpy as np

OUT = __file__.rsplit("/", 1)[0]


def gamma_sample():
    rng = np.random.default_rng(20240101)
    xs = rng.gamma(shape=2.0, scale=3.0, size=10_000)
    with open(f"{OUT}/gamma_2_0_3.txt", "w") as f:
        f.write("# 10000 draws from gamma(shape=2, location=0, scale=3), numpy seed 20240101\n")
        for x in xs:
            f.write(f"{float(x)!r}\n")


def synthetic50():
    rnd = random.Random(50)
    weights = [0.25, 0.5, 1.0]
    g = nx.Graph()
    g.add_nodes_from(range(50))
    for v in range(1, 50):
        g.add_edge(rnd.randrange(v), v, weight=rnd.choice(weights))
    while g.number_of_edges() < 55:
        u, v = rnd.sample(range(50), 2)
        if not g.has_edge(u, v):
            g.add_edge(u, v, weight=rnd.choice(weights))
    with open(f"{OUT}/synthetic50.edges", "w") as f:
        f.write("# random tree on 50 nodes plus 6 chords, weights in {0.25, 0.5, 1}\n")
        for u, v, w in sorted(g.edges(data="weight")):
            f.write(f"{u} {v} {w}\n")
    with open(f"{OUT}/synthetic50.answers.csv", "w") as f:
        f.write("source,target,geodesic,weighted,bottleneck,minimax_width\n")
        for s, t in itertools.combinations(range(50), 2):
            best = [float("inf")] * 4
            for p in nx.all_simple_paths(g, s, t):
                ws = [g[a][b]["weight"] for a, b in zip(p, p[1:])]
                total = 0.0
                for w in ws:
                    total += w
                hops = len(ws)
                vals = [hops, total, hops * max(ws), max(ws)]
                best = [min(a, b) for a, b in zip(best, vals)]
            f.write(f"{s},{t},{best[0]},{best[1]!r},{best[2]!r},{best[3]!r}\n")


if __name__ == "__main__":
    gamma_sample()
    synthetic50()
