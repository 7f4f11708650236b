#! /usr/bin/env python3
# Reidemeister moves as values, and bounded search for simpler diagrams.

from linkcalc import (Crossingless, SearchBudget, apply_move, corpus_load,
                      enumerate_moves, is_unknot, linking_matrix,
                      replay_certificate, search_reduce, to_pd)

hopf = corpus_load("hopf")
moves = enumerate_moves(hopf, cap=4)  # cap bounds the crossing count after a move
print(len(moves), "moves on the Hopf link up to 4 crossings")
for m in moves[:5]:
    after = apply_move(hopf, m)  # the input is left untouched
    print(" ", m.kind, m.site, "->", after.n_crossings, "crossings, linking",
          linking_matrix(after)[0, 1])

# an unknot with two curls reduces to a loop; the certificate replays
d = corpus_load("double-kink")
res = search_reduce(d, Crossingless())
print("found:", res.found, "in", len(res.certificate), "moves")
print("replayed:", to_pd(replay_certificate(d, res.certificate)))

# the trefoil cannot be unknotted; at cap 5 the search runs out of diagrams
v = is_unknot(corpus_load("trefoil"), SearchBudget(max_crossings=5))
print(v.kind, v.report["search"])  # frontier 0: every diagram up to 5 crossings seen
