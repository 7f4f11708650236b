#! /usr/bin/env python3
# Twisting along a disk bounded by an unknotted component: 1/q surgery.

from linkcalc import (OneOverQ, STAR, apply_slopes, corpus_load,
                      detect_bundle, linking_matrix, parse_slopes,
                      predicted_linking_after_twist, to_pd, twist)

# two loops, each passing once through a ring (component 3)
d = corpus_load("key-chain")
site = detect_bundle(d, 2)
print("ring is bundled with", site.m, "strands; inside on its", site.inside)

# the linking law l_ij + q l_iK l_jK, checked against the rewritten diagram
lk = linking_matrix(d)
for q in range(-3, 4):
    out = twist(d, site, q)
    got = linking_matrix(out)[0, 1]
    want = predicted_linking_after_twist(lk, 2, q)[0, 1]
    print(f"q={q:+d}: {out.n_crossings:2d} crossings, l_12 = {got:+d} (law: {want:+d})")

# the Borromean rings in a presentation where two rings are round circles
b = corpus_load("borromean-bundled")
print([None if detect_bundle(b, k) is None else detect_bundle(b, k).inside
       for k in range(3)])

# L(1/1, *, *): twist along ring 1 and drop it
out, steps = apply_slopes(b, parse_slopes("1/1,*,*"))
print(to_pd(out))
print(linking_matrix(out))  # still zero: the law gives 0 + 1*0*0

# deletion and twisting can be mixed in one slope vector
out, steps = apply_slopes(b, [STAR, parse_slopes("inf")[0], OneOverQ(-1)])
print(out.n_components, "component left:", to_pd(out))
for s in steps:
    print(" ring", s["component"] + 1, s["op"], s.get("q", ""),
          len(s.get("certificate", [])), "moves of preparation")
