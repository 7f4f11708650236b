#! /usr/bin/env python3
# Reading PD codes and computing the basic invariants.

import numpy as np

from linkcalc import (canonical_key, corpus_load, faces, linking_matrix,
                      parse_pd, to_pd, writhe)

# the right-handed trefoil; each X lists four arc labels counterclockwise,
# starting from the incoming under-strand
k = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
print(k.n_components, "component,", k.n_crossings, "crossings")
print("writhe", writhe(k))  # +3 fixes the sign convention
print("faces", len(faces(k)))  # V - E + F = 2 with V = 3, E = 6

# the same knot with every label shifted by one has the same canonical key
shifted = parse_pd("X[2,6,3,5] X[4,2,5,1] X[6,4,1,3]")
print("same key after relabeling:", canonical_key(shifted) == canonical_key(k))

# its mirror image does not
mirror = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
print("mirror writhe", writhe(mirror), "same key:", canonical_key(mirror) == canonical_key(k))

# linking numbers: half the signed count of crossings between two components
for name in ("hopf", "whitehead", "borromean", "key-chain"):
    lk = linking_matrix(corpus_load(name))
    print(name)
    print(lk)
    print("  homologically trivial:", not np.any(lk))

# the serializer numbers arcs consecutively along each component
print(to_pd(corpus_load("chain4")))
