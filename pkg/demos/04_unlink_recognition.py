#! /usr/bin/env python3
# Recognizing the unlink: linking numbers, sublinks, then a twist.

import json
import random

from linkcalc import (classify_htb, corpus_load, is_trivial_link,
                      verify_verdict)
from linkcalc.scramble import scramble_unlink

# a scrambled three-component unlink; one ring was threaded and twisted back and forth
d, log = scramble_unlink(3, random.Random(11), additions=6, twists=2, slides=3)
print(d.n_crossings, "crossings;", len(log.twists), "twist pairs")

v = is_trivial_link(d, shortcut=False)  # go through the whole recursion
print(v.kind, "choosing component", v.evidence["component"] + 1,
      "with", len(v.certificate), "moves to bundle it")
verify_verdict(d, v)  # checks every sublink and the twisted link again
print("evidence re-verified")

# a nonzero linking number is a witness of nontriviality
h = is_trivial_link(corpus_load("hopf"))
print(h.kind, h.witness.to_json())

# the Borromean rings: homologically trivial and Brunnian, but not certified trivial
r = classify_htb(corpus_load("borromean-bundled"))
print("HTB:", r.htb, " trivial:", r.trivial.kind)
print(json.dumps(r.trace["report"], indent=1))
