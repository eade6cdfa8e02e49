## A completion K that is not normal: F acts on 3 cosets through S3,
## so the core C has index 6 and K/C has two elements.
##
## Run: python3 demos/02_nonnormal_completion.py

import numpy as np

from freenormal import analyze, build_witness, conjugate, parse, verify
from freenormal.core import action_from_covering
from freenormal.witness import covered_cosets

ctx = analyze([parse(g, 2) for g in ("bab", "BaB", "bbb")], 2)
fz = ctx.factorization
act = action_from_covering(fz)
print("cosets of K:", act.degree, " a acts as", act.images[0], " b acts as", act.images[1])
print("[F:C] =", ctx.n)
print("coset reps:", [str(b) or "ε" for b in ctx.coset_reps])

## Schreier graph of K/C over the K-basis letters
s = ctx.kurosh.graph
print("K/C has", len(s.elements), "elements; edge table (rows = elements, columns = K-basis letters):")
print(np.array(s.out))
print("basis_CH:", [str(w) for w in ctx.basis_CH])
print("basis_J: ", [str(w) for w in ctx.basis_J])

## Which conjugates L^b contain each x_i = j^(b_i)?  Rows: x_i, columns: cosets.
j = ctx.basis_J[0]
mask = np.array([covered_cosets(ctx, conjugate(j, b)) for b in ctx.coset_reps], dtype=int)
print(mask)
print("diagonal is all ones:", bool(np.all(np.diag(mask) == 1)))

cert = build_witness(ctx)
print("witness length:", len(cert.witness))
print("verifier:", verify(cert).overall)
