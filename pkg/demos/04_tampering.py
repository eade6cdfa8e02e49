## What the verifier catches: corrupt a good certificate field by field.
##
## Run: python3 demos/04_tampering.py

from dataclasses import replace

from freenormal import analyze, build_witness, parse, verify
from freenormal.words import EMPTY, multiply

cert = build_witness(analyze([parse("a^2", 2), parse("b", 2)], 2))
print("original certificate:", verify(cert).failed() or "all checks pass")

corruptions = {
    "input generators -> [a]": replace(cert, input_generators=[parse("a", 2)]),
    "index_FK + 1": replace(cert, index_FK=cert.index_FK + 1),
    "duplicate a J generator": replace(cert, basis_J=cert.basis_J * 2),
    "coset reps -> [ε, ε]": replace(cert, coset_reps=[EMPTY, EMPTY]),
    "CH[0] -> CH[0]·J[0]": replace(cert, basis_CH=[multiply(cert.basis_CH[0], cert.basis_J[0])] + cert.basis_CH[1:]),
    "witness -> ε": replace(cert, witness=EMPTY),
    "witness -> a^2 (in H)": replace(cert, witness=parse("a^2", 2)),
    "move CH[0] into J": replace(cert, basis_CH=cert.basis_CH[1:], basis_J=cert.basis_J + cert.basis_CH[:1]),
}
for name, bad in corruptions.items():
    report = verify(bad)
    print(f"{name:28s} fails {report.failed()}")

## The last line fails C6 as well as C8: once C1-C7 hold, the sampled
## disjointness check C8 cannot fail, so no corruption reaches C8 alone.
