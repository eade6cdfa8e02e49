## The seeded corpus of 100 random subgroups of F(a, b): how big do the
## cores get, and how long are the witnesses?
##
## Run: python3 demos/03_corpus_tour.py   (about half a minute)

import numpy as np

from freenormal.corpus import run_corpus

summary = run_corpus(100, seed=42)
print("outcomes:", summary.tally())
print(f"all verified: {summary.pass_rate == 1.0}   wall time {summary.seconds:.1f} s")

ok = summary.accepted
n = np.array([r.certificate.n for r in ok])
k = np.array([r.certificate.index_FK for r in ok])
wl = np.array([len(r.certificate.witness) for r in ok])
secs = np.array([r.seconds for r in ok])

## [F:C] is a multiple of [F:K]
print("n / [F:K] integral:", bool(np.all(n % k == 0)))
print("n:        min", n.min(), " median", int(np.median(n)), " max", n.max())
print("|w|:      min", wl.min(), " median", int(np.median(wl)), " max", wl.max())
print("seconds:  median %.3f  max %.2f" % (np.median(secs), secs.max()))

## log-log view of witness length against n
order = np.argsort(n)
for i in order[:: max(1, len(order) // 12)]:
    print(f"  n={n[i]:5d}  |w|={wl[i]:6d}  " + "#" * int(np.log2(wl[i]) + 1))

## how the witness was put together
strategies = {}
for r in ok:
    key = "cover" if any("coset cover" in s for s in r.certificate.construction_log) else "left-normed"
    strategies[key] = strategies.get(key, 0) + 1
print("construction:", strategies)
