## Two small subgroups of F(a, b), followed through every step.
##
## Run: python3 demos/01_worked_examples.py

from freenormal import analyze, build_witness, parse, verify
from freenormal.stallings import covering_status
from freenormal.witness import member_of_L, member_of_N


def show(gens):
    print("=" * 60)
    print("H = <" + ", ".join(gens) + ">")
    ctx = analyze([parse(g, 2) for g in gens], 2)

    ## Stallings graph of H: not a covering, so H has infinite index
    h = ctx.subgroup
    print("graph of H:", h.num_vertices, "vertices; out-edges", h.out)
    print("status:", covering_status(h))

    ## Completion K = H * Q
    fz = ctx.factorization
    print("[F:K] =", fz.index_FK, " basis_H =", [str(w) for w in fz.basis_H], " basis_Q =", [str(w) for w in fz.basis_Q])

    ## Normal core C and its coset representatives
    print("[F:C] = n =", ctx.n, " coset reps =", [str(b) or "ε" for b in ctx.coset_reps])

    ## C = (C ∩ H) * J
    print("basis_CH =", [str(w) for w in ctx.basis_CH], " basis_J =", [str(w) for w in ctx.basis_J])

    cert = build_witness(ctx)
    print("factors x_i =", [str(x) for x in cert.factors_x])
    print("witness w =", cert.witness, f"({len(cert.witness)} letters)")
    for line in cert.construction_log:
        print("   log:", line)

    report = verify(cert)
    print("verifier:", "all checks pass" if report.overall else report.failed())
    return ctx, cert


ctx, cert = show(["a"])
print("b in L:", member_of_L(ctx, parse("b", 2)), " a in L:", member_of_L(ctx, parse("a", 2)))

ctx, cert = show(["a^2", "b"])
## b lies in C ∩ H, which the retraction fixes, so b is outside L and N;
## j = abA lies in L, but its conjugate j^a = b does not, so j is not in N
b, j = parse("b", 2), parse("abA", 2)
print("b in L:", member_of_L(ctx, b), " b in N:", member_of_N(ctx, b))
print("j in L:", member_of_L(ctx, j), " j in N:", member_of_N(ctx, j))
print("w in N:", member_of_N(ctx, cert.witness))
