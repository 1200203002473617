# Counting m-subsets of hyperplanes by the type of their join
from math import comb
from hyperlattice import check_identity, brute_force_kappa, kappa_top, kappa_type

n, d = 6, 2

# both sides of the subset-counting identity
for m in range(1, d + 3):
    rep = check_identity(n, d, m)
    print(m, rep.lhs, rep.rhs, rep.passed)

# the same numbers from the explicit lattice
for m in (1, 2, 3):
    bf = brute_force_kappa(n, d, m)
    print(m, bf.top, kappa_top(n, d, m))
    for gamma, seen in sorted(bf.by_type().items()):
        if gamma:
            print("  ", gamma, seen, kappa_type(n, d, m, gamma))

print(comb(comb(n, d), 3))  # all 3-subsets of the C(n, d) hyperplanes
