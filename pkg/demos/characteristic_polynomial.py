# Characteristic polynomials of L(n, d) in the binomial basis
from hyperlattice import chi_arrangement, chi_lattice, top_mobius, parse, render
from hyperlattice.lattice import partitions_up_to
from hyperlattice.mobius_chi import default_provider

lam = default_provider()

# type counts for d = 3, one polynomial in n per type
for gamma in partitions_up_to(3)[1:]:
    print(gamma, render(lam(3, gamma)))

# Mobius value of the top element, d = 0..4
table = top_mobius(4)
for d in range(5):
    print(d, render(table[d]))

# chi of the arrangement, highest power first
for d in (1, 2, 3):
    print(d, chi_arrangement(d).render())

# plug in a number of points: 6 points in general position in the plane
chi = chi_arrangement(2)
print([chi.evaluate(6)[k] for k in range(3)])  # coefficients of t^0, t^1, t^2

# chi of the lattice vanishes at t = 1
print(chi_lattice(3).at_t(1).is_zero())

# parsing and rendering round trip
p = parse("-3 n_4 - n_2 + n - 1")
print(p == table[2], p(10))
