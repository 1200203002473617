# Compare the symbolic results with an explicitly built lattice
from hyperlattice import enumerate_lattice, chi_lattice, top_mobius
from hyperlattice.lattice import type_of
from hyperlattice.mobius_chi import mobius_of_type
from hyperlattice.oracle import count_by_type, mobius_table, chi_numeric
from hyperlattice.mobius_chi import default_provider

n, d = 6, 3
lat = enumerate_lattice(n, d)
print(len(lat.elements), "elements,", len(lat.hyperplanes()), "hyperplanes")

# element counts by type against the type-count polynomials
lam = default_provider()
for gamma, count in sorted(count_by_type(lat).items()):
    if gamma:
        print(gamma, count, lam(d, gamma)(n))

# Mobius values element by element
table = top_mobius(d)
mu = mobius_table(lat)
bad = 0
for t, m in zip(lat.elements, mu):
    g = type_of(t, d)
    sym = table[d] if d + 1 in g else mobius_of_type(d, g, table)
    bad += sym(n) != m
print("mobius mismatches:", bad)

# chi coefficients, explicit vs symbolic
print(chi_numeric(lat).lattice)
print(chi_lattice(d).evaluate(n))
