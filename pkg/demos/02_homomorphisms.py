"""Homomorphisms: classification, kernels, composition, factorization.

A carrier map is a homomorphism when it commutes with every operation
table; the classifier reports the first violating (symbol, arguments)
pair when it does not.
"""

from ualg import CarrierMap, algebra, classify, compose, find_homs, hom_factor, kernel_pairs, signature

sig = signature(("f", 2))
z4 = algebra(sig, 4, {"f": [(a + b) % 4 for a in range(4) for b in range(4)]})
z2 = algebra(sig, 2, {"f": [0, 1, 1, 0]})

# Reduction mod 2 is a surjective homomorphism from (Z4,+) onto (Z2,+).
mod2 = CarrierMap(z4, z2, (0, 1, 0, 1))
cls = classify(mod2)
print("mod2 is a hom:", cls.is_hom, "| injective:", cls.injective, "| surjective:", cls.surjective)

# Its kernel identifies same-parity pairs.
print("kernel size:", len(kernel_pairs(mod2)), "(the 8 same-parity pairs)")

# A map that fails: sending everything to 1 breaks f(0,0).
bad = classify(CarrierMap(z2, z2, (1, 1)))
print("constant-1 witness:", bad.witness)

# Doubling Z2 -> Z4 then reducing mod 2 collapses everything to 0.
double = CarrierMap(z2, z4, (0, 2))
print("mod2 after double:", compose(double, mod2).image)

# If g and h share a source, h is onto, and ker h <= ker g, then g factors
# through h: g = phi o h, with phi built from least preimages.
phi = hom_factor(mod2, mod2)
print("factoring mod2 through itself gives the identity:", phi.image)

# Backtracking search enumerates every hom in lexicographic image order.
print("endomorphisms of (Z2,+):", [m.image for m in find_homs(z2, z2)])
print("automorphisms:", [m.image for m in find_homs(z2, z2, surjective=True, injective=True)])
