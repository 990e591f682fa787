"""Both directions of the HSP theorem replayed on concrete instances.

Easy direction: the models of a finite equation list are closed under
products, subalgebras, and homomorphic images.  Hard direction: a
certificate places B in V(K), and then B is exhibited as a homomorphic
image of the free algebra on |B| generators.
"""

from ualg import (
    algebra,
    eqcl_to_var_check,
    signature,
    trivial_certificate,
    var_to_eqcl_check,
    verify_invariance,
)
from ualg.birkhoff import ProductWitness
from ualg.fileio import parse_equation

sig = signature(("m", 2))
sl = algebra(sig, 2, {"m": [0, 0, 0, 1]})
comm = parse_equation("m(?x,?y) = m(?y,?x)")
idem = parse_equation("m(?x,?x) = ?x")

# Satisfaction transfers along products of copies (one preservation lemma).
report = verify_invariance(sl, comm, ProductWitness((sl, sl)))
print("invariance under squaring:")
for line in report.lines():
    print("  ", line)

# Easy direction: enumerate every algebra of size <= 2 over the signature,
# keep the models of {idem, comm}, and replay all three closures.
report = eqcl_to_var_check([idem, comm], pool_size_bound=2)
print("easy direction (equational class is a variety):")
for line in report.lines():
    print("  ", line)

# Hard direction at desk scale: certify sl into V{sl}, build the free
# algebra on |sl| generators, and map it onto sl.
report = var_to_eqcl_check([sl], sl, trivial_certificate(0, sl))
print("hard direction (certified member is an image of the free algebra):")
for line in report.lines():
    print("  ", line)
print("overall:", report.overall)
