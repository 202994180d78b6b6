"""A strictly descending chain of solution sets over the semilattice L2."""
from uag import zoo
from uag.algebra import direct_power
from uag.constructions import semilattice_system
from uag.solver import minimal_equivalent_prefix

l2 = zoo.load("l2")
for width in (3, 4, 5):
    k, profile = minimal_equivalent_prefix(semilattice_system(width), direct_power(l2, width))
    print(f"N={width}: profile={profile}  minimal prefix={k}")
