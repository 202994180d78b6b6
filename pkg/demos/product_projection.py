"""Solving over a product is the same as solving over each factor."""
import random

from uag import zoo
from uag.algebra import direct_product
from uag.constructions import project_to_factor, random_system
from uag.solver import solve
from uag.terms import print_system

z2, s3 = zoo.load("z2"), zoo.load("s3")
c = direct_product(z2, s3)
rng = random.Random(7)
s = random_system(rng, c, max_equations=2, max_variables=2, depth=2)
print(print_system(s))

whole = solve(s, c)
left = solve(project_to_factor(s, c, "left"), z2)
right = solve(project_to_factor(s, c, "right"), s3)
print(f"|V over Z2xS3| = {len(whole)} = {len(left)} * {len(right)}")
