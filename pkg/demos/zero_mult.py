"""Normal forms for single equations over a ring with zero multiplication."""
from uag import zoo
from uag.algebra import RING
from uag.terms import normalize_zero_mult, parse_equation

r = zoo.load("z4zero")
for text in ["x*y + x + x = y", "x + -x = 0", "x + x = #2", "x + y = #1", "x*x = #3"]:
    print(f"{text:22} -> {normalize_zero_mult(parse_equation(text, RING), r)}")
