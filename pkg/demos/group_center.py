"""Equations that pin x into the center, shown on S3^3.

The x-block forces every coordinate of x into Z(S3) = {e}, yet a short
prefix of the system still admits a non-commuting pair (g, h).
"""
from uag import zoo
from uag.algebra import GROUP, direct_power
from uag.constructions import TheoremKind, group_system, verify_theorem, witness_pair
from uag.solver import eval_term
from uag.terms import parse_term, print_system

s3 = zoo.load("s3")
p = direct_power(s3, 3)
system = group_system(s3, 3)
print(print_system(system))
print()

report = verify_theorem(TheoremKind.GROUP, s3, 3, prefix=1)
print("inclusion holds:", report.inclusion)

g, h = witness_pair(s3, 1, 2, 1, 3)
asg = {"x": p.encode(g.entries), "y": p.encode(h.entries)}
comm = eval_term(parse_term("[x, y]", GROUP), asg, p)
print("g =", p.element_name(asg["x"]), " h =", p.element_name(asg["y"]))
print("[g, h] =", p.element_name(comm))
print("overall:", "PASS" if report.passed else "FAIL")
