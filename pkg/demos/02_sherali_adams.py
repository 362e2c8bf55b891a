"""The SA(2,3) relaxation, solved exactly over the rationals.

Encodes proper 2-colorability of K3 and P2 as {0,inf} VCSPs: the triangle
relaxation is infeasible at level (2,3) while the edge is solved at
optimum 0. Also shows the textual LP dump and a fractional optimum.
"""

from fractions import Fraction

from homlab import CostFunction, ExtRational, VcspInstance, brute_force_opt
from homlab.sherali_adams import build_sa, lp_solve_exact, solve_sa

neq = CostFunction.from_finite_entries(
    2, 2, {(1, 2): ExtRational(0), (2, 1): ExtRational(0)}
)
k3 = VcspInstance(2, 3, [(neq, (1, 2)), (neq, (2, 3)), (neq, (1, 3))])
p2 = VcspInstance(2, 2, [(neq, (1, 2))])

for name, inst in [("K3 -> K2", k3), ("P2 -> K2", p2)]:
    rlp, res = solve_sa(inst)
    print(f"{name}: status={res.status} optimum={res.optimum} "
          f"(lambda variables: {rlp.num_lambda()})")

print()
print("LP dump of the P2 encoding:")
print(build_sa(p2).dump())

# A weighted instance with a fractional-looking objective; the SA optimum
# still matches brute force exactly because the language has a triple.
w = CostFunction.from_finite_entries(
    2, 2, {(1, 2): ExtRational(1, 3), (2, 1): ExtRational(5, 7)}
)
inst = VcspInstance(2, 4, [(w, (1, 2)), (w, (2, 3)), (w, (3, 4))])
_, res = solve_sa(inst)
opt, arg = brute_force_opt(inst)
print(f"weighted path: SA optimum = {res.optimum}, brute force = {opt}, "
      f"argmin = {arg}")
assert res.optimum == opt
