"""Should a discount be offered?  Deciding the sign before the second study.

A sale company profits $100 from a customer who buys only with the
discount (complier), loses $60 on one who would buy anyway (always-taker),
breaks even on one who never buys (never-taker), and loses $140 on one who
buys only without the discount (defier).

An A/B test on 3000 customers gives P(y_x) = 0.6 and P(y_{x'}) = 0.5.  The
benefit of offering the discount depends on the unobservable response-type
mix, but its radius |beta - gamma - theta + delta| / 2 is fixed by the
payoffs alone, so the sign can be settled from the experiment.
"""

import numpy as np

from epsident import (
    BenefitVector,
    ResponseTypeJoint,
    StudyCounts,
    benefit_true_value,
    eps_identify_benefit,
    feasible_range,
    from_counts,
)

exp = from_counts(StudyCounts(900, 600, 750, 750, kind="experimental"))
payoffs = BenefitVector(beta=100, gamma=-60, theta=0, delta=-140)

print(f"experiment: P(y_x) = {exp.p_y_do_x}, P(y_x') = {exp.p_y_do_xp}")
print(f"payoffs: complier {payoffs.beta:+}, always-taker {payoffs.gamma:+}, "
      f"never-taker {payoffs.theta:+}, defier {payoffs.delta:+}")
print()

result = eps_identify_benefit(payoffs, exp)
print(f"benefit identified to {result.q:+.2f} within {result.eps:.2f}")
print(f"certified range: [{result.lo:+.2f}, {result.hi:+.2f}]  ->  sign: {result.sign}")
print()

rng = feasible_range("benefit", exp, None, payoffs=payoffs)
print(f"oracle: exact benefit range over all consistent models: [{rng.lo:+.2f}, {rng.hi:+.2f}]")
print()

print("concrete response-type mixes consistent with the experiment:")
print("  always-takers   compliers   defiers   never-takers   benefit")
for a in np.linspace(0.1, 0.5, 5):
    c, d = 0.6 - a, 0.5 - a
    n = 1.0 - c - a - d
    mix = ResponseTypeJoint(np.array([[c, 0.0], [a, 0.0], [n, 0.0], [0.0, d]]))
    value = benefit_true_value(payoffs, mix)
    assert result.lo - 1e-9 <= value <= result.hi + 1e-9
    print(f"  {a:13.2f}   {c:9.2f}   {d:7.2f}   {n:12.2f}   {value:+8.2f}")
print("  every mix falls inside the certified range")
print()

print("gain equality: with defier payoff -160 the radius collapses to zero:")
exact = eps_identify_benefit(BenefitVector(100, -60, 0, -160), exp)
print(f"  benefit = {exact.q:+.2f} exactly (eps = {exact.eps})")
print()
print(f"decision: {'do not offer' if result.sign == 'negative' else 'offer'} the discount;")
print("the benefit is negative for every response-type composition the data allow.")
