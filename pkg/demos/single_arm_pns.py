"""Attributing a rare outcome to its cause from a single-arm trial.

A side effect occurs in at most 5% of the general population, where the new
drug is rarely taken.  In a treated-arm trial the side effect shows up in
31% of participants.  What fraction of people would get the side effect
with the drug and stay clear of it without, i.e. for whom the drug is the
decisive cause?

That counterfactual normally needs both an experimental and an
observational study.  But one scan condition consumes only an upper bound
on P(y) plus the treated-arm rate P(y_x), so the assertion P(y) <= 0.05
turns the single-arm trial into a certified answer.
"""

from epsident import (
    Assumptions,
    ExperimentalDistribution,
    eps_identify_pns,
)

p_y_do_x = 0.31  # side-effect rate in the treated arm
exp = ExperimentalDistribution(p_y_do_x=p_y_do_x)
assumptions = Assumptions(p_y_max=0.05)

print(f"data: P(y_x) = {p_y_do_x} from a treated-arm trial only")
print("assertion: P(y) <= 0.05 (the outcome is rare in the population)")
print()

for eps in (0.01, 0.025, 0.05):
    report = eps_identify_pns(exp, None, eps=eps, assumptions=assumptions)
    if report.fired:
        ident = report.tightest
        print(f"eps = {eps:5}: fires {ident.condition.entry_id}  "
              f"[{ident.condition.center}]  ->  q = {ident.q:.4f} +- {eps}")
    else:
        print(f"eps = {eps:5}: no condition certifiable "
              f"(the P(y) bound exceeds 2*eps)")

report = eps_identify_pns(exp, None, eps=0.025, assumptions=assumptions)
print()
print(f"conditions not evaluable from this partial data: {len(report.not_evaluated)} of 21")
sample = report.not_evaluated[0]
print(f"  e.g. {sample.entry_id} needs {', '.join(sample.missing)}")
print()
print("reading: between 26% and 31% of people are the drug-decisive cases;")
print("the drug is the decisive cause for nearly everyone it affects.")
