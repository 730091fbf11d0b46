"""
Family-wise error rates under the global null
=============================================

When the true graph has no edges at all, every reported edge is a false
positive.  Testing each of the C(10,2) = 45 pairs separately at level 0.05
finds a spurious edge in most datasets; the corrected procedures hold the
probability of even one false edge near 0.05.
"""

from ggmtest import config_from_dict, run_experiment

config = config_from_dict({
    "p": 10,
    "m": 0,                      # the empty graph: K is the identity
    "n_list": [100],
    "procedures": ["simultaneous", "bonferroni", "sidak",
                   "holm-bonferroni", "holm-sidak"],
    "alpha": 0.05,
    "alpha_grid": [],
    "trials": 1000,
    "master_seed": 0,
})

result = run_experiment(config, include_pooled=False)

print("probability of reporting at least one (false) edge, 1000 trials:")
print(f"{'procedure':<16} {'fwer':>6} {'mean false edges':>17}")
for row in result.summaries:
    print(f"{row.procedure:<16} {row.fwer_hat:>6.3f} {row.mean_fp:>17.3f}")

print()
print("the uncorrected rate is roughly 1 - (1 - 0.05)^45 = 0.90;")
print("every adjusted procedure stays near the nominal 0.05.")
