"""
Weighted risk across the significance level
===========================================

The risk E(FP)*(1-alpha) + E(FN)*alpha prices false edges against missed
edges.  Re-deciding every trial across a grid of levels traces how each
procedure trades the two error types: liberal testing pays in false
positives on the left, conservative testing pays in false negatives on
the right.
"""

from pathlib import Path

from ggmtest import config_from_dict, run_experiment
from ggmtest.experiments import risk_csv
from ggmtest.svg import Series, line_chart

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

config = config_from_dict({
    "p": 7,
    "m": 9,
    "n_list": [50],
    "procedures": ["simultaneous", "bonferroni", "holm-sidak"],
    "alpha": 0.05,
    "alpha_grid": [k / 20 for k in range(21)],
    "trials": 400,
    "master_seed": 1,
})

result = run_experiment(config, include_pooled=False)

print("risk at a few weights (400 trials, n = 50):")
header = f"{'procedure':<14}" + "".join(f"{w:>8}" for w in (0.05, 0.25, 0.5, 0.75))
print(header)
series = []
for row in result.summaries:
    weights = [rv.alpha for rv in row.risk_values]
    values = [rv.value for rv in row.risk_values]
    picks = [values[weights.index(w)] for w in (0.05, 0.25, 0.5, 0.75)]
    print(f"{row.procedure:<14}" + "".join(f"{v:>8.2f}" for v in picks))
    series.append(Series(row.procedure, tuple(weights), tuple(values)))

risk_path = out_dir / "risk.csv"
risk_path.write_text(risk_csv(result.summaries), encoding="utf-8")
svg_path = out_dir / "risk.svg"
svg_path.write_text(
    line_chart(series, x_label="alpha", y_label="risk",
               title="Risk across the significance level"),
    encoding="utf-8",
)
print(f"\nwrote {risk_path}")
print(f"wrote {svg_path}")
