"""
Inferring the edges of one simulated dataset
============================================

Draw observations from the 7-variable reference model, test every vertex
pair for conditional dependence, and compare each testing procedure's
inferred graph against the truth.
"""

import numpy as np

from ggmtest import (
    PROCEDURES,
    confusion,
    edge_pairs,
    infer_edges,
    sample_mvn,
    seven_node_model,
)

model = seven_node_model()
print("true edges:", sorted(model.edges))
print()

# simulate a modest sample; n = 150 is enough to find most of the structure
data = sample_mvn(model.covariance, n=150, seed=7)

print(f"{'procedure':<16} {'edges':>5} {'tp':>3} {'fp':>3} {'fn':>3}")
for procedure in PROCEDURES:
    result = infer_edges(data, procedure, alpha=0.05)
    counts = confusion(model.edges, result.edges, model.p)
    print(f"{procedure:<16} {len(result.edges):>5} "
          f"{counts.tp:>3} {counts.fp:>3} {counts.fn:>3}")

print()

# the unadjusted test is the most liberal: whatever a family-wise
# controlling procedure finds is always a subset of its edge set
raw_edges = infer_edges(data, "simultaneous", alpha=0.05).edges
for procedure in PROCEDURES[1:]:
    assert infer_edges(data, procedure, alpha=0.05).edges <= raw_edges
print("every corrected edge set is nested inside the unadjusted one")

# the smallest adjusted p-values point at the strongest edges
result = infer_edges(data, "holm-sidak", alpha=0.05)
order = np.argsort(result.adjusted)[:5]
pairs = edge_pairs(model.p)
print("\nfive smallest holm-sidak adjusted p-values:")
for k in order:
    print(f"  {pairs[k]}: {result.adjusted[k]:.2e}")
