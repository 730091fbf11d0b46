"""A small built-in example model.

A hand-picked seven-variable concentration matrix with nine edges, handy
for demos and tests.  It is positive definite as written (smallest
eigenvalue about 0.200), so no repair is involved.
"""

from __future__ import annotations

import numpy as np

from .modelgen import TrueModel, model_from_concentration

SEVEN_NODE_CONCENTRATION = np.array(
    [
        [1.0, 0.465, 0.0, 0.0, 0.511, 0.392, 0.0],
        [0.465, 1.0, 0.0, 0.0, 0.448, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.32, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.262, 0.0, 0.314],
        [0.511, 0.448, 0.0, 0.262, 1.0, 0.459, 0.42],
        [0.392, 0.0, 0.32, 0.0, 0.459, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.314, 0.42, 0.0, 1.0],
    ]
)

SEVEN_NODE_EDGES = frozenset(
    {(1, 2), (1, 5), (1, 6), (2, 5), (3, 6), (4, 5), (4, 7), (5, 6), (5, 7)}
)


def seven_node_model() -> TrueModel:
    """The seven-variable example packaged as a ready-to-sample model."""
    return model_from_concentration(SEVEN_NODE_CONCENTRATION)
