# clusterfx/covariance/oracle.py
"""
Influence-contribution reference for Sigma_hat.

Each cluster contributes a centered term to every Z_(x)(a) through the cells
it is observed in; Sigma_hat is the weighted sum of outer products of those
contributions. ECDF values are recomputed from the count function and the
centering uses the empirical weighted mean of each cell, so nothing here
shares code with the fast path.
"""

from typing import Dict, List, Tuple

import numpy as np

from ..data.schemas import StudyData, cell_index, cell_labels
from ..ranks.algorithms import count


def sigma_oracle(data: StudyData) -> np.ndarray:
    labels = cell_labels(data.T)
    d = len(labels)
    cells = [data.cell_values(j, l) for j, l in labels]
    sizes = np.array([values.size for values in cells], dtype=float)

    # per cluster: cell -> (m, mean of F_x over the cluster's observations for every x)
    means: List[Dict[int, Tuple[int, np.ndarray]]] = []
    for cluster in data.clusters:
        entry = {}
        for l in (1, 2):
            obs = np.asarray(cluster.period(l), dtype=float)
            if obs.size:
                ybar = np.array([count(np.subtract.outer(obs, ref)).mean() for ref in cells])
                entry[cell_index(cluster.group, l)] = (obs.size, ybar)
        means.append(entry)

    centre = np.zeros((d, d))  # centre[c, x]: observation-weighted mean of ybar over cell c
    for entry in means:
        for c, (m, ybar) in entry.items():
            centre[c] += m * ybar
    centre /= sizes[:, None]

    sigma = np.zeros((d, d, d, d))
    for cluster, entry in zip(data.clusters, means):
        if cluster.is_complete:
            n = data.n_complete(cluster.group)
        else:
            n = data.n_incomplete(cluster.group, 1 if cluster.pre else 2)
        if n <= 1:
            continue

        # U[x, a]: contribution to Z_(x)(a) = A(a; x) - A(x; a)
        U = np.zeros((d, d))
        for c, (m, ybar) in entry.items():
            contribution = m / sizes[c] * (ybar - centre[c])
            U[:, c] += contribution
            U[c, :] -= contribution
        sigma += n / (n - 1) * np.einsum("xa,yb->abxy", U, U)
    return sigma


def v_hat_oracle(data: StudyData) -> np.ndarray:
    return data.N * sigma_oracle(data).mean(axis=(2, 3))
