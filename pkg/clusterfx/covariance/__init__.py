from .assembly import assemble_sigma, estimate_covariance, floor_eigenvalues, v_hat
from .estimators import cluster_summaries, eta_hat, eta_tensor, tau_hat, tau_tensor
from .oracle import sigma_oracle, v_hat_oracle
from .schemas import CellSummary, ClusterSummaries, CovEstimate

__all__ = [
    "CellSummary",
    "ClusterSummaries",
    "CovEstimate",
    "cluster_summaries",
    "tau_hat",
    "eta_hat",
    "tau_tensor",
    "eta_tensor",
    "assemble_sigma",
    "v_hat",
    "floor_eigenvalues",
    "estimate_covariance",
    "sigma_oracle",
    "v_hat_oracle",
]
