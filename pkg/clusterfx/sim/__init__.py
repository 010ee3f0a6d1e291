from .blocks import block_cov, check_rho, nearest_psd, psd_factor
from .config import load_simulation_config, simulation_config_from_dict
from .generators import apply_alternative, gen_cluster, gen_cluster_sizes, generate_study
from .oracle import OracleSummary, random_study, run_oracle_check
from .presets import PRESETS
from .runner import run_experiment, run_replication, run_sweep, write_report, write_sweep
from .schemas import Alternative, EffectRate, Family, SimulationConfig, SimulationReport

__all__ = [
    "Alternative",
    "EffectRate",
    "Family",
    "SimulationConfig",
    "SimulationReport",
    "PRESETS",
    "OracleSummary",
    "random_study",
    "run_oracle_check",
    "block_cov",
    "check_rho",
    "nearest_psd",
    "psd_factor",
    "gen_cluster_sizes",
    "gen_cluster",
    "apply_alternative",
    "generate_study",
    "run_replication",
    "run_experiment",
    "run_sweep",
    "write_report",
    "write_sweep",
    "load_simulation_config",
    "simulation_config_from_dict",
]
