from .analysis import AnalysisReport, duality_curve, fit_dataset, run_analysis
from .config import CampaignConfig, config_from_flat, environment_overrides, load_config, with_overrides
from .limits import LimitCurves, demo_limits, write_limits
from .runner import CampaignData, execution_order, load_campaign, load_manifest, run_campaign, write_campaign

__all__ = [
    "CampaignConfig",
    "config_from_flat",
    "load_config",
    "environment_overrides",
    "with_overrides",
    "CampaignData",
    "run_campaign",
    "write_campaign",
    "load_campaign",
    "load_manifest",
    "execution_order",
    "AnalysisReport",
    "run_analysis",
    "duality_curve",
    "fit_dataset",
    "LimitCurves",
    "demo_limits",
    "write_limits",
]
