import argparse
import logging
import os
import sys

import numpy as np

# Import dotenv for environment variables
from dotenv import load_dotenv

from src.campaign import (
    CampaignConfig,
    demo_limits,
    environment_overrides,
    load_campaign,
    load_config,
    load_manifest,
    run_analysis,
    run_campaign,
    with_overrides,
    write_campaign,
    write_limits,
)
from src.campaign.runner import point_estimates
from src.core import BiasParams, ConfigError, GateTier, WhichPathError
from src.core.constants import DEMO_BIAS
from src.operators.noise import mitigate_counts, mitigation_matrix

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger("complementarity")

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _campaign_config(args) -> CampaignConfig:
    if args.manifest:
        config = load_manifest(args.manifest)
    elif args.config:
        config = load_config(args.config)
    else:
        config = CampaignConfig()
    env = environment_overrides()
    if args.manifest:
        # a manifest pins its own seed
        env.pop("seed", None)
    config = with_overrides(config, **env)
    return with_overrides(config, seed=args.seed, workers=args.workers, output_dir=args.output)


def cmd_campaign(args):
    config = _campaign_config(args)
    run_campaign(config)


def cmd_analyze(args):
    tiers = [GateTier(t) for t in args.tiers] if args.tiers else list(GateTier)
    env = environment_overrides()
    run_analysis(
        args.directories,
        output_dir=args.output or env.get("output_dir", "analysis"),
        tiers=tiers,
        k=args.folds,
        seed=args.seed if args.seed is not None else env.get("seed", 0),
        starts=args.starts,
        workers=args.workers or env.get("workers", 1),
        prefix="mitigated_" if args.mitigated else "",
        resamples=args.resamples,
    )


def cmd_limits(args):
    bias = DEMO_BIAS if args.bias is None else BiasParams(*args.bias)
    curves = demo_limits(bias, alpha_points=args.alpha_points)
    write_limits(curves, args.output or environment_overrides().get("output_dir", "output"))


def cmd_mitigate(args):
    data = load_campaign(args.directory)
    if not data.calibration:
        raise ConfigError(f"{args.directory} has no calibration runs to mitigate with.")
    matrix = mitigation_matrix(data.calibration)
    mitigated, clipped = [], 0
    for counts in data.counts:
        fixed, was_clipped = mitigate_counts(counts, matrix)
        mitigated.append(fixed)
        clipped += was_clipped
    if clipped:
        logger.warning("  -> %d of %d points had negative quasi-probabilities clipped.", clipped, len(mitigated))
    data.counts = mitigated
    data.estimates = point_estimates(mitigated, data.config.family)
    write_campaign(data, args.directory, prefix="mitigated_")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Which-path and quantum-eraser experiments on a simulated device.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    verbs = parser.add_subparsers(dest="verb", required=True)

    campaign = verbs.add_parser("campaign", help="sample a synthetic experiment")
    campaign.add_argument("--config", help="key = value campaign file")
    campaign.add_argument("--manifest", help="re-run the campaign recorded in a manifest.json")
    campaign.set_defaults(handler=cmd_campaign)

    analyze = verbs.add_parser("analyze", help="cross-validate gate models on saved campaigns")
    analyze.add_argument("directories", nargs="+")
    analyze.add_argument("--tiers", nargs="+", choices=[t.value for t in GateTier])
    analyze.add_argument("--folds", type=int, default=10)
    analyze.add_argument("--starts", type=int, default=8)
    analyze.add_argument("--resamples", type=int, default=1000)
    analyze.add_argument("--mitigated", action="store_true", help="use the mitigated counts and estimates")
    analyze.set_defaults(handler=cmd_analyze)

    limits = verbs.add_parser("limits", help="exact visibility/distinguishability curves over alpha in [0, 4pi]")
    limits.add_argument("--bias", nargs=5, type=float, metavar="BETA", help="beta1..beta5 (default: 0.06 0.09 -0.05 -0.07 0.06)")
    limits.add_argument("--alpha-points", type=int, default=401)
    limits.set_defaults(handler=cmd_limits)

    mitigate = verbs.add_parser("mitigate", help="apply readout mitigation to a campaign directory")
    mitigate.add_argument("directory")
    mitigate.set_defaults(handler=cmd_mitigate)

    for sub in (campaign, analyze, limits, mitigate):
        sub.add_argument("--seed", type=int)
        sub.add_argument("--workers", type=int)
        sub.add_argument("--output", help="output directory")
    return parser


def main(argv=None) -> int:
    """Parses the command line and runs one verb; returns the process exit code."""
    args = build_parser().parse_args(argv)
    level = os.getenv("WHICHPATH_LOG_LEVEL", "WARNING")
    if args.verbose:
        level = "DEBUG" if args.verbose > 1 else "INFO"
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        args.handler(args)
    except ConfigError as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
    except (WhichPathError, np.linalg.LinAlgError) as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL
    except (OSError, ValueError) as e:
        logger.error("Invalid input: %s", e)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
