from typing import Dict, List, Sequence

from ..core import GateTier


def format_score_table(scores: Dict[str, Dict[str, Sequence[float]]], tiers: Sequence[GateTier]) -> str:
    """Renders out-of-fold (chi2_nu, RSE) per observable and gate tier as a plain-text table."""
    header = ["observable"] + [f"{t.value} chi2_nu" for t in tiers] + [f"{t.value} RSE" for t in tiers]
    lines: List[str] = [" | ".join(header)]
    for observable, by_tier in scores.items():
        chi = [_number(by_tier.get(t.value, (None, None))[0]) for t in tiers]
        rse = [_number(by_tier.get(t.value, (None, None))[1]) for t in tiers]
        lines.append(" | ".join([observable] + chi + rse))
    return "\n".join(lines)


def format_parameter_table(parameters: Dict[str, Dict[str, Dict]]) -> str:
    """Renders fitted parameters as 'value +- error', marking unstable ones with '*'."""
    lines: List[str] = []
    for label, params in parameters.items():
        lines.append(label)
        for name, entry in params.items():
            flag = " *" if entry["unstable"] else ""
            lines.append(f"  {name:>8} = {entry['value']: .5f} +- {entry['std_error']:.5f}{flag}")
    return "\n".join(lines)


def _number(value) -> str:
    return "-" if value is None else f"{value:.5f}"
