import csv
import json
import os
from typing import Any, Dict, Iterable, List, Sequence


def _cell(value: Any) -> str:
    # repr keeps every float bit so re-runs compare byte-for-byte
    if isinstance(value, (float, int)) and not isinstance(value, bool):
        return repr(float(value)) if isinstance(value, float) else str(value)
    if hasattr(value, "item"):
        return _cell(value.item())
    return str(value)


def write_csv(path: str, fieldnames: Sequence[str], rows: Iterable[Dict[str, Any]]) -> int:
    """Writes rows to `path`, creating parent directories. Returns the number of rows."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    count = 0
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row[k]) for k in fieldnames})
            count += 1
    return count


def read_csv(path: str) -> List[Dict[str, str]]:
    with open(path, "r", newline="") as f:
        return list(csv.DictReader(f))


def write_json(path: str, payload: Any):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def read_json(path: str) -> Any:
    with open(path, "r") as f:
        return json.load(f)
