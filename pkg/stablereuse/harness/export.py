"""CSV output with a provenance header."""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import TextIO, Union

import pandas as pd

from ..core.model import Instance
from ..generators.serialization import instance_to_json
from ..simulation.csma import SimTrace

logger = logging.getLogger(__name__)

CSV_SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.17g"
TRACE_COLUMNS = ["time", "kind", "cell", "channel"]


def csv_header(digest: str) -> str:
    return f"# stablereuse-csv v{CSV_SCHEMA_VERSION} config-sha256={digest}\n"


def write_frame(frame: pd.DataFrame, handle: TextIO, digest: str) -> None:
    """Write the header comment and ``frame`` to an open text stream."""
    handle.write(csv_header(digest))
    frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_csv(frame: pd.DataFrame, path: Path, digest: str) -> Path:
    """Write ``frame`` after the header comment; reals use 17 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        write_frame(frame, handle, digest)
    logger.debug("Wrote %d rows to %s", len(frame), path)
    return path


def read_csv(path: Path) -> pd.DataFrame:
    """Read a file written by ``write_csv``."""
    return pd.read_csv(path, comment="#")


def trace_digest(instance: Instance, mode: str, delay: float) -> str:
    """SHA-256 over the instance document and the simulation settings."""
    settings = json.dumps({"mode": mode, "delay": float(delay)}, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(instance_to_json(instance).encode("utf-8"))
    digest.update(settings.encode("utf-8"))
    return digest.hexdigest()


def write_trace(trace: SimTrace, target: Union[Path, TextIO], digest: str) -> None:
    """Write the trace rows ``(time, kind, cell, channel)`` to a path or stream."""
    frame = pd.DataFrame(trace.to_rows(), columns=TRACE_COLUMNS)
    if isinstance(target, (str, Path)):
        write_csv(frame, Path(target), digest)
    else:
        write_frame(frame, target, digest)
