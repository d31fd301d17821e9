"""aerial_kpi.manifest"""
import hashlib
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Union

from aerial_kpi import __version__

MANIFEST_SUFFIX = ".manifest.json"


@dataclass
class RunManifest:
    """Provenance of one cli run; written once, beside the run's primary output"""

    command: str
    config_paths: Dict[str, str] = field(default_factory=dict)
    seeds: Dict[str, int] = field(default_factory=dict)
    input_hashes: Dict[str, str] = field(default_factory=dict)
    output_paths: List[str] = field(default_factory=list)
    tool_version: str = __version__
    created_at: str = ""

    def add_input(self, name: str, path: Union[str, Path]) -> None:
        """
        Record an input path and its sha256

        Args:
            name: role of the input, e.g. "site"
            path: input file

        Returns:
            N/A  # noqa: DAR202

        Raises:
            N/A

        """
        self.config_paths[name] = str(path)
        self.input_hashes[name] = file_sha256(path)

    def add_output(self, path: Union[str, Path]) -> None:
        """
        Record an output path

        Args:
            path: output file

        Returns:
            N/A  # noqa: DAR202

        Raises:
            N/A

        """
        self.output_paths.append(str(path))


def file_sha256(path: Union[str, Path]) -> str:
    """
    Sha256 of a file's bytes

    Args:
        path: file to hash

    Returns:
        str: hex digest

    Raises:
        N/A

    """
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def manifest_path(output: Union[str, Path]) -> Path:
    """
    Manifest path beside a run output

    Args:
        output: primary output path

    Returns:
        Path: "<output>.manifest.json"

    Raises:
        N/A

    """
    return Path(f"{output}{MANIFEST_SUFFIX}")


def write_manifest(manifest: RunManifest, output: Union[str, Path]) -> Path:
    """
    Write `<output>.manifest.json`, stamping the creation time

    Args:
        manifest: run manifest
        output: primary output path of the run

    Returns:
        Path: manifest path

    Raises:
        N/A

    """
    manifest.created_at = datetime.now(timezone.utc).isoformat()
    destination = manifest_path(output)
    destination.write_text(
        json.dumps(asdict(manifest), sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    return destination
