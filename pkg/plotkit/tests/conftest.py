import subprocess
import sys

import pytest


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    """Real sweep CSVs produced through the steerdemon CLI."""
    out = tmp_path_factory.mktemp("csv")
    cli = [sys.executable, "-m", "steerdemon.cli"]
    runs = [
        ["figure2", "--p-steps", "41", "--out", str(out / "figure2.csv")],
        ["figure4", "--eta-steps", "41", "--out", str(out / "figure4.csv")],
        ["frontier", "--grid-n", "300", "--angle-steps", "9",
         "--out", str(out / "frontier.csv")],
    ]
    for args in runs:
        proc = subprocess.run(cli + args, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
    return out
