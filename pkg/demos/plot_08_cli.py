"""
The command-line checker
========================

``quatlin check`` runs every applicable identity on a matrix file and
exits 0 only when all of them hold.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "s.txt"
    path.write_text("2 2\n0 i\n-i 0\n")
    for cmd in (["check"], ["right-eigs", "--output", "structured"]):
        proc = subprocess.run([sys.executable, "-m", "quatlin", cmd[0], str(path), *cmd[1:]],
                              capture_output=True, text=True)
        print(proc.stdout.splitlines()[0], "... exit", proc.returncode)
