#!/usr/bin/env python3
"""Drive the whole verification battery through the CLI and summarize.

Exit code 0 only if every step passes; mirrors what CI would run, plus the
coefficient-table expansions for eyeballing.
"""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
ENV_PATH = str(ROOT / "src")

STEPS = [
    ["expand", "--law", "miscenko", "--order", "8"],
    ["expand", "--law", "mult:1", "--order", "8"],
    ["beta", "--law", "miscenko", "--order", "8"],
    ["verify", "axioms", "--law", "miscenko", "--order", "10"],
    ["verify", "exact", "--law", "miscenko", "--order", "10"],
    ["verify", "all", "--law", "mult:1", "--order", "12"],
    ["verify", "all", "--law", "additive", "--order", "12"],
    ["chi", "recursion", "--max", "10"],
    ["chi", "grass", "--n", "4", "--k", "2"],
    ["index", "klein"],
    ["index", "rp2"],
]


def main() -> int:
    failures = 0
    for step in STEPS:
        cmd = [sys.executable, "-m", "cobcalc", *step]
        print(f"$ cobcalc {' '.join(step)}")
        result = subprocess.run(cmd, cwd=ROOT, env={"PYTHONPATH": ENV_PATH},
                                capture_output=True, text=True)
        print(result.stdout, end="")
        if result.returncode != 0:
            failures += 1
            print(f"  -> exit {result.returncode}: {result.stderr.strip()}")
        print()
    print(f"{len(STEPS) - failures}/{len(STEPS)} steps passed")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
