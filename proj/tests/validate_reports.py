"""Runs every hgflow subcommand with --format json and validates the output
against schemas/report.schema.json."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        path_file = Path(tmp) / "path.json"
        path_file.write_text(json.dumps(
            {"waypoints": [[[0.05, 0.0], [0.025, 0.0]], [[0.3, 0.2], [0.1, -0.2]]]}))
        runs = [
            ["eval", "--L", "2", "--N", "1", "--alpha", "1", "--beta", "1", "--gamma", "2",
             "--x", "0.3", "--method", "both"],
            ["pde-check", "--L", "3", "--N", "2"],
            ["pfaffian-check", "--samples", "10"],
            ["continue", "--path", str(path_file), "--L", "3", "--N", "2"],
            ["hamiltonian-check", "--samples", "5", "--L", "2", "--N", "1"],
            ["lax-check", "--dump-matrices"],
            ["verify-theorem", "--x", "0.15", "0.08"],
            ["contiguity-check", "--all", "--L", "3", "--N", "2"],
        ]
        failures = 0
        for args in runs:
            proc = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"{args[0]}: exit {proc.returncode}\n{proc.stderr}")
                failures += 1
                continue
            errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
            for err in errors:
                print(f"{args[0]}: {err.message} at {list(err.absolute_path)}")
            failures += bool(errors)
            print(f"{args[0]}: {'ok' if not errors else 'invalid'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
