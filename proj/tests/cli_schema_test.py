"""Runs the gcw binary and validates every JSON document against schemas/."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

CASES = [
    ("enum_record", ["enum", "--p", "4", "--q", "6"]),
    ("enum_record", ["enum", "--p", "5", "--q", "8", "--decorated"]),
    ("enum_record", ["enum", "--p", "6", "--q", "10", "--connected-only"]),
    ("homology", ["homology", "--n", "4"]),
    ("homology", ["homology", "--n", "2"]),
    ("homology", ["homology", "--n", "6", "--decorated"]),
    ("aeven", ["aeven", "--k", "2"]),
    ("aeven", ["aeven", "--k", "0", "--method", "coker"]),
    ("check", ["check", "--suite", "d2", "--max-n", "6"]),
    ("check", ["check", "--suite", "strata", "--max-n", "4"]),
    ("strata", ["strata", "--n", "2", "--op", "faces"]),
    ("strata", ["strata", "--n", "2", "--op", "poset", "--max-size", "2"]),
    ("strata", ["strata", "--n", "3", "--op", "codim2"]),
    ("strata", ["strata", "--n", "3", "--op", "schedule"]),
]


def main() -> int:
    binary, schema_dir = sys.argv[1], Path(sys.argv[2])
    failures = 0
    # The schemas must reject malformed documents too.
    aeven = json.loads((schema_dir / "aeven.schema.json").read_text())
    if jsonschema.Draft202012Validator(aeven).is_valid({"k": 2, "dim": "1"}):
        print("FAIL aeven schema accepts a malformed report")
        failures += 1
    for schema_name, args in CASES:
        schema = json.loads((schema_dir / f"{schema_name}.schema.json").read_text())
        validator = jsonschema.Draft202012Validator(schema)
        proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        docs = [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]
        if schema_name != "enum_record" and len(docs) != 1:
            print(f"FAIL {' '.join(args)}: expected one document, got {len(docs)}")
            failures += 1
            continue
        errors = [e.message for d in docs for e in validator.iter_errors(d)]
        if errors:
            print(f"FAIL {' '.join(args)}: {errors[0]}")
            failures += 1
        else:
            print(f"ok   {' '.join(args)} ({len(docs)} document(s))")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
