"""Validate every subcommand's --json report against the report schema."""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["verify"],
    ["contradiction"],
    ["contradiction", "--constraints", "r0,r1,r2,c0,c1"],
    ["realization", "1"],
    ["realization", "2"],
    ["realization", "3"],
    ["model", "1", "--state", "psi1"],
    ["model", "2", "--state", "phiP3"],
    ["model", "3", "--state", "psiPP2"],
    ["model", "2", "--state", "chsh-max"],
    ["sample", "1", "--state", "psi1", "--shots", "2000", "--seed", "3"],
    ["sample", "3", "--state", "phi2", "--shots", "2000", "--seed", "3"],
    ["sample", "2", "--state", "chsh-max", "--shots", "10", "--seed", "3"],
    ["ch", "--state", "chsh-max"],
    ["ch", "--state", "psi4"],
]


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        proc = subprocess.run([exe, "--json", *args], capture_output=True, text=True)
        try:
            doc = json.loads(proc.stdout)
        except json.JSONDecodeError as e:
            print(f"{' '.join(args)}: invalid JSON ({e})")
            failures += 1
            continue
        errors = list(validator.iter_errors(doc))
        for err in errors:
            print(f"{' '.join(args)}: {err.json_path}: {err.message}")
        if doc.get("command") != args[0]:
            print(f"{' '.join(args)}: command field is {doc.get('command')!r}")
            failures += 1
        failures += bool(errors)
    print(f"{len(RUNS) - failures}/{len(RUNS)} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
