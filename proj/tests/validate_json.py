"""Run each CLI subcommand with --format json and validate against the schema."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["count", "--k", "2", "--x", "256", "--oracle"],
    ["count", "--k", "3", "--x", "1e12", "--totally-real"],
    ["radical", "--k", "2", "--P", "105", "--filter", "totally-real"],
    ["radical", "--k", "3", "--P", "30", "--class", "(2,3)", "--method", "patterns"],
    ["normalize", "--presentation", "6,10"],
    ["disc", "--presentation", "2,-1"],
    ["disc", "--key=5,13,65"],
    ["formula", "--k", "3"],
    ["formula", "--k", "2", "--kind", "Q"],
    ["constant", "--k", "3", "--prime-bound", "100000"],
    ["fit", "--k", "2", "--grid", "1e4..1e10", "--timing"],
    ["verify", "--suite", "formulas", "--max-omega", "3", "--seed", "9"],
    # error reports use the same document
    ["count", "--k", "2", "--x", "1e40"],
    ["normalize", "--presentation", "-1,3"],
]


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in CASES:
        proc = subprocess.run([exe, "--format", "json", *args], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        try:
            doc = json.loads(proc.stdout)
            validator.validate(doc)
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            print(f"FAIL {' '.join(args)}: {e}")
            failures += 1
            continue
        kind = "error" if "error" in doc else "report"
        print(f"ok   {' '.join(args)} ({kind})")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
