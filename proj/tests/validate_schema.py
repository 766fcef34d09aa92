"""Runs a spread of arlog invocations and validates each JSON output against
the published schema. Usage: validate_schema.py <arlog-binary> <schema>."""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    ["constants", "xi", "--rho", "0.7"],
    ["constants", "xi", "--rho", "-0.9", "--digits", "40", "--rounding", "truncate"],
    ["constants", "eta", "--theta", "1"],
    ["constants", "mu-sigma", "--digits", "30"],
    ["constants", "finite-var", "--rho", "0.5", "--n", "100"],
    ["dist", "pdf", "--x", "-3"],
    ["dist", "cdf", "--x", "1.5"],
    ["dist", "quantile", "--p", "0.75"],
    ["dist", "moments"],
    ["dist", "mode", "--digits", "5"],
    ["simulate", "--model", "viswanath", "--n", "50", "--series"],
    ["simulate", "--model", "viswanath", "--n", "2", "--reps", "20", "--values"],
    ["simulate", "--model", "nonstationary-ar1", "--rho", "1.5", "--n", "30", "--reps", "100"],
    ["simulate", "--model", "ar-m", "--coeffs", "1,1", "--scale", "0.5", "--n", "100", "--reps", "10"],
    ["simulate", "--model", "stationary-ar1", "--rho", "0", "--noise", "uniform", "--n", "10", "--series"],
    ["experiment", "clt", "--rho", "0.5", "--n", "1000", "--reps", "200", "--seed", "3"],
    ["experiment", "residuals", "--rho", "3", "--n", "10", "--reps", "2000"],
    ["experiment", "residuals", "--model", "random-sign", "--rho", "1.5", "--n", "20", "--reps", "500"],
    ["experiment", "lyapunov", "--model", "wright-trefethen", "--n", "10000", "--reps", "2", "--tolerance", "0.05"],
    ["experiment", "lyapunov", "--model", "ar-m", "--coeffs", "1,1", "--n", "1000", "--reps", "2",
     "--tolerance", "0.05"],
    ["experiment", "ar2-region", "--grid", "11"],
    ["experiment", "marginal", "--n", "10000"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in INVOCATIONS:
        proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
        label = " ".join(args)
        # Exit 4 (failed verdict) still emits a complete report.
        if proc.returncode not in (0, 4):
            print(f"FAIL exit {proc.returncode}: {label}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: e.path)
        if errors:
            failures += 1
            print(f"FAIL schema: {label}: {errors[0].message}")
        else:
            print(f"ok: {label}")

    # Error objects on stderr.
    proc = subprocess.run([binary, "constants", "xi", "--rho", "1.2"], capture_output=True, text=True, check=False)
    err = json.loads(proc.stderr)
    if proc.returncode != 2 or set(err) != {"code", "message"}:
        print(f"FAIL error object: {proc.stderr.strip()}")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
