"""Validates every report JSON under a directory, and the shipped run configs, against the schemas."""

import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schemas, reports, configs = (pathlib.Path(p) for p in sys.argv[1:4])
    report_schema = json.loads((schemas / "report.schema.json").read_text())
    config_schema = json.loads((schemas / "run_config.schema.json").read_text())
    checked = 0
    for path in sorted(reports.rglob("*.json")):
        jsonschema.validate(json.loads(path.read_text()), report_schema)
        checked += 1
    for path in sorted(configs.glob("*.json")):
        jsonschema.validate(json.loads(path.read_text()), config_schema)
        checked += 1
    if checked == 0:
        print("no reports found", file=sys.stderr)
        return 1
    print(f"{checked} documents valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
