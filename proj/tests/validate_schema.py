#!/usr/bin/env python3
"""Validate a JSON document (file argument or stdin) against a JSON Schema."""
import json
import sys

import jsonschema


def main() -> int:
    if len(sys.argv) not in (2, 3):
        print("usage: validate_schema.py SCHEMA [DOCUMENT]", file=sys.stderr)
        return 2
    with open(sys.argv[1]) as f:
        schema = json.load(f)
    if len(sys.argv) == 3:
        with open(sys.argv[2]) as f:
            document = json.load(f)
    else:
        document = json.load(sys.stdin)
    try:
        jsonschema.validate(document, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as e:
        print(f"invalid: {e.message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
