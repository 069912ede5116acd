"""Turn a dataclass of defaults into command-line flags.

Every field becomes ``--field-name``; tuple fields take one or more values.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import typing


def parse_config(cls, argv=None, description=None):
    parser = argparse.ArgumentParser(description=description or cls.__doc__)
    hints = typing.get_type_hints(cls)
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        kind = hints[f.name]
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        origin = typing.get_origin(kind)
        if kind is bool:
            parser.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        elif origin is tuple:
            (item, *_) = typing.get_args(kind)
            parser.add_argument(flag, type=item, nargs="+", default=default)
        elif origin is typing.Union:  # Optional[str]
            parser.add_argument(flag, type=typing.get_args(kind)[0], default=default)
        else:
            parser.add_argument(flag, type=kind, default=default)
    ns = parser.parse_args(argv)
    values = {k: tuple(v) if isinstance(v, list) else v for k, v in vars(ns).items()}
    return cls(**values)


def emit(rows, out):
    """Write JSON rows to ``out`` when given."""
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2, default=str)
        print(f"wrote {out}")
