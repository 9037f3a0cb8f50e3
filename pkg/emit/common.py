import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
from jinja2 import Environment, FileSystemLoader

GLOBAL_OPTIONS = {"trim_blocks": True, "lstrip_blocks": True}

STDOUT = "-"


@dataclass
class SweepTable:
    command: str
    columns: List[str]
    rows: List[Sequence] = field(default_factory=list)
    meta: Dict[str, object] = field(default_factory=dict)

    def context(self):
        data = dict(zip(self.columns, (list(c) for c in zip(*self.rows))))
        for column in self.columns:
            data.setdefault(column, [])
        return {
            "command": self.command,
            "columns": self.columns,
            "rows": self.rows,
            "data": data,
            "meta": self.meta,
        }


# Custom filters
def sig12(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_, int)):
        return str(int(value))
    if value is None:
        return ""
    return "%.12g" % value


def json_value(value):
    if isinstance(value, str) or value is None or isinstance(value, bool):
        return json.dumps(value)
    if isinstance(value, np.bool_):
        return json.dumps(bool(value))
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if not math.isfinite(value):
        return "null"
    return "%.12g" % value


def pre_generate_step():
    env = Environment(
        loader=FileSystemLoader([".", "templates", Path(__file__).parent.parent / "templates"]),
        **GLOBAL_OPTIONS
    )
    env.filters["sig12"] = sig12
    env.filters["json_value"] = json_value
    return env


def write_table(path, table, template):
    env = pre_generate_step()
    compiled = env.get_template(template)
    context = table.context()
    if path == STDOUT:
        sys.stdout.write(compiled.render(context))
        return
    try:
        with open(path, "w") as target:
            compiled.stream(context).dump(target)
    except BaseException:
        if os.path.exists(path):
            os.remove(path)
        raise
