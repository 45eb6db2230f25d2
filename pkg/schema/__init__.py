from __future__ import annotations

# Hacky. Is there a better way to resolve these?
from schema.instance import *  # noqa
from schema.report import *  # noqa
from schema.solver import *  # noqa
