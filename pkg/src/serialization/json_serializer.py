import json
from typing import Any


class JsonSerializer:
    """JSON con claves ordenadas e indentación fija (diffs estables)."""

    @property
    def format_name(self) -> str:
        return "json"

    def serialize(self, data: Any) -> str:
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
