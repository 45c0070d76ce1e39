from typing import Any

import toons


class TextSerializer:
    """Serializa reportes como TOON (Token-Oriented Object Notation).

    El array ``checks`` de cada reporte es uniforme (id, status, millis, ...),
    que es justo el caso donde TOON queda tabular y legible.
    """

    @property
    def format_name(self) -> str:
        return "text"

    def serialize(self, data: Any) -> str:
        if isinstance(data, str):
            return data
        return toons.dumps(data)
