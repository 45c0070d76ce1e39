from typing import Any, Protocol, runtime_checkable


@runtime_checkable
class ReportSerializer(Protocol):
    """Interfaz para volcar reportes (dicts/lists ya canónicos) a texto.

    Implementaciones concretas: JsonSerializer, TextSerializer.
    La salida tiene que ser determinística: mismo dict, mismos bytes.
    """

    @property
    def format_name(self) -> str:
        """Identificador del formato ('json', 'text')."""
        ...

    def serialize(self, data: Any) -> str:
        """Convierte un dict/list de Python a string."""
        ...
