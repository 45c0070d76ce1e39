try:
    from .base import ReportSerializer
    from .json_serializer import JsonSerializer
    from .toon_serializer import TextSerializer
except ImportError:
    from src.serialization.base import ReportSerializer
    from src.serialization.json_serializer import JsonSerializer
    from src.serialization.toon_serializer import TextSerializer

_serializers: dict[str, ReportSerializer] = {
    "json": JsonSerializer(),
    "text": TextSerializer(),
}


def get_serializer(format_name: str = "json") -> ReportSerializer:
    """Retorna el serializer singleton del formato pedido."""
    if format_name not in _serializers:
        raise KeyError(
            f"Formato '{format_name}' no soportado. Disponibles: {list(_serializers.keys())}"
        )
    return _serializers[format_name]
