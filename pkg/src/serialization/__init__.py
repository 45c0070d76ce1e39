from .base import ReportSerializer
from .factory import get_serializer
from .json_serializer import JsonSerializer
from .toon_serializer import TextSerializer

__all__ = ["ReportSerializer", "JsonSerializer", "TextSerializer", "get_serializer"]
