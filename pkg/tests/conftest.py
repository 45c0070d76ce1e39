"""Registro de marcas propias de la suite."""


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: rangos completos de primos y muestras; correr con -m 'not slow' para iterar rápido"
    )
