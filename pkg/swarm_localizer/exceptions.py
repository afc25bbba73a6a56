class SwarmLocalizerError(Exception):
    """Базовое исключение симулятора локализации роя."""
    pass


class ConfigurationError(SwarmLocalizerError):
    """Ошибка конфигурации (противоречивые или недопустимые параметры)."""
    pass


class WorldFileError(ConfigurationError):
    """Ошибка разбора файла мира или файла конфигурации."""
    pass


class OutOfBoundsError(SwarmLocalizerError):
    """Точка находится за пределами мира."""
    pass


class DegenerateUpdateError(SwarmLocalizerError):
    """Вырожденная ковариация невязки при коррекции фильтра."""
    pass


class UndefinedMetricError(SwarmLocalizerError):
    """Метрика не определена для переданных значений."""
    pass


class PeerNotFoundError(SwarmLocalizerError):
    """Агент отсутствует в снимке позиций роя."""
    pass
