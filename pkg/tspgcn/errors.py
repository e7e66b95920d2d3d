class TspError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidArgumentError(TspError, ValueError):
    pass


class SizeLimitError(TspError):
    pass


class ParseError(TspError):
    def __init__(self, path, line_no, message) -> None:
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class ShapeError(TspError, ValueError):
    pass


class StateError(TspError):
    pass


class ConfigError(TspError):
    pass


class CheckpointError(TspError):
    pass
