class FsoLinkSimError(Exception):
    pass


class ConfigError(FsoLinkSimError, ValueError):
    """Invalid configuration, flags or unreadable input files."""


class StageError(FsoLinkSimError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")


class UnreachableTargetError(FsoLinkSimError, ValueError):
    pass
