"""
Exception hierarchy shared by all pipeline stages
"""
from typing import Optional


class LegalNetworkError(Exception):
    """Base class for every error raised by the package"""


class ConfigError(LegalNetworkError, ValueError):
    """Invalid or inconsistent pipeline configuration"""


class DataError(LegalNetworkError, ValueError):
    """Input data violates the corpus model"""


class ParseError(DataError):
    """Malformed XML; carries the byte offset of the failure"""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class SchemaError(DataError):
    """Element or attribute outside the canonical corpus schema"""


class StructureError(DataError):
    """Element nesting that the document model forbids"""


class IntegrityError(DataError):
    """Duplicate keys, dangling references or checksum mismatches"""


class MappingError(DataError):
    """A selector or alignment is undefined for some node"""


class FetchError(DataError):
    """Archive download failed after retries"""


class StateError(LegalNetworkError):
    """Operation requested before the state it depends on exists"""


class ParameterError(LegalNetworkError, ValueError):
    """Numeric parameter outside its admissible range"""


class PipelineError(LegalNetworkError):
    """A pipeline stage failed; wraps the original cause"""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit code"""
    if isinstance(error, PipelineError):
        error = error.cause
    if isinstance(error, ConfigError):
        return 1
    if isinstance(error, DataError):
        return 2
    return 3
